"""
Circuit-depth lower bounds from commutator spectral norms.

The mixer Hamiltonian ``h0`` passed here is always the shifted form
(n I - B) / 2, which has a zero-energy ground state.  Norms are operator
2-norms computed by a Hermitian eigensolve of i [C, H0].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    PAULI_X,
    MixerSpec,
    Statevector,
    check_dense_size,
    commutator,
    dense_expectation,
    diagonal_operator,
    mixer_dense,
    single_qubit_operator,
    spectral_norm,
)
from .errors import InvalidInputError, PreconditionError
from .problems import Objective
from .warmstart import WarmStart, aligned_mixer, from_bitstring, zero_phase_equivalent

ZERO_NORM_TOL = 1e-12
GROUND_ENERGY_TOL = 1e-6
LEMMA_MAX_QUBITS = 8
F_MAX_QUBITS = 10


@dataclass(frozen=True, eq=False)
class PhaseSeparator:
    """H1 = c_max I - C for a diagonal cost Hamiltonian C."""

    costs: np.ndarray

    def __post_init__(self):
        costs = np.asarray(self.costs)
        n = int(round(math.log2(len(costs)))) if len(costs) else -1
        if n < 0 or len(costs) != 1 << n:
            raise InvalidInputError("cost diagonal length must be a power of two")
        if np.any(costs != np.round(costs)):
            raise InvalidInputError("phase separator needs integer costs (2pi periodicity)")
        object.__setattr__(self, "costs", costs.astype(np.int64))

    @classmethod
    def from_objective(cls, obj: Objective) -> "PhaseSeparator":
        return cls(obj.values)

    @property
    def n(self) -> int:
        return int(round(math.log2(len(self.costs))))

    @property
    def c_max(self) -> int:
        return int(self.costs.max())

    @property
    def h1(self) -> np.ndarray:
        return self.c_max - self.costs

    def dense_c(self) -> np.ndarray:
        check_dense_size(self.n)
        return diagonal_operator(self.costs)


@dataclass(frozen=True)
class DepthBound:
    delta_lambda: float
    c_max: int
    commutator_norm: float
    p_min: float
    finite: bool
    mixer_kind: str
    source: str = "hypothetical"

    @property
    def vacuous(self) -> bool:
        """A non-positive improvement imposes no depth requirement."""
        return self.delta_lambda <= 0


def commutator_norm(sep: PhaseSeparator, h0: np.ndarray) -> float:
    c = sep.dense_c()
    if h0.shape != c.shape:
        raise InvalidInputError(f"H0 has shape {h0.shape}, expected {c.shape}")
    return spectral_norm(commutator(c, h0))


def _ratio(numerator: float, norm: float) -> tuple[float, bool]:
    if norm <= ZERO_NORM_TOL:
        return (math.inf if numerator > 0 else 0.0), False
    return numerator / (4 * math.pi * norm), True


def _check_ground_energy(h0: np.ndarray) -> None:
    lo = float(np.linalg.eigvalsh(h0)[0])
    if lo < -GROUND_ENERGY_TOL:
        raise PreconditionError(
            f"mixer Hamiltonian must have zero ground state energy (min eigenvalue {lo:.3g})"
        )


def theorem_bound(final_state: Statevector, h0: np.ndarray, delta_lambda: float,
                  sep: PhaseSeparator) -> float:
    """Depth bound (<psi_f|H0|psi_f> + dlambda c_max) / (4 pi ||[C, H0]||).

    Returns ``inf`` when the commutator vanishes and the numerator is positive.
    """
    if final_state.dim != h0.shape[0]:
        raise InvalidInputError("final state and H0 dimensions disagree")
    _check_ground_energy(h0)
    numerator = dense_expectation(final_state, h0) + delta_lambda * sep.c_max
    return _ratio(numerator, commutator_norm(sep, h0))[0]


def pmin(delta_lambda: float, sep: PhaseSeparator, h0: np.ndarray,
         mixer_kind: str = "custom", source: str = "hypothetical") -> DepthBound:
    _check_ground_energy(h0)
    norm = commutator_norm(sep, h0)
    value, finite = _ratio(delta_lambda * sep.c_max, norm)
    return DepthBound(delta_lambda, sep.c_max, norm, value, finite, mixer_kind, source)


def pmin_for_mixer(delta_lambda: float, sep: PhaseSeparator, mixer: MixerSpec,
                   source: str = "hypothetical") -> DepthBound:
    """p_min with H0 taken as the shifted form of ``mixer``."""
    h0 = mixer_dense(mixer.as_shifted())
    return pmin(delta_lambda, sep, h0, mixer_kind=mixer.kind, source=source)


def _x_commutators(sep: PhaseSeparator) -> list[np.ndarray]:
    c = sep.dense_c()
    return [commutator(single_qubit_operator(PAULI_X, j, sep.n), c) for j in range(sep.n)]


def lemma_check(ws: WarmStart, sep: PhaseSeparator) -> float:
    """Max over qubits of ||[B_j, C] - sin(theta_hat_j) [X_j, C]||_F."""
    if ws.n != sep.n:
        raise InvalidInputError("warm-start and objective sizes differ")
    check_dense_size(sep.n, LEMMA_MAX_QUBITS)
    ws = zero_phase_equivalent(ws)
    c = sep.dense_c()
    mixer = aligned_mixer(ws)
    worst = 0.0
    for j, (axis, xc) in enumerate(zip(mixer.axes, _x_commutators(sep))):
        lhs = commutator(single_qubit_operator(axis.matrix(), j, sep.n), c)
        rhs = math.sin(ws.theta_hat[j]) * xc
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def f_of_c(sep: PhaseSeparator) -> float:
    """(c_max / 2 pi) / sum_j ||[X_j, C]||, a property of the objective alone."""
    check_dense_size(sep.n, F_MAX_QUBITS)
    total = sum(spectral_norm(m) for m in _x_commutators(sep))
    if total <= ZERO_NORM_TOL:
        raise PreconditionError("constant objective: every [X_j, C] vanishes")
    return sep.c_max / (2 * math.pi) / total


def within_theta_lower(delta_lambda: float, theta: float, f: float) -> float:
    """Lower bound dlambda F(c) / sin(theta) valid for any within-theta start."""
    if theta < 0 or theta > math.pi / 2:
        raise InvalidInputError(f"theta must lie in [0, pi/2], got {theta}")
    if theta == 0:
        return math.inf if delta_lambda > 0 else 0.0
    return delta_lambda * f / math.sin(theta)


def at_theta_relation(sep: PhaseSeparator, theta: float, b: str,
                      delta_lambda: float) -> tuple[float, float, float]:
    """(p_min warm-start, p_min transverse field, ratio) for an at-theta start."""
    if len(b) != sep.n:
        raise InvalidInputError("bitstring length differs from objective size")
    check_dense_size(sep.n, F_MAX_QUBITS)
    ws_bound = pmin_for_mixer(delta_lambda, sep, aligned_mixer(from_bitstring(b, theta)))
    tf_bound = pmin_for_mixer(delta_lambda, sep, MixerSpec.transverse_field(sep.n))
    if not ws_bound.finite or tf_bound.p_min == 0:
        ratio = math.inf if ws_bound.p_min > 0 else math.nan
    else:
        ratio = ws_bound.p_min / tf_bound.p_min
    return ws_bound.p_min, tf_bound.p_min, ratio


def shifted_commutator_relation(b_dense: np.ndarray, sep: PhaseSeparator) -> float:
    """Frobenius norm of [B_hat, C] + [B, C] / 2 for B_hat = (n I - B) / 2."""
    check_dense_size(sep.n, LEMMA_MAX_QUBITS)
    c = sep.dense_c()
    b_hat = 0.5 * (sep.n * np.eye(len(c)) - b_dense)
    return float(np.linalg.norm(commutator(b_hat, c) + 0.5 * commutator(b_dense, c)))


def delta_lambda_achieved(obj: Objective, init: Statevector, final: Statevector) -> float:
    """lambda_f - lambda_i between two states, scored against ``obj``."""
    diff = (final.probabilities() - init.probabilities()) @ obj.values
    return float(diff / obj.c_max)
