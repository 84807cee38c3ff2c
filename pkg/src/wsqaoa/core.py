"""
Dense statevector kernels and small dense-matrix algebra.

Basis ordering is little-endian: bit ``j`` of the basis index is qubit ``j``,
which is also the classical variable ``x_j``.  All state operations return a
new :class:`Statevector`; inputs are never mutated.

The array kernels (``_rotate_qubit`` and friends) accept arbitrary leading
batch dimensions so the optimizer can push many parameter points through the
circuit at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidInputError, SizeGuardError

NORM_TOL = 1e-9
AXIS_TOL = 1e-12
MAX_DENSE_QUBITS = 12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        r2 = self.x**2 + self.y**2 + self.z**2
        if not np.isfinite(r2) or abs(r2 - 1.0) > AXIS_TOL:
            raise InvalidInputError(f"Bloch axis must be a unit vector, |n|^2 = {r2!r}")

    @classmethod
    def from_angles(cls, theta: float, phi: float = 0.0) -> "BlochVector":
        return cls(
            float(np.sin(theta) * np.cos(phi)),
            float(np.sin(theta) * np.sin(phi)),
            float(np.cos(theta)),
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def matrix(self) -> np.ndarray:
        """The single-qubit operator xX + yY + zZ."""
        return self.x * PAULI_X + self.y * PAULI_Y + self.z * PAULI_Z


@dataclass(frozen=True, eq=False)
class Statevector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise InvalidInputError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidInputError("statevector has non-finite amplitudes")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidInputError(f"statevector is not normalized (|psi|^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @classmethod
    def basis(cls, n: int, index: int) -> "Statevector":
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int) -> "Statevector":
        """The equal superposition |+>^n."""
        return cls(n, np.full(1 << n, (1 << n) ** -0.5, dtype=complex))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def bloch_vector(self, qubit: int) -> np.ndarray:
        """Bloch coordinates of the reduced state of one qubit."""
        rho = _reduced_qubit_density(self.amps, self.n, qubit)
        return np.array([
            2 * rho[0, 1].real,
            -2 * rho[0, 1].imag,
            (rho[0, 0] - rho[1, 1]).real,
        ])


def _reduced_qubit_density(amps: np.ndarray, n: int, qubit: int) -> np.ndarray:
    t = amps.reshape(-1, 2, 1 << qubit)
    return np.einsum("aib,ajb->ij", t, t.conj())


def axis_rotation(axis: BlochVector, beta) -> np.ndarray:
    """exp(-i beta (xX + yY + zZ)) as a 2x2 matrix; broadcasts over ``beta``."""
    beta = np.asarray(beta, dtype=float)
    c = np.cos(beta)[..., None, None]
    s = np.sin(beta)[..., None, None]
    return c * PAULI_I - 1j * s * axis.matrix()


def _rotate_qubit(amps: np.ndarray, n: int, qubit: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 unitary (or batch of them) to one qubit of ``amps``.

    ``amps`` has shape (..., 2**n) and ``u`` either (2, 2) or (..., 2, 2) with
    matching leading dimensions.
    """
    lead = amps.shape[:-1]
    t = amps.reshape(*lead, -1, 2, 1 << qubit)
    if u.ndim == 2:
        out = np.einsum("ij,...ajb->...aib", u, t)
    else:
        out = np.einsum("...ij,...ajb->...aib", u, t)
    return out.reshape(*lead, 1 << n)


def _check_costs(costs, dim: int) -> np.ndarray:
    costs = np.asarray(costs)
    if costs.shape != (dim,):
        raise InvalidInputError(f"cost diagonal has shape {costs.shape}, expected ({dim},)")
    return costs


def apply_phase_separator(state: Statevector, costs, gamma: float) -> Statevector:
    """Multiply each amplitude by exp(-i gamma c_k)."""
    costs = _check_costs(costs, state.dim)
    return Statevector(state.n, state.amps * np.exp(-1j * gamma * costs))


def apply_single_qubit_axis_rotation(
    state: Statevector, qubit: int, axis: BlochVector, beta: float
) -> Statevector:
    if not 0 <= qubit < state.n:
        raise InvalidInputError(f"qubit {qubit} out of range for n={state.n}")
    if not isinstance(axis, BlochVector):
        axis = BlochVector(*axis)
    amps = _rotate_qubit(state.amps, state.n, qubit, axis_rotation(axis, beta))
    return Statevector(state.n, amps)


def expectation_diag(state: Statevector, costs) -> float:
    costs = _check_costs(costs, state.dim)
    return float(np.dot(state.probabilities(), costs))


# --------------------------------------------------------------------------- #
# Dense operators
# --------------------------------------------------------------------------- #


def check_dense_size(n: int, limit: int = MAX_DENSE_QUBITS) -> None:
    if n > limit:
        raise SizeGuardError(f"dense operators limited to n <= {limit} qubits (got n={n})")


def single_qubit_operator(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Embed a 2x2 operator acting on ``qubit`` into the n-qubit space."""
    check_dense_size(n)
    out = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, op if q == qubit else PAULI_I)
    return out


def diagonal_operator(costs) -> np.ndarray:
    return np.diag(np.asarray(costs, dtype=complex))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def is_hermitian(m: np.ndarray, tol: float = NORM_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value.

    Anti-Hermitian and Hermitian inputs go through a Hermitian eigensolve;
    anything else falls back to an SVD.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"spectral_norm needs a square matrix, got {m.shape}")
    if m.shape[0] > 1 << MAX_DENSE_QUBITS:
        raise SizeGuardError("matrix exceeds dense size limit")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix has non-finite entries")
    if m.size == 0:
        return 0.0
    if is_hermitian(1j * m):
        ev = np.linalg.eigvalsh(1j * m)
    elif is_hermitian(m):
        ev = np.linalg.eigvalsh(m)
    else:
        return float(np.linalg.norm(m, 2))
    return float(np.max(np.abs(ev)))


def dense_expectation(state: Statevector, op: np.ndarray) -> float:
    return float(np.vdot(state.amps, op @ state.amps).real)


def product_amplitudes(qubits: Iterable[np.ndarray]) -> np.ndarray:
    """Tensor product of single-qubit amplitude pairs, qubit 0 least significant."""
    out = np.ones(1, dtype=complex)
    for q in qubits:
        out = np.kron(np.asarray(q, dtype=complex), out)
    return out


# --------------------------------------------------------------------------- #
# Mixers
# --------------------------------------------------------------------------- #

TRANSVERSE_FIELD = "transverse-field"
ALIGNED = "aligned"


@dataclass(frozen=True)
class MixerSpec:
    """A sum of single-qubit axis operators, optionally shifted.

    ``shifted`` selects (n I - B) / 2 instead of B, which has spectrum in
    [0, n] and the aligned product state as a zero-energy ground state.
    """

    kind: str
    axes: tuple[BlochVector, ...]
    shifted: bool = False

    def __post_init__(self):
        if self.kind not in (TRANSVERSE_FIELD, ALIGNED):
            raise InvalidInputError(f"unknown mixer kind {self.kind!r}")
        object.__setattr__(self, "axes", tuple(
            a if isinstance(a, BlochVector) else BlochVector(*a) for a in self.axes
        ))
        if self.kind == TRANSVERSE_FIELD and any(a != BlochVector(1.0, 0.0, 0.0) for a in self.axes):
            raise InvalidInputError("transverse-field mixer axes must all be (1, 0, 0)")

    @property
    def n(self) -> int:
        return len(self.axes)

    @classmethod
    def transverse_field(cls, n: int, shifted: bool = False) -> "MixerSpec":
        return cls(TRANSVERSE_FIELD, (BlochVector(1.0, 0.0, 0.0),) * n, shifted)

    def as_shifted(self, shifted: bool = True) -> "MixerSpec":
        return MixerSpec(self.kind, self.axes, shifted)

    @property
    def label(self) -> str:
        return ("shifted-" if self.shifted else "") + self.kind


def _mixer_amps(amps: np.ndarray, n: int, mixer: MixerSpec, beta) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if mixer.shifted:
        # exp(-i b (nI - B)/2) = exp(-i b n/2) * exp(-i (-b/2) B)
        phase = np.exp(-0.5j * beta * n)
        beta = -0.5 * beta
    for q, axis in enumerate(mixer.axes):
        amps = _rotate_qubit(amps, n, q, axis_rotation(axis, beta))
    if mixer.shifted:
        amps = amps * (phase[..., None] if phase.ndim else phase)
    return amps


def apply_mixer(state: Statevector, mixer: MixerSpec, beta: float) -> Statevector:
    """exp(-i beta B) for the mixer B; per-qubit terms commute."""
    if mixer.n != state.n:
        raise InvalidInputError(f"mixer acts on {mixer.n} qubits, state has {state.n}")
    return Statevector(state.n, _mixer_amps(state.amps, state.n, mixer, beta))


def mixer_dense(spec: MixerSpec, n: int | None = None) -> np.ndarray:
    """Materialize the mixer Hamiltonian as a 2**n x 2**n matrix."""
    n = spec.n if n is None else n
    if n != spec.n:
        raise InvalidInputError(f"mixer acts on {spec.n} qubits, requested n={n}")
    check_dense_size(n)
    dim = 1 << n
    b = np.zeros((dim, dim), dtype=complex)
    for q, axis in enumerate(spec.axes):
        b += single_qubit_operator(axis.matrix(), q, n)
    if spec.shifted:
        b = 0.5 * (n * np.eye(dim) - b)
    return b
