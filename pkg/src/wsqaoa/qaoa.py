"""
Depth-p QAOA over an arbitrary objective, initial state and mixer.

Each round applies the cost layer exp(-i gamma_k C) followed by the mixer
layer exp(-i beta_k B).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core import MixerSpec, Statevector, _mixer_amps, expectation_diag
from .errors import InvalidInputError
from .problems import Objective

GRID_POINTS_PER_DIM = 8
MAX_GRID_SEEDS = 4096
REFINE_STARTS = 4
CONVERGENCE_TOL = 1e-8
_BATCH = 512


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        g = tuple(float(x) for x in self.gammas)
        b = tuple(float(x) for x in self.betas)
        if len(g) != len(b):
            raise InvalidInputError(f"{len(g)} gammas but {len(b)} betas")
        if not all(math.isfinite(x) for x in g + b):
            raise InvalidInputError("QAOA parameters must be finite")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "betas", b)

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_vector(cls, x) -> "QaoaParams":
        x = np.asarray(x, dtype=float)
        p = len(x) // 2
        return cls(tuple(x[:p]), tuple(x[p:]))

    def as_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas)

    def padded(self, p: int) -> "QaoaParams":
        """Extend with zero-angle rounds, which leave the state unchanged."""
        extra = (0.0,) * (p - self.p)
        return QaoaParams(self.gammas + extra, self.betas + extra)


@dataclass(frozen=True)
class QaoaResult:
    final_state: Statevector
    expectation: float
    lam: float
    params: QaoaParams
    evaluations: int = 1


def lambda_of(expectation: float, c_max) -> float:
    """Approximation ratio of an expected objective value."""
    if not c_max > 0:
        raise InvalidInputError(f"c_max must be positive, got {c_max}")
    return expectation / c_max


def _check_dims(obj: Objective, init: Statevector, mixer: MixerSpec, phase_costs):
    if init.n != obj.n or mixer.n != obj.n:
        raise InvalidInputError(
            f"dimension mismatch: objective n={obj.n}, state n={init.n}, mixer n={mixer.n}"
        )
    costs = obj.values if phase_costs is None else np.asarray(phase_costs)
    if costs.shape != (init.dim,):
        raise InvalidInputError(f"phase diagonal has shape {costs.shape}, expected ({init.dim},)")
    return costs


def _evolve(amps, n, phase, mixer, gammas, betas):
    """Run the circuit on ``amps``; ``gammas``/``betas`` are (..., p)."""
    for k in range(gammas.shape[-1]):
        g = gammas[..., k]
        amps = amps * np.exp(-1j * np.multiply.outer(g, phase))
        amps = _mixer_amps(amps, n, mixer, betas[..., k])
    return amps


def run_qaoa(
    obj: Objective,
    init: Statevector,
    mixer: MixerSpec,
    params: QaoaParams,
    phase_costs=None,
) -> QaoaResult:
    """Run depth-p QAOA.

    ``phase_costs`` overrides the diagonal used in the cost layer while the
    expectation and ratio are still measured against ``obj``.  The toy model
    uses this to drive with Z while scoring c(x) = x.
    """
    phase = _check_dims(obj, init, mixer, phase_costs)
    amps = _evolve(init.amps, init.n, phase, mixer,
                   np.array(params.gammas), np.array(params.betas))
    state = Statevector(init.n, amps)
    e = expectation_diag(state, obj.values)
    return QaoaResult(state, e, lambda_of(e, obj.c_max), params)


def _batch_expectations(obj, init, mixer, phase, xs: np.ndarray) -> np.ndarray:
    p = xs.shape[1] // 2
    out = np.empty(len(xs))
    for lo in range(0, len(xs), _BATCH):
        chunk = xs[lo:lo + _BATCH]
        amps = np.broadcast_to(init.amps, (len(chunk), init.dim))
        amps = _evolve(amps, init.n, phase, mixer, chunk[:, :p], chunk[:, p:])
        out[lo:lo + _BATCH] = (np.abs(amps) ** 2) @ obj.values
    return out


def parameter_grid(p: int, seed: int) -> np.ndarray:
    """Seed points over gamma in [0, 2pi) and beta in [0, pi).

    The full 8-per-dimension grid is used while it has at most 4096 points;
    beyond that a seeded subset of 4096 grid points is drawn.
    """
    dims = 2 * p
    r = GRID_POINTS_PER_DIM
    gamma_axis = 2 * np.pi * np.arange(r) / r
    beta_axis = np.pi * np.arange(r) / r
    total = r ** dims
    if total <= MAX_GRID_SEEDS:
        idx = np.array(list(itertools.product(range(r), repeat=dims)), dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        flat = np.sort(rng.choice(total, size=MAX_GRID_SEEDS, replace=False))
        idx = np.stack([(flat // r ** (dims - 1 - d)) % r for d in range(dims)], axis=1)
    return np.concatenate([gamma_axis[idx[:, :p]], beta_axis[idx[:, p:]]], axis=1)


def default_budget(p: int) -> int:
    return 20 * (2 * p) ** 2


def optimize_params(
    obj: Objective,
    init: Statevector,
    mixer: MixerSpec,
    p: int,
    budget: int | None = None,
    seed: int = 0,
    phase_costs=None,
    extra_starts=(),
) -> QaoaResult:
    """Maximize the expected objective over the 2p angles.

    Every grid seed is evaluated first (not charged to ``budget``); the best
    few seeds plus any ``extra_starts`` are then refined with Nelder-Mead,
    sharing ``budget`` objective evaluations.  A budget of 1 or less skips
    refinement.  Ties go to the earliest candidate.
    """
    phase = _check_dims(obj, init, mixer, phase_costs)
    if p == 0:
        return run_qaoa(obj, init, mixer, QaoaParams((), ()), phase_costs)
    budget = default_budget(p) if budget is None else budget
    if budget < 1:
        raise InvalidInputError("optimizer budget must be at least 1")

    grid = parameter_grid(p, seed)
    values = _batch_expectations(obj, init, mixer, phase, grid)
    evals = len(grid)
    best_x, best_val = grid[int(np.argmax(values))], float(values.max())

    starts = [s.padded(p).as_vector() for s in extra_starts]
    if starts:
        extra_vals = _batch_expectations(obj, init, mixer, phase, np.array(starts))
        evals += len(starts)
        k = int(np.argmax(extra_vals))
        if extra_vals[k] > best_val:
            best_x, best_val = starts[k], float(extra_vals[k])
    order = np.argsort(-values, kind="stable")
    starts += [grid[i] for i in order[:REFINE_STARTS]]

    if budget > 1 and starts:
        per_start = max(1, budget // len(starts))
        f = lambda x: -float(_batch_expectations(obj, init, mixer, phase, x[None, :])[0])
        for x0 in starts:
            step = np.full(len(x0), 0.1)
            simplex = np.vstack([x0, x0 + np.diag(step)])
            res = minimize(f, x0, method="Nelder-Mead", options={
                "maxfev": per_start,
                "xatol": 1e-10,
                "fatol": CONVERGENCE_TOL,
                "initial_simplex": simplex,
            })
            evals += res.nfev
            if -res.fun > best_val:
                best_val, best_x = -float(res.fun), np.array(res.x)

    result = run_qaoa(obj, init, mixer, QaoaParams.from_vector(best_x), phase_costs)
    return QaoaResult(result.final_state, result.expectation, result.lam,
                      result.params, evaluations=evals)
