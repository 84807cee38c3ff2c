"""
Single-qubit toy model with objective c(x) = x.

Starting from |theta> in the xz-plane, the schedule gamma_k = beta_k = pi/2
with phase Hamiltonian Z alternates the state between signed polar angles
theta, -theta, 3 theta, -3 theta, ...  The phase layer -iZ reflects the
azimuth by pi; the mixer -i(n . sigma) is a pi rotation about the start axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PAULI_Z, Statevector, apply_mixer, apply_phase_separator
from .problems import toy_objective
from .qaoa import QaoaParams, run_qaoa
from .warmstart import WarmStart, aligned_mixer, to_statevector

Z_DIAGONAL = np.real(np.diag(PAULI_Z)).astype(np.int64)


@dataclass(frozen=True)
class ToyTrajectory:
    theta: float
    p: int
    polar_angles: tuple[float, ...]

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(math.sin(a / 2) ** 2 for a in self.polar_angles)


def toy_trajectory(p: int, theta: float) -> ToyTrajectory:
    """Signed polar angle after every unitary, starting with the initial state."""
    angles = [theta]
    for k in range(1, p + 1):
        angles.append(-(2 * k - 1) * theta)
        angles.append((2 * k + 1) * theta)
    return ToyTrajectory(theta, p, tuple(angles))


def toy_angle_after(p: int, theta: float) -> float:
    if p < 0:
        raise ValueError("depth must be non-negative")
    return (2 * p + 1) * theta


def toy_lambda(p: int, theta: float) -> float:
    return math.sin(toy_angle_after(p, theta) / 2) ** 2


def toy_required_depth(delta_lambda: float, theta: float) -> int | None:
    """Smallest depth whose toy improvement reaches ``delta_lambda``.

    The search stops at the first depth with (2p+1) theta >= pi, past which the
    trajectory overshoots the south pole.  Returns None if unreachable.
    """
    if not 0 < delta_lambda <= 1:
        raise ValueError(f"delta_lambda must lie in (0, 1], got {delta_lambda}")
    if not 0 < theta <= math.pi / 2:
        raise ValueError(f"theta must lie in (0, pi/2], got {theta}")
    cap = math.ceil((math.pi / theta - 1) / 2)
    lam_i = toy_lambda(0, theta)
    for p in range(cap + 1):
        if toy_lambda(p, theta) - lam_i >= delta_lambda:
            return p
    return None


def toy_simulate(p: int, theta: float):
    """Run the engine on the toy instance; returns (lambda, per-step Bloch y)."""
    ws = WarmStart(((theta, 0.0),))
    init = to_statevector(ws)
    mixer = aligned_mixer(ws)
    params = QaoaParams((math.pi / 2,) * p, (math.pi / 2,) * p)
    result = run_qaoa(toy_objective(), init, mixer, params, phase_costs=Z_DIAGONAL)

    ys = [float(init.bloch_vector(0)[1])]
    state: Statevector = init
    for _ in range(p):
        state = apply_phase_separator(state, Z_DIAGONAL, math.pi / 2)
        ys.append(float(state.bloch_vector(0)[1]))
        state = apply_mixer(state, mixer, math.pi / 2)
        ys.append(float(state.bloch_vector(0)[1]))
    return result.lam, ys


def toy_simulator_crosscheck(p: int, theta: float) -> float:
    if p > 50:
        raise ValueError("crosscheck limited to p <= 50")
    lam, _ = toy_simulate(p, theta)
    return abs(lam - toy_lambda(p, theta))
