"""
Randomized identity suite behind ``qaoa-ws verify``.

Every check draws its instances from a generator seeded by the caller, so a
given seed always exercises the same graphs, warm-starts and angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import PhaseSeparator, at_theta_relation, lemma_check, shifted_commutator_relation
from .core import mixer_dense
from .problems import maxcut_objective, random_graph
from .qaoa import QaoaParams, run_qaoa
from .warmstart import (
    WarmStart,
    aligned_mixer,
    from_bitstring,
    random_within,
    to_statevector,
    zero_phase_equivalent,
)

DEFAULT_THETA_GRID = (0.025, 0.05, 0.1, 0.2, 0.4, math.pi / 4, math.pi / 2)


@dataclass
class CheckResult:
    name: str
    cases: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _random_sep(rng, n_lo=2, n_hi=5):
    n = int(rng.integers(n_lo, n_hi + 1))
    obj = maxcut_objective(random_graph(n, rng))
    return obj, PhaseSeparator.from_objective(obj)


def _random_arc_start(n, rng) -> WarmStart:
    return WarmStart(tuple((float(t), 0.0) for t in rng.uniform(0, np.pi, size=n)))


def _random_params(p, rng) -> QaoaParams:
    return QaoaParams(tuple(rng.uniform(0, 2 * np.pi, p)), tuple(rng.uniform(0, np.pi, p)))


def check_lemma(rng, count=50) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        _, sep = _random_sep(rng)
        worst = max(worst, lemma_check(_random_arc_start(sep.n, rng), sep))
    return CheckResult("lemma identity", count, worst, 1e-9)


def check_lemma_poles(rng, count=10) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        _, sep = _random_sep(rng)
        b = "".join(rng.choice(["0", "1"], size=sep.n))
        worst = max(worst, lemma_check(from_bitstring(b, 0.0), sep))
    return CheckResult("lemma at poles", count, worst, 1e-9)


def check_shifted_commutator(rng, count=20) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        _, sep = _random_sep(rng, 2, 4)
        ws = random_within(sep.n, math.pi / 2, rng, random_phase=True)
        worst = max(worst, shifted_commutator_relation(mixer_dense(aligned_mixer(ws)), sep))
    return CheckResult("shifted commutator", count, worst, 1e-12)


def check_at_theta(rng, count=5, thetas=DEFAULT_THETA_GRID, delta_lambda=0.5) -> CheckResult:
    worst = 0.0
    cases = 0
    for _ in range(count):
        _, sep = _random_sep(rng, 2, 6)
        bits = {"0" * sep.n, "".join(rng.choice(["0", "1"], size=sep.n))}
        while len(bits) < 2:
            bits.add("".join(rng.choice(["0", "1"], size=sep.n)))
        for b in sorted(bits):
            for theta in thetas:
                ws_p, tf_p, _ = at_theta_relation(sep, theta, b, delta_lambda)
                worst = max(worst, abs(ws_p * math.sin(theta) - tf_p) / tf_p)
                cases += 1
    return CheckResult("at-theta equality", cases, worst, 1e-9)


def check_zero_phase(rng, count=20, max_p=3) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        obj, _ = _random_sep(rng, 2, 4)
        ws = random_within(obj.n, math.pi / 2, rng, random_phase=True)
        ref = zero_phase_equivalent(ws)
        params = _random_params(int(rng.integers(0, max_p + 1)), rng)
        a = run_qaoa(obj, to_statevector(ws), aligned_mixer(ws), params).final_state
        b = run_qaoa(obj, to_statevector(ref), aligned_mixer(ref), params).final_state
        tv = 0.5 * float(np.abs(a.probabilities() - b.probabilities()).sum())
        worst = max(worst, tv)
    return CheckResult("zero-phase distribution", count, worst, 1e-9)


def check_mixer_ground_state(rng, count=20) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        ws = random_within(n, math.pi / 2, rng, random_phase=True)
        psi = to_statevector(ws).amps
        worst = max(worst, float(np.linalg.norm(mixer_dense(aligned_mixer(ws, shifted=True)) @ psi)))
    return CheckResult("mixer ground state", count, worst, 1e-9)


def check_mixer_shift(rng, count=20, max_p=3) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        obj, _ = _random_sep(rng, 2, 4)
        ws = random_within(obj.n, math.pi / 2, rng)
        init = to_statevector(ws)
        params = _random_params(int(rng.integers(1, max_p + 1)), rng)
        shifted_params = QaoaParams(params.gammas, tuple(-2 * b for b in params.betas))
        a = run_qaoa(obj, init, aligned_mixer(ws), params).expectation
        b = run_qaoa(obj, init, aligned_mixer(ws, shifted=True), shifted_params).expectation
        worst = max(worst, abs(a - b))
    return CheckResult("mixer shift equivalence", count, worst, 1e-9)


def run_suite(seed: int = 42, count: int = 50) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_lemma(rng, count),
        check_lemma_poles(rng),
        check_shifted_commutator(rng),
        check_at_theta(rng),
        check_zero_phase(rng),
        check_mixer_ground_state(rng),
        check_mixer_shift(rng),
    ]
