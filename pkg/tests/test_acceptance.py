"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import csv
import math
import time

import numpy as np
import pytest

from conftest import X, dense_mixer, kron_on
from wsqaoa.bounds import (
    PhaseSeparator,
    delta_lambda_achieved,
    f_of_c,
    pmin_for_mixer,
    theorem_bound,
    within_theta_lower,
)
from wsqaoa.cli import main
from wsqaoa.core import MixerSpec, Statevector, mixer_dense
from wsqaoa.problems import complete_graph, cycle_graph, maxcut_objective, random_graph
from wsqaoa.qaoa import QaoaParams, optimize_params, run_qaoa
from wsqaoa.toy import toy_required_depth, toy_simulate
from wsqaoa.warmstart import (
    WarmStart,
    aligned_mixer,
    from_bitstring,
    random_within,
    to_statevector,
    zero_phase_equivalent,
)

pytestmark = pytest.mark.acceptance

THETA_GRID = (0.025, 0.05, 0.1, 0.2, 0.4, math.pi / 4, math.pi / 2)


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail, elapsed, limit=None):
        timed = limit is None or elapsed < limit
        status = "PASS" if ok and timed else "FAIL"
        budget = f" (limit {limit:g}s)" if limit else ""
        with capsys.disabled():
            print(f"\n[acceptance {number}] {status} {name}: {detail}; {elapsed:.2f}s{budget}")
        assert ok, f"criterion {number} failed: {detail}"
        assert timed, f"criterion {number} exceeded {limit}s ({elapsed:.2f}s)"
    return emit


def random_params(p, rng):
    return QaoaParams(tuple(rng.uniform(0, 2 * math.pi, p)), tuple(rng.uniform(0, math.pi, p)))


def spectral(m):
    return float(np.linalg.svd(m, compute_uv=False)[0])


def test_toy_equivalence(report):
    start = time.perf_counter()
    worst = 0.0
    for theta in (0.1, 0.2, 0.3, 0.5):
        for p in range(6):
            lam, _ = toy_simulate(p, theta)
            worst = max(worst, abs(lam - math.sin((2 * p + 1) * theta / 2) ** 2))
    report(1, "toy equivalence", worst <= 1e-9, f"max |lambda - closed form| = {worst:.2e}",
           time.perf_counter() - start, 1)


def test_lemma_identity(report):
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 6))
        obj = maxcut_objective(random_graph(n, rng))
        c = np.diag(obj.values.astype(complex))
        thetas = rng.uniform(0, math.pi, n)
        for j, t in enumerate(thetas):
            b_j = kron_on(math.sin(t) * X + math.cos(t) * np.diag([1.0, -1.0]), j, n)
            x_j = kron_on(X, j, n)
            diff = (b_j @ c - c @ b_j) - math.sin(min(t, math.pi - t)) * (x_j @ c - c @ x_j)
            worst = max(worst, float(np.linalg.norm(diff)))
    report(2, "lemma identity", worst <= 1e-9, f"50 instances, max Frobenius residual = {worst:.2e}",
           time.perf_counter() - start, 10)


def test_at_theta_equality(report):
    start = time.perf_counter()
    rng = np.random.default_rng(202)
    graphs = [complete_graph(3), cycle_graph(4), random_graph(5, rng), random_graph(6, rng)]
    worst, cases = 0.0, 0
    for g in graphs:
        sep = PhaseSeparator.from_objective(maxcut_objective(g))
        tf = pmin_for_mixer(0.5, sep, MixerSpec.transverse_field(g.n))
        # dense oracle for the transverse-field norm
        b_hat = dense_mixer([(1.0, 0.0, 0.0)] * g.n, g.n, shifted=True)
        c = np.diag(sep.costs.astype(complex))
        assert tf.commutator_norm == pytest.approx(spectral(c @ b_hat - b_hat @ c), rel=1e-9)
        bitstrings = {"0" * g.n, "1" + "0" * (g.n - 1)}
        bitstrings |= {"".join(rng.choice(["0", "1"], size=g.n)) for _ in range(2)}
        for b in sorted(bitstrings):
            for theta in THETA_GRID:
                ws = pmin_for_mixer(0.5, sep, aligned_mixer(from_bitstring(b, theta)))
                worst = max(worst, abs(ws.p_min * math.sin(theta) - tf.p_min) / tf.p_min)
                cases += 1
    report(3, "at-theta equality", worst <= 1e-9, f"{cases} cases, max relative deviation = {worst:.2e}",
           time.perf_counter() - start, 30)


def test_within_theta_inequality(report):
    start = time.perf_counter()
    rng = np.random.default_rng(303)
    graphs = [complete_graph(3), cycle_graph(4), random_graph(5, rng)]
    violations, cases, tightest = 0, 0, math.inf
    for g in graphs:
        sep = PhaseSeparator.from_objective(maxcut_objective(g))
        f = f_of_c(sep)
        for theta in THETA_GRID:
            lower = within_theta_lower(0.5, theta, f)
            for _ in range(50):
                ws = random_within(g.n, theta, rng, random_phase=True)
                got = pmin_for_mixer(0.5, sep, aligned_mixer(ws)).p_min
                cases += 1
                tightest = min(tightest, got / lower)
                violations += got < lower * (1 - 1e-12)
    report(4, "within-theta inequality", violations == 0,
           f"{cases} starts, {violations} violations, min p_min/lower = {tightest:.4f}",
           time.perf_counter() - start, 60)


def test_bound_audit(report):
    start = time.perf_counter()
    rng = np.random.default_rng(404)
    violations, worst_ratio, kinds = 0, 0.0, {"tf": 0, "aligned": 0, "optimized": 0, "random": 0}
    for run in range(200):
        n = int(rng.integers(2, 7))
        p = int(rng.integers(1, 5))
        obj = maxcut_objective(random_graph(n, rng))
        sep = PhaseSeparator.from_objective(obj)
        if run % 2:
            init, mixer = Statevector.uniform(n), MixerSpec.transverse_field(n)
            kinds["tf"] += 1
        else:
            ws = random_within(n, rng.uniform(0.05, math.pi / 2), rng, random_phase=bool(rng.integers(2)))
            init, mixer = to_statevector(ws), aligned_mixer(ws)
            kinds["aligned"] += 1
        if run % 4 < 2:
            res = optimize_params(obj, init, mixer, p, budget=120, seed=run)
            kinds["optimized"] += 1
        else:
            res = run_qaoa(obj, init, mixer, random_params(p, rng))
            kinds["random"] += 1
        dl = delta_lambda_achieved(obj, init, res.final_state)
        bound = theorem_bound(res.final_state, mixer_dense(mixer.as_shifted()), dl, sep)
        violations += p < bound
        worst_ratio = max(worst_ratio, bound / p)
    report(5, "bound audit", violations == 0,
           f"200 runs {kinds}, {violations} violations, max bound/p = {worst_ratio:.3f}",
           time.perf_counter() - start, 300)


def test_pole_degeneracy(report):
    start = time.perf_counter()
    rng = np.random.default_rng(505)
    ok, worst_norm, worst_drift = True, 0.0, 0.0
    for g in (complete_graph(3), cycle_graph(4), random_graph(5, rng)):
        obj = maxcut_objective(g)
        sep = PhaseSeparator.from_objective(obj)
        for b in ("0" * g.n, "".join(rng.choice(["0", "1"], size=g.n))):
            ws = from_bitstring(b, 0.0)
            for dl in (1e-6, 0.5, 1.0):
                bound = pmin_for_mixer(dl, sep, aligned_mixer(ws))
                worst_norm = max(worst_norm, bound.commutator_norm)
                ok &= (not bound.finite) and bound.p_min == math.inf
            init = to_statevector(ws)
            lam_i = run_qaoa(obj, init, aligned_mixer(ws), QaoaParams((), ())).lam
            for p in (1, 2, 4):
                lam_f = run_qaoa(obj, init, aligned_mixer(ws), random_params(p, rng)).lam
                worst_drift = max(worst_drift, abs(lam_f - lam_i))
    ok &= worst_norm <= 1e-12 and worst_drift <= 1e-12
    report(6, "pole degeneracy", ok,
           f"max norm = {worst_norm:.1e}, p_min infinite, max |lambda_f - lambda_i| = {worst_drift:.1e}",
           time.perf_counter() - start, 1)


def test_scaling(report):
    start = time.perf_counter()
    sep = PhaseSeparator.from_objective(maxcut_objective(complete_graph(3)))
    small = [t for t in THETA_GRID if t <= 0.2] + [0.0125, 0.15]
    p_min = [pmin_for_mixer(0.5, sep, aligned_mixer(from_bitstring("001", t))).p_min for t in small]
    slope = float(np.polyfit(np.log(small), np.log(p_min), 1)[0])
    products = [toy_required_depth(0.9, t) * t for t in (0.1, 0.05, 0.025, 0.0125)]
    spread = (max(products) - min(products)) / min(products)
    ok = abs(slope + 1) <= 0.01 and spread <= 0.25
    report(7, "scaling", ok,
           f"log-log slope = {slope:.5f}, toy depth*theta = {[round(x, 4) for x in products]} "
           f"(spread {spread:.1%})", time.perf_counter() - start, 10)


def test_structural_equivalences(report):
    start = time.perf_counter()
    rng = np.random.default_rng(808)
    tv_worst = shift_worst = ground_worst = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 6))
        obj = maxcut_objective(random_graph(n, rng))
        ws = random_within(n, rng.uniform(0, math.pi / 2), rng, random_phase=True)
        ref = zero_phase_equivalent(ws)
        psi = to_statevector(ws)
        p = int(rng.integers(0, 4))
        params = random_params(p, rng)
        a = run_qaoa(obj, psi, aligned_mixer(ws), params).final_state.probabilities()
        b = run_qaoa(obj, to_statevector(ref), aligned_mixer(ref), params).final_state.probabilities()
        tv_worst = max(tv_worst, 0.5 * float(np.abs(a - b).sum()))

        alt = QaoaParams(params.gammas, tuple(-2 * x for x in params.betas))
        e1 = run_qaoa(obj, psi, aligned_mixer(ws), params).expectation
        e2 = run_qaoa(obj, psi, aligned_mixer(ws, shifted=True), alt).expectation
        shift_worst = max(shift_worst, abs(e1 - e2))

        b_hat = dense_mixer([ax.as_array() for ax in aligned_mixer(ws).axes], n, shifted=True)
        ground_worst = max(ground_worst, float(np.linalg.norm(b_hat @ psi.amps)))
    ok = max(tv_worst, shift_worst, ground_worst) <= 1e-9
    report(8, "structural equivalences", ok,
           f"TV = {tv_worst:.1e}, shift = {shift_worst:.1e}, |B_hat psi| = {ground_worst:.1e}",
           time.perf_counter() - start, 30)


def test_determinism(report, tmp_path):
    start = time.perf_counter()
    args = ["sweep-theta", "--depth-range", "1..2", "--budget", "200", "--seed", "42"]
    codes = [main(args + ["--out", str(tmp_path / d)]) for d in ("a", "b")]
    a = (tmp_path / "a" / "sweep.csv").read_bytes()
    b = (tmp_path / "b" / "sweep.csv").read_bytes()
    rows = list(csv.DictReader(a.decode().splitlines()))
    ok = codes == [0, 0] and a == b and len(rows) == len(THETA_GRID) * 2
    report(9, "determinism", ok, f"exit codes {codes}, {len(a)} bytes, identical = {a == b}",
           time.perf_counter() - start)
