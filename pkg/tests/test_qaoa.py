import math

import numpy as np
import pytest

from conftest import align_phase, dense_circuit, dense_mixer
from wsqaoa.core import MixerSpec, Statevector
from wsqaoa.errors import InvalidInputError
from wsqaoa.problems import complete_graph, cycle_graph, maxcut_objective, random_graph, toy_objective
from wsqaoa.qaoa import QaoaParams, lambda_of, optimize_params, parameter_grid, run_qaoa
from wsqaoa.toy import Z_DIAGONAL
from wsqaoa.warmstart import WarmStart, aligned_mixer, from_bitstring, random_within, to_statevector

K2 = maxcut_objective(complete_graph(2))


def test_depth_zero_warm_start_k2():
    ws = from_bitstring("01", math.pi / 3)
    res = run_qaoa(K2, to_statevector(ws), aligned_mixer(ws), QaoaParams((), ()))
    half = math.pi / 6
    oracle = math.cos(half) ** 4 + math.sin(half) ** 4
    assert res.lam == pytest.approx(oracle, abs=1e-12)
    assert res.lam == pytest.approx(5 / 8, abs=1e-12)


def test_toy_depth_one_matches_three_theta():
    theta = 0.45
    ws = WarmStart(((theta, 0.0),))
    res = run_qaoa(toy_objective(), to_statevector(ws), aligned_mixer(ws),
                   QaoaParams((math.pi / 2,), (math.pi / 2,)), phase_costs=Z_DIAGONAL)
    np.testing.assert_allclose(res.final_state.bloch_vector(0),
                               [math.sin(3 * theta), 0, math.cos(3 * theta)], atol=1e-12)
    assert res.lam == pytest.approx(math.sin(3 * theta / 2) ** 2, abs=1e-12)


@pytest.mark.parametrize("p", [0, 1, 3])
def test_identity_circuit_gives_average(p):
    obj = maxcut_objective(cycle_graph(5))
    res = run_qaoa(obj, Statevector.uniform(5), MixerSpec.transverse_field(5),
                   QaoaParams((0.0,) * p, (0.0,) * p))
    assert res.lam == pytest.approx(obj.c_avg / obj.c_max, abs=1e-12)


def test_lambda_of():
    assert lambda_of(0.5, 1) == 0.5
    assert lambda_of(2, 2) == 1.0
    assert lambda_of(K2.c_avg, K2.c_max) == 0.5
    with pytest.raises(InvalidInputError):
        lambda_of(1.0, 0)


def test_run_qaoa_errors():
    with pytest.raises(InvalidInputError):
        run_qaoa(K2, Statevector.uniform(3), MixerSpec.transverse_field(2), QaoaParams((), ()))
    with pytest.raises(InvalidInputError):
        QaoaParams((math.nan,), (0.0,))
    with pytest.raises(InvalidInputError):
        QaoaParams((0.1, 0.2), (0.0,))


def test_layer_order_against_dense_oracle(rng):
    for _ in range(30):
        n = int(rng.integers(1, 4))
        obj = maxcut_objective(random_graph(n, rng)) if n > 1 else toy_objective()
        ws = random_within(n, math.pi / 2, rng, random_phase=True)
        mixer = aligned_mixer(ws, shifted=bool(rng.integers(2)))
        p = int(rng.integers(1, 4))
        params = QaoaParams(tuple(rng.uniform(-5, 5, p)), tuple(rng.uniform(-5, 5, p)))
        res = run_qaoa(obj, to_statevector(ws), mixer, params)
        b = dense_mixer([a.as_array() for a in mixer.axes], n, mixer.shifted)
        oracle = dense_circuit(to_statevector(ws).amps, obj.values, b, params.gammas, params.betas)
        np.testing.assert_allclose(align_phase(res.final_state.amps, oracle), oracle, atol=1e-9)


def test_gamma_periodicity(rng):
    obj = maxcut_objective(random_graph(4, rng))
    ws = random_within(4, 0.8, rng)
    params = QaoaParams(tuple(rng.uniform(0, 6, 3)), tuple(rng.uniform(0, 3, 3)))
    shifted = QaoaParams(tuple(g + 2 * math.pi for g in params.gammas), params.betas)
    a = run_qaoa(obj, to_statevector(ws), aligned_mixer(ws), params).expectation
    b = run_qaoa(obj, to_statevector(ws), aligned_mixer(ws), shifted).expectation
    assert abs(a - b) <= 1e-9


def test_mixer_shift_equivalence(rng):
    for _ in range(20):
        obj = maxcut_objective(random_graph(4, rng))
        ws = random_within(4, 1.0, rng)
        p = int(rng.integers(1, 4))
        params = QaoaParams(tuple(rng.uniform(0, 6, p)), tuple(rng.uniform(0, 3, p)))
        alt = QaoaParams(params.gammas, tuple(-2 * b for b in params.betas))
        a = run_qaoa(obj, to_statevector(ws), aligned_mixer(ws), params).expectation
        b = run_qaoa(obj, to_statevector(ws), aligned_mixer(ws, shifted=True), alt).expectation
        assert abs(a - b) <= 1e-9


def test_optimize_toy_reaches_one():
    theta = math.pi / 5
    ws = WarmStart(((theta, 0.0),))
    res = optimize_params(toy_objective(), to_statevector(ws), aligned_mixer(ws), 2, seed=3)
    assert res.lam >= 1 - 1e-6


def _k2_grid_max(step=1e-3):
    """Brute-force max of lambda over (gamma, beta) for K2 with |+>|+> and X mixer."""
    betas = np.arange(0, math.pi, step)
    c, s = np.cos(betas), -1j * np.sin(betas)
    u = np.stack([np.stack([c, s], -1), np.stack([s, c], -1)], -2)  # (B, 2, 2)
    uu = np.einsum("bij,bkl->bikjl", u, u).reshape(-1, 4, 4)
    best = 0.0
    for gamma in np.arange(0, 2 * math.pi, step):
        psi = 0.5 * np.exp(-1j * gamma * K2.values)
        out = uu @ psi
        best = max(best, float(((np.abs(out) ** 2) @ K2.values).max()))
    return best


def test_optimize_k2_transverse_field():
    grid_best = _k2_grid_max()
    assert grid_best == pytest.approx(1.0, abs=1e-5)
    res = optimize_params(K2, Statevector.uniform(2), MixerSpec.transverse_field(2), 1, seed=0)
    assert res.lam == pytest.approx(1.0, abs=1e-6)
    assert res.lam >= grid_best - 1e-6


def test_budget_one_returns_grid_point_deterministically():
    obj = maxcut_objective(complete_graph(3))
    ws = from_bitstring("001", 0.6)
    args = (obj, to_statevector(ws), aligned_mixer(ws), 2)
    a = optimize_params(*args, budget=1, seed=11)
    b = optimize_params(*args, budget=1, seed=11)
    assert a.params == b.params and a.expectation == b.expectation
    grid = parameter_grid(2, 11)
    assert any(np.array_equal(a.params.as_vector(), g) for g in grid)


def test_grid_subsampling_is_seeded():
    g1, g2, g3 = parameter_grid(3, 1), parameter_grid(3, 1), parameter_grid(3, 2)
    assert len(g1) == 4096
    np.testing.assert_array_equal(g1, g2)
    assert not np.array_equal(g1, g3)
    assert len(parameter_grid(1, 0)) == 64


@pytest.mark.parametrize("graph", [complete_graph(3), cycle_graph(4), cycle_graph(5)])
def test_monotone_nesting(graph):
    obj = maxcut_objective(graph)
    ws = from_bitstring("0" * graph.n, 0.5)
    init, mixer = to_statevector(ws), aligned_mixer(ws)
    prev = run_qaoa(obj, init, mixer, QaoaParams((), ()))
    for p in range(1, 4):
        cur = optimize_params(obj, init, mixer, p, budget=400, seed=p, extra_starts=[prev.params])
        assert cur.lam >= prev.lam - 1e-6
        prev = cur
