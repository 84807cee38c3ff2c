import math

import pytest

from wsqaoa.toy import (
    toy_angle_after,
    toy_lambda,
    toy_required_depth,
    toy_simulate,
    toy_simulator_crosscheck,
    toy_trajectory,
)


def enumerate_depth(delta_lambda, theta, limit=10_000):
    """Oracle: walk p upward while the angle stays below pi (plus one step)."""
    lam_i = math.sin(theta / 2) ** 2
    for p in range(limit):
        if math.sin((2 * p + 1) * theta / 2) ** 2 - lam_i >= delta_lambda:
            return p
        if (2 * p + 1) * theta >= math.pi:
            return None
    return None


def test_angle_after():
    assert toy_angle_after(0, 0.7) == 0.7
    assert toy_angle_after(1, 0.7) == pytest.approx(2.1)
    assert toy_angle_after(3, 0.2) == pytest.approx(1.4)


def test_trajectory_sequence():
    traj = toy_trajectory(2, 0.1)
    assert traj.polar_angles == pytest.approx((0.1, -0.1, 0.3, -0.3, 0.5))


def test_toy_lambda():
    assert toy_lambda(4, 0.0) == 0
    assert toy_lambda(0, 0.6) == pytest.approx(math.sin(0.3) ** 2)
    assert toy_lambda(2, math.pi / 5) == pytest.approx(1.0, abs=1e-15)


def test_required_depth_unreachable_at_equator():
    assert enumerate_depth(0.5, math.pi / 2) is None
    assert toy_required_depth(0.5, math.pi / 2) is None


def test_required_depth_halving_theta_doubles_depth():
    p1, p2 = toy_required_depth(0.9, 0.1), toy_required_depth(0.9, 0.05)
    assert (p1, p2) == (enumerate_depth(0.9, 0.1), enumerate_depth(0.9, 0.05))
    assert 1.8 <= p2 / p1 <= 2.2


def test_required_depth_tiny_gain():
    assert toy_required_depth(1e-6, 0.5) == enumerate_depth(1e-6, 0.5) == 1


@pytest.mark.parametrize("theta", [0.01, 0.03, 0.2, 0.7, 1.2, 1.5])
@pytest.mark.parametrize("dl", [0.05, 0.3, 0.6, 0.95])
def test_required_depth_matches_enumeration(theta, dl):
    assert toy_required_depth(dl, theta) == enumerate_depth(dl, theta)


def test_required_depth_argument_checks():
    with pytest.raises(ValueError):
        toy_required_depth(0.0, 0.3)
    with pytest.raises(ValueError):
        toy_required_depth(0.5, 0.0)


def test_crosscheck_pole_and_grid():
    assert toy_simulator_crosscheck(3, 0.0) == 0
    lam, _ = toy_simulate(1, 0.3)
    assert lam == pytest.approx(math.sin(0.45) ** 2, abs=1e-12)
    for theta in (0.1, 0.2, 0.5):
        for p in range(1, 6):
            assert toy_simulator_crosscheck(p, theta) <= 1e-9


def test_state_stays_in_xz_plane():
    for theta in (0.1, 0.4, 1.0):
        _, ys = toy_simulate(6, theta)
        assert max(abs(y) for y in ys) <= 1e-9
