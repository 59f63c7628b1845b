import numpy as np
import pytest

from twolayer_swe.swe1l import solve_single_layer


def test_lake_at_rest_over_a_step_is_quiet(params):
    solution = solve_single_layer(1.0, 0.0, -1.0, 0.5, 0.0, -0.5, params)
    np.testing.assert_array_equal(solution.fwaves, np.zeros((2, 2)))


def test_uniform_flow_has_zero_strength_waves(params):
    solution = solve_single_layer(1.0, 0.5, -1.0, 1.0, 0.5, -1.0, params)
    np.testing.assert_allclose(solution.speeds, [0.5 - np.sqrt(9.8), 0.5 + np.sqrt(9.8)])
    np.testing.assert_array_equal(solution.fwaves, np.zeros((2, 2)))


def test_dam_break_into_dry_bed_uses_front_speed(params):
    solution = solve_single_layer(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, params)
    assert solution.speeds[1] == pytest.approx(2.0 * np.sqrt(9.8))
    assert solution.speeds[1] == pytest.approx(6.260990, rel=1e-6)


def test_fluctuations_sum_to_the_jump(params, rng):
    n = 100
    hL, hR = rng.uniform(0.1, 2.0, n), rng.uniform(0.1, 2.0, n)
    huL, huR = rng.uniform(-0.5, 0.5, n), rng.uniform(-0.5, 0.5, n)
    bL, bR = rng.uniform(-3.0, -2.5, n), rng.uniform(-3.0, -2.5, n)
    solution = solve_single_layer(hL, huL, bL, hR, huR, bR, params)
    np.testing.assert_allclose(solution.amdq + solution.apdq, solution.delta, atol=1e-12)
    np.testing.assert_allclose(solution.fwaves.sum(axis=1), solution.delta, atol=1e-12)


@pytest.mark.parametrize("hu", [0.0, 0.25, -0.25])
def test_unreachable_dry_cell_acts_as_a_wall(params, hu):
    solution = solve_single_layer(0.5, hu, -1.0, 0.0, 0.0, 0.0, params)
    np.testing.assert_array_equal(solution.apdq, np.zeros(2))


def test_wall_on_the_left(params):
    solution = solve_single_layer(0.0, 0.0, 0.0, 0.5, -0.25, -1.0, params)
    np.testing.assert_array_equal(solution.amdq, np.zeros(2))


def test_both_dry_gives_nothing(params):
    solution = solve_single_layer(0.0, 0.0, -1.0, 1.0e-4, 0.0, -1.0, params)
    np.testing.assert_array_equal(solution.fwaves, np.zeros((2, 2)))
    np.testing.assert_array_equal(solution.amdq + solution.apdq, np.zeros(2))
