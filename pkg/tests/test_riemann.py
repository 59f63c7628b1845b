import numpy as np
import pytest

from twolayer_swe.common.errors import HyperbolicityLossError, NearSingularBasisError
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import CellState, LinearizedBackground, to_primitive
from twolayer_swe.eigen import EigenBasis, linearized_basis
from twolayer_swe.riemann import (
    DryConfig,
    FWaveSolver,
    classify,
    conditioned_projection,
    flux_jump,
    fluctuations,
    project,
    solve_interface,
    wall_ghost,
)
from twolayer_swe.swe1l import solve_single_layer

from conftest import make_cells, make_primitive

BACKGROUND = LinearizedBackground(0.0, -0.6)
MIRROR = np.array([1.0, -1.0, 1.0, -1.0])


def random_wet_pairs(p: Parameters, rng, n=200):
    def side():
        return make_cells(rng.uniform(0.3, 0.8, n), rng.uniform(-0.05, 0.05, n),
                          rng.uniform(0.3, 0.6, n), rng.uniform(-0.05, 0.05, n),
                          rng.uniform(-1.2, -1.0, n), p)
    return side(), side()


def mirrored(cells: CellState) -> CellState:
    return cells.replace(mu1=-cells.mu1, mu2=-cells.mu2)


class TestClassify:
    def test_wall_when_internal_surface_below_dry_bathymetry(self, params):
        left = make_primitive(0.6, 0.0, 0.4, 0.0, -1.0, params)
        right = make_primitive(0.2, 0.0, 0.0, 0.0, -0.2, params)
        assert classify(left, right, params) is DryConfig.WALL_RIGHT_DRY
        assert classify(right, left, params) is DryConfig.WALL_LEFT_DRY

    def test_inundation_when_internal_surface_above_dry_bathymetry(self, params):
        left = make_primitive(0.1, 0.0, 0.9, 0.0, -1.0, params)
        right = make_primitive(0.2, 0.0, 0.0, 0.0, -0.2, params)
        assert classify(left, right, params) is DryConfig.INUNDATION_RIGHT_DRY
        assert classify(right, left, params) is DryConfig.INUNDATION_LEFT_DRY

    def test_both_sides_below_tolerance(self, params):
        left = make_primitive(0.5, 0.0, 1.0e-4, 0.0, -1.0, params)
        right = make_primitive(0.5, 0.0, 1.0e-4, 0.0, -1.0, params)
        assert classify(left, right, params) is DryConfig.BOTH_DRY

    def test_fully_wet_and_top_layer_dry(self, params):
        wet = make_primitive(0.5, 0.0, 0.5, 0.0, -1.0, params)
        bare = make_primitive(0.0, 0.0, 1.0, 0.0, -1.0, params)
        assert classify(wet, wet, params) is DryConfig.FULLY_WET
        assert classify(wet, bare, params) is DryConfig.TOP_LAYER_DRY

    def test_array_input_gives_codes(self, params):
        left = make_primitive(np.array([0.6, 0.5]), 0.0, np.array([0.4, 1.0e-4]), 0.0,
                              np.array([-1.0, -1.0]), params)
        right = make_primitive(np.array([0.2, 0.5]), 0.0, np.array([0.0, 1.0e-4]), 0.0,
                               np.array([-0.2, -1.0]), params)
        codes = classify(left, right, params)
        np.testing.assert_array_equal(codes, [DryConfig.WALL_RIGHT_DRY, DryConfig.BOTH_DRY])


class TestWallGhost:
    def test_bottom_velocity_reversed(self, params):
        ghost = wall_ghost(make_primitive(0.6, 0.2, 0.4, 0.3, -1.0, params))
        assert ghost.h2 == pytest.approx(0.4)
        assert ghost.u2 == pytest.approx(-0.3)

    def test_top_layer_untouched(self, params):
        ghost = wall_ghost(make_primitive(0.6, 0.2, 0.4, 0.3, -1.0, params))
        assert ghost.h1 == pytest.approx(0.6)
        assert ghost.u1 == pytest.approx(0.2)

    def test_rest_state_is_a_fixed_point(self, params):
        state = make_primitive(0.6, 0.0, 0.4, 0.0, -1.0, params)
        ghost = wall_ghost(state)
        assert ghost.u2 == 0.0
        assert ghost.eta2 == state.eta2


class TestFluxJump:
    def test_vanishes_exactly_at_rest_over_a_step(self, params):
        left = make_primitive(0.5, 0.0, 0.5, 0.0, -1.0, params)
        right = make_primitive(0.5, 0.0, 0.25, 0.0, -0.75, params)
        delta = flux_jump(left, right, DryConfig.FULLY_WET, params)
        np.testing.assert_array_equal(delta, np.zeros(4))

    def test_matches_unfactored_flux_and_sources(self):
        p = Parameters(rho1=0.9, rho2=1.0)
        g, r1, r2 = p.g, p.rho1, p.rho2
        hL1, uL1, hL2, uL2, bL = 1.0, 0.3, 1.0, -0.2, -2.0
        hR1, uR1, hR2, uR2, bR = 0.8, 0.1, 0.9, 0.4, -1.9
        left = make_primitive(hL1, uL1, hL2, uL2, bL, p)
        right = make_primitive(hR1, uR1, hR2, uR2, bR, p)

        def flux(h, u, rho):
            return rho * h * u, rho * h * u ** 2 + 0.5 * g * rho * h ** 2

        f1L, f2L = flux(hL1, uL1, r1)
        f1R, f2R = flux(hR1, uR1, r1)
        f3L, f4L = flux(hL2, uL2, r2)
        f3R, f4R = flux(hR2, uR2, r2)
        expected = [
            f1R - f1L,
            f2R - f2L + g * r1 * 0.5 * (hL1 + hR1) * ((hR2 + bR) - (hL2 + bL)),
            f3R - f3L,
            f4R - f4L + g * r2 * 0.5 * (hL2 + hR2) * (bR - bL) + g * r1 * 0.5 * (hL2 + hR2) * (hR1 - hL1),
        ]
        np.testing.assert_allclose(flux_jump(left, right, DryConfig.FULLY_WET, p), expected, atol=1e-12)

    def test_both_dry_carries_no_bottom_jump(self, params):
        left = make_primitive(0.5, 0.1, 1.0e-4, 0.0, -1.0, params)
        right = make_primitive(0.4, 0.0, 2.0e-4, 0.0, -1.0, params)
        delta = flux_jump(left, right, DryConfig.BOTH_DRY, params)
        assert delta[2] == 0.0
        assert delta[3] == 0.0


class TestProjection:
    def test_zero_jump_gives_zero_waves(self, params):
        basis = linearized_basis(0.6, 0.4, params)
        beta, fwaves = project(basis, np.zeros(4))
        np.testing.assert_array_equal(beta, np.zeros(4))
        np.testing.assert_array_equal(fwaves, np.zeros((4, 4)))

    def test_eigenvector_jump_selects_its_wave(self, params):
        basis = linearized_basis(0.6, 0.4, params)
        beta, _ = project(basis, basis.R[:, 2])
        np.testing.assert_allclose(beta, [0.0, 0.0, 1.0, 0.0], atol=1e-12)

    def test_residual_for_well_conditioned_bases(self, rng):
        n = 50
        R = rng.normal(size=(4, 4, n)) + 4.0 * np.eye(4)[:, :, np.newaxis]
        basis = EigenBasis(speeds=np.sort(rng.normal(size=(4, n)), axis=0), R=R, method="test")
        delta = rng.normal(size=(4, n))
        beta, fwaves = project(basis, delta)
        residual = np.einsum("ijn,jn->in", R, beta) - delta
        assert np.max(np.abs(residual)) < 1e-10
        np.testing.assert_allclose(fwaves.sum(axis=1), delta, atol=1e-10)

    def test_singular_basis_flagged(self):
        R = np.ones((4, 4, 2))
        R[:, :, 0] = np.eye(4)
        basis = EigenBasis(speeds=np.zeros((4, 2)), R=R, method="test")
        beta, fwaves, ill = conditioned_projection(basis, np.ones((4, 2)))
        np.testing.assert_array_equal(ill, [False, True])
        np.testing.assert_array_equal(fwaves[:, :, 1], np.zeros((4, 4)))
        with pytest.raises(NearSingularBasisError) as excinfo:
            project(basis, np.ones((4, 2)))
        assert excinfo.value.indices == [1]


class TestFluctuations:
    def test_all_right_going(self):
        fwaves = np.arange(16.0).reshape(4, 4)
        amdq, apdq = fluctuations(fwaves, np.array([0.5, 1.0, 2.0, 3.0]))
        np.testing.assert_array_equal(amdq, np.zeros(4))
        np.testing.assert_array_equal(apdq, fwaves.sum(axis=1))

    def test_all_left_going(self):
        fwaves = np.arange(16.0).reshape(4, 4)
        amdq, apdq = fluctuations(fwaves, np.array([-3.0, -2.0, -1.0, -0.5]))
        np.testing.assert_array_equal(amdq, fwaves.sum(axis=1))
        np.testing.assert_array_equal(apdq, np.zeros(4))

    def test_standing_wave_shared(self):
        fwaves = np.zeros((4, 4))
        fwaves[:, 1] = 2.0
        amdq, apdq = fluctuations(fwaves, np.array([-1.0, 0.0, 1.0, 2.0]))
        np.testing.assert_array_equal(amdq, np.ones(4))
        np.testing.assert_array_equal(apdq, np.ones(4))


@pytest.mark.parametrize("method", list(EigenMethod))
def test_fluctuations_and_fwaves_recover_the_jump(rng, method):
    p = Parameters(rho1=0.95, rho2=1.0, eigen_method=method)
    left, right = random_wet_pairs(p, rng)
    solution = FWaveSolver(p, BACKGROUND).solve(left, right)
    assert np.all(solution.config == DryConfig.FULLY_WET)
    scale = np.max(np.abs(solution.delta)) + 1.0
    np.testing.assert_allclose(solution.amdq + solution.apdq, solution.delta, atol=1e-10 * scale)
    np.testing.assert_allclose(solution.fwaves.sum(axis=1), solution.delta, atol=1e-10 * scale)


@pytest.mark.parametrize("method", list(EigenMethod))
def test_lake_at_rest_gives_zero_waves(method):
    p = Parameters(rho1=0.95, rho2=1.0, eigen_method=method)
    left = make_cells(0.5, 0.0, 0.5, 0.0, -1.0, p)
    right = make_cells(0.5, 0.0, 0.25, 0.0, -0.75, p)
    solution = solve_interface(left, right, p, LinearizedBackground(0.0, -0.5))
    assert solution.config == DryConfig.FULLY_WET
    np.testing.assert_array_equal(solution.fwaves, np.zeros((4, 4)))


class TestWalls:
    def test_at_rest_against_a_wall_is_quiet(self, params):
        left = make_cells(0.5, 0.0, 0.5, 0.0, -1.0, params)
        right = make_cells(0.25, 0.0, 0.0, 0.0, -0.25, params)
        solution = solve_interface(left, right, params)
        assert solution.config == DryConfig.WALL_RIGHT_DRY
        np.testing.assert_array_equal(solution.amdq, np.zeros(4))
        np.testing.assert_array_equal(solution.apdq, np.zeros(4))

    @pytest.mark.parametrize("u2", [-0.3, 0.0, 0.3])
    def test_wet_side_sees_zero_bottom_mass_flux_through_the_wall(self, params, u2):
        # raised top surface and top-layer flow toward the wall
        left = make_cells(0.55, 0.1, 0.5, u2, -1.0, params)
        right = make_cells(0.25, 0.0, 0.0, 0.0, -0.25, params)
        solution = solve_interface(left, right, params)
        assert solution.config == DryConfig.WALL_RIGHT_DRY
        assert solution.apdq[2] == 0.0
        assert solution.apdq[3] == 0.0
        assert solution.amdq[2] == pytest.approx(-params.rho2 * 0.5 * u2, abs=1e-12)

    def test_top_layer_jump_is_carried_across_the_wall(self, params):
        left = make_cells(0.55, 0.1, 0.5, 0.2, -1.0, params)
        right = make_cells(0.25, 0.0, 0.0, 0.0, -0.25, params)
        solution = solve_interface(left, right, params)
        jump = flux_jump(to_primitive(left, params), to_primitive(right, params),
                         DryConfig.WALL_RIGHT_DRY, params)
        assert np.abs(jump[1]) > 0.1
        np.testing.assert_allclose((solution.amdq + solution.apdq)[0:2], jump[0:2], atol=1e-10)
        np.testing.assert_allclose(solution.fwaves[0:2].sum(axis=1), jump[0:2], atol=1e-10)

    def test_left_dry_mirror(self, params):
        left = make_cells(0.25, 0.0, 0.0, 0.0, -0.25, params)
        right = make_cells(0.55, -0.1, 0.5, -0.3, -1.0, params)
        solution = solve_interface(left, right, params)
        assert solution.config == DryConfig.WALL_LEFT_DRY
        assert solution.amdq[2] == 0.0
        assert solution.amdq[3] == 0.0
        assert solution.apdq[2] == pytest.approx(params.rho2 * 0.5 * -0.3, abs=1e-12)


def wall_pairs(p: Parameters, rng, n=20):
    left = make_cells(rng.uniform(0.45, 0.6, n), rng.uniform(-0.05, 0.05, n),
                      rng.uniform(0.4, 0.5, n), rng.uniform(-0.05, 0.05, n), np.full(n, -1.0), p)
    right = make_cells(rng.uniform(0.2, 0.3, n), rng.uniform(-0.05, 0.05, n),
                       np.zeros(n), np.zeros(n), np.full(n, -0.25), p)
    return left, right


def inundation_pairs(p: Parameters, rng, n=20):
    left = make_cells(rng.uniform(0.1, 0.15, n), rng.uniform(-0.05, 0.05, n),
                      rng.uniform(0.85, 0.95, n), rng.uniform(0.0, 0.1, n), np.full(n, -1.0), p)
    right = make_cells(rng.uniform(0.2, 0.3, n), rng.uniform(-0.05, 0.05, n),
                       np.zeros(n), np.zeros(n), np.full(n, -0.2), p)
    return left, right


@pytest.mark.parametrize("pairs, forward_config, backward_config", [
    (random_wet_pairs, DryConfig.FULLY_WET, DryConfig.FULLY_WET),
    (wall_pairs, DryConfig.WALL_RIGHT_DRY, DryConfig.WALL_LEFT_DRY),
    (inundation_pairs, DryConfig.INUNDATION_RIGHT_DRY, DryConfig.INUNDATION_LEFT_DRY),
])
def test_reflection_symmetry(params, rng, pairs, forward_config, backward_config):
    left, right = pairs(params, rng, n=20)
    solver = FWaveSolver(params)
    forward = solver.solve(left, right)
    backward = solver.solve(mirrored(right), mirrored(left))
    assert np.all(forward.config == forward_config)
    assert np.all(backward.config == backward_config)
    scale = np.max(np.abs(forward.delta)) + 1.0
    np.testing.assert_allclose(backward.amdq, MIRROR[:, np.newaxis] * forward.apdq, atol=1e-10 * scale)
    np.testing.assert_allclose(backward.apdq, MIRROR[:, np.newaxis] * forward.amdq, atol=1e-10 * scale)
    np.testing.assert_allclose(backward.speeds, -forward.speeds[::-1], atol=1e-12)


def test_wall_fluctuations_conserve_each_layer(params, rng):
    left, right = wall_pairs(params, rng)
    solution = FWaveSolver(params).solve(left, right)
    wet = to_primitive(left, params)
    jump = flux_jump(wet, to_primitive(right, params), solution.config, params)
    np.testing.assert_allclose((solution.amdq + solution.apdq)[0:2], jump[0:2], atol=1e-10)
    np.testing.assert_array_equal(solution.apdq[2:4], np.zeros((2, 20)))
    np.testing.assert_allclose(solution.amdq[2], -params.rho2 * wet.h2 * wet.u2, atol=1e-12)


def test_both_dry_top_layer_dam_break_matches_single_layer(params):
    left = make_cells(1.0, 0.0, 0.0, 0.0, -2.0, params)
    right = make_cells(0.5, 0.0, 0.0, 0.0, -2.0, params)
    solution = solve_interface(left, right, params)
    assert solution.config == DryConfig.BOTH_DRY

    oracle = solve_single_layer(1.0, 0.0, -2.0, 0.5, 0.0, -2.0, params)
    np.testing.assert_allclose(solution.fwaves[0:2, 0], params.rho1 * oracle.fwaves[:, 0])
    np.testing.assert_allclose(solution.fwaves[0:2, 3], params.rho1 * oracle.fwaves[:, 1])
    np.testing.assert_array_equal(solution.fwaves[2:4], np.zeros((2, 4)))
    assert solution.speeds[0] == pytest.approx(oracle.speeds[0])
    assert solution.speeds[3] == pytest.approx(oracle.speeds[1])


def test_inundation_waves_sum_to_the_jump(params):
    left = make_cells(0.1, 0.0, 0.9, 0.1, -1.0, params)
    right = make_cells(0.2, 0.0, 0.0, 0.0, -0.2, params)
    solution = solve_interface(left, right, params)
    assert solution.config == DryConfig.INUNDATION_RIGHT_DRY
    np.testing.assert_allclose(solution.fwaves.sum(axis=1), solution.delta, atol=1e-10)
    np.testing.assert_allclose(solution.amdq + solution.apdq, solution.delta, atol=1e-10)


def test_hyperbolicity_loss_reports_grid_indices():
    p = Parameters(rho1=0.95, rho2=1.0, eigen_method=EigenMethod.VELOCITY_DIFFERENCE)
    u1 = np.array([0.0, 0.0, 2.0])
    left = make_cells(np.full(3, 0.5), u1, np.full(3, 0.5), np.zeros(3), np.full(3, -1.0), p)
    with pytest.raises(HyperbolicityLossError) as excinfo:
        FWaveSolver(p).solve(left, left)
    assert excinfo.value.indices == [2]


def test_scalar_interface_is_squeezed(params):
    left = make_cells(0.6, 0.1, 0.4, 0.0, -1.0, params)
    right = make_cells(0.55, 0.0, 0.45, 0.0, -1.0, params)
    solution = solve_interface(left, right, params)
    assert solution.fwaves.shape == (4, 4)
    assert solution.speeds.shape == (4,)
    assert solution.max_speed > 3.0
