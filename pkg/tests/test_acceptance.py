"""End-to-end runs of the named scenarios.

Tests marked ``slow`` run full-size scenarios; deselect them with ``-m "not slow"``.
"""

import numpy as np
import pytest

from twolayer_swe.core.parameters import EigenMethod
from twolayer_swe.core.state import LinearizedBackground
from twolayer_swe.eigen import characteristic_roots, get_eigen_solver, linearized_basis
from twolayer_swe.scenarios import (
    ConvergenceManager,
    build_scenario,
    rest_state,
    run_scenario,
    run_well_balanced_suite,
)

from conftest import make_primitive


def worst_errors(row):
    errors = row.report.errors
    return {name: max(e.l1, e.linf) for name, e in errors.items()}


def test_jump_bathymetry_stays_exactly_at_rest():
    row, = run_well_balanced_suite(names=("wb-jump-wet",))
    assert row.report.n_cells == 100
    assert row.report.t == pytest.approx(10.0)
    for name, error in worst_errors(row).items():
        assert error <= 1e-14, name


def test_dry_jump_stays_at_rest():
    row, = run_well_balanced_suite(names=("wb-jump-dry",))
    assert row.dry
    for name, error in worst_errors(row).items():
        assert error <= 1e-10, name


@pytest.mark.slow
def test_smooth_dry_bathymetry_stays_at_rest():
    row, = run_well_balanced_suite(names=("wb-smooth-dry",))
    errors = worst_errors(row)
    for name in ("h1", "h2", "eta1", "eta2"):
        assert errors[name] <= 1e-6, name
    for name in ("hu1", "hu2"):
        assert errors[name] <= 1e-10, name


class TestEigensolverAgreement:
    n = 10_000

    @pytest.fixture
    def states(self, params, rng):
        h1 = rng.uniform(0.05, 2.0, self.n)
        h2 = rng.uniform(0.05, 2.0, self.n)
        bound = np.sqrt(params.reduced_gravity * (h1 + h2))
        u2 = rng.uniform(-1.0, 1.0, self.n)
        u1 = u2 + rng.uniform(-0.5, 0.5, self.n) * bound
        b = -(h1 + h2)
        return make_primitive(h1, u1, h2, u2, b, params)

    @pytest.mark.parametrize("method", list(EigenMethod))
    def test_real_sorted_speeds_for_hyperbolic_states(self, params, states, method):
        solver = get_eigen_solver(method, params, LinearizedBackground(0.0, -0.5))
        basis = solver.basis(states, states)
        assert basis.speeds.shape == (4, self.n)
        assert np.all(np.isfinite(basis.speeds))
        assert np.all(np.diff(basis.speeds, axis=0) >= 0)

    def test_direct_speeds_solve_the_quartic(self, params, states):
        s = states
        lam = characteristic_roots(s.h1, s.u1, s.h2, s.u2, params.g, params.r)
        radius = np.max(np.abs(lam), axis=0)
        residual = ((lam - s.u1) ** 2 - params.g * s.h1) * ((lam - s.u2) ** 2 - params.g * s.h2) \
            - params.r * params.g ** 2 * s.h1 * s.h2
        assert np.all(np.abs(residual) < 1e-10 * radius ** 4)

    @pytest.mark.parametrize("method", [EigenMethod.LINEARIZED_DYNAMIC, EigenMethod.LINEARIZED_STATIC,
                                        EigenMethod.DIRECT])
    def test_methods_agree_at_rest(self, params, rng, method):
        h2 = rng.uniform(0.05, 2.0, 500)
        rest = make_primitive(0.6, 0.0, h2, 0.0, -0.6 - h2, params)
        background = LinearizedBackground(0.0, -0.6)
        expected = linearized_basis(0.6, h2, params).speeds
        basis = get_eigen_solver(method, params, background).basis(rest, rest)
        np.testing.assert_allclose(basis.speeds, expected, rtol=1e-8, atol=1e-12)


def test_internal_front_moves_at_the_linearized_speed():
    # small amplitude, stopped before the front reaches the bathymetry step at x = 0.5
    epsilon, t_final = 0.01, 0.1
    spec = build_scenario("wave3", {"perturbation.epsilon": epsilon, "t_final": t_final})
    grid = spec.grid()
    assert grid.n_cells == 500
    result = run_scenario(spec)
    rest = rest_state(spec).interior(grid)
    bump = result.frames[-1].h1 * spec.rho1 - rest.m1
    speed = linearized_basis(0.6, 0.4, spec.parameters()).speeds[2]

    x = grid.centers()
    half = 0.5 * epsilon
    i = int(np.argmax(bump < half))
    front = x[i - 1] + (bump[i - 1] - half) / (bump[i - 1] - bump[i]) * grid.dx
    assert abs(front - (0.45 + speed * t_final)) <= grid.dx


@pytest.fixture(scope="module")
def convergence_study():
    """Direct-solver sweeps at 64-1024 cells against 5000 cells, computed once per scenario."""
    reports = {}

    def study(name):
        if name not in reports:
            spec = build_scenario(name, {"eigen_method": "direct"})
            reports[name] = ConvergenceManager(spec, [64, 128, 256, 512, 1024], reference_n=5000).run()
        return reports[name]
    return study


@pytest.mark.slow
@pytest.mark.parametrize("scenario, field, expected, tolerance", [
    ("wave3-flat", "h2", 2.3, 0.4),
    ("wave3-flat", "h1", 1.6, 0.4),
    ("wave4-flat", "h2", 1.6, 0.4),
    ("wave3", "h2", 1.0, 0.3),
])
def test_convergence_orders(convergence_study, scenario, field, expected, tolerance):
    report = convergence_study(scenario)
    assert report.orders["l1"][field] == pytest.approx(expected, abs=tolerance)
    errors = [r.errors[field].l1 for r in report.reports]
    assert errors[0] > errors[-1]


@pytest.mark.slow
def test_baroclinic_wetting_keeps_depths_positive():
    spec = build_scenario("baroclinic-wetting")
    result = run_scenario(spec)
    total = sum(result.mass_start)
    assert result.stats["clipped_mass"] < 1e-10 * total
    final = result.frames[-1]
    assert final.t == pytest.approx(spec.t_final)
    assert np.all(final.h1 >= 0) and np.all(final.h2 >= 0)


def dominant_wavenumber(signal, dx):
    spectrum = np.abs(np.fft.rfft(signal - np.mean(signal)))
    k = np.fft.rfftfreq(signal.size, dx)
    return k[1 + np.argmax(spectrum[1:])]


@pytest.mark.slow
def test_ocean_shelf_leaves_short_internal_waves_behind():
    spec = build_scenario("ocean-shelf")
    result = run_scenario(spec)
    assert [f.t for f in result.frames] == pytest.approx(np.linspace(0.0, spec.t_final, 6).tolist())
    for frame in result.frames:
        for name in ("h1", "h2", "u1", "u2", "eta1", "eta2"):
            assert np.all(np.isfinite(frame.field(name))), name
    final = result.frames[-1]
    assert np.all(final.h2 >= 0)

    # the coast is a wall, so mass only changes through the open ocean boundary
    clipped = result.stats["clipped_mass"]
    inflow = result.stats["boundary_inflow"]
    for k, layer in enumerate(("top", "bottom")):
        budget = result.mass_start[k] + inflow[layer]
        assert abs(result.mass_end[k] - budget) <= 1e-10 * result.mass_start[k] + clipped, layer

    dx = spec.grid().dx
    surface = final.eta1 - spec.eta1_hat
    internal = final.eta2 - np.maximum(spec.eta2_hat, final.b)
    assert dominant_wavenumber(internal, dx) > dominant_wavenumber(surface, dx)
