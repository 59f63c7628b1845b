"""Scenario runs, convergence sweeps and the well-balanced suite."""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.frames import SolutionFrame
from twolayer_swe.driver.simulation_service import RunResult, SimulationManager
from twolayer_swe.scenarios.catalog import WELL_BALANCED_SCENARIOS, build_scenario
from twolayer_swe.scenarios.error_norms import ErrorReport, error_norms, fit_orders
from twolayer_swe.scenarios.initial_conditions import initial_state, rest_state
from twolayer_swe.scenarios.models import ScenarioSpec


def run_scenario(spec: ScenarioSpec, on_frame: Optional[Callable[[SolutionFrame], None]] = None,
                 dt_max: Optional[float] = None) -> RunResult:
    """Build the initial state of ``spec`` and run it to ``spec.t_final``."""
    manager = SimulationManager(spec.parameters(), spec.grid(), spec.boundary(),
                                background=spec.background(), limiter=spec.limiter, dt_max=dt_max)
    return manager.run(initial_state(spec), spec.t_final, spec.n_frames, on_frame)


def _final_frame(spec_data: Dict) -> SolutionFrame:
    """Process-pool entry point: final frame of a serialized scenario."""
    spec = ScenarioSpec.model_validate(spec_data)
    single = spec.model_copy(update={"n_frames": 1})
    return run_scenario(single).frames[-1]


def _final_frames(specs: Sequence[ScenarioSpec], workers: int) -> List[SolutionFrame]:
    payloads = [s.model_dump(mode="json") for s in specs]
    if workers <= 1 or len(specs) <= 1:
        return [_final_frame(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_final_frame, payloads))


class ConvergenceReport(BaseModel):
    scenario: str
    eigen_method: str
    reference_n: int
    reports: List[ErrorReport]
    orders: Dict[str, Dict[str, float]] = Field(default_factory=dict)


class ConvergenceManager:
    """Runs a scenario at several resolutions against a fine self-generated reference."""

    def __init__(self, spec: ScenarioSpec, resolutions: Sequence[int], reference_n: int, workers: int = 1):
        if len(resolutions) < 3:
            raise ValueError("A convergence study needs at least 3 resolutions")
        if reference_n <= max(resolutions):
            raise ValueError(f"reference_n={reference_n} must exceed the finest resolution {max(resolutions)}")
        self.spec = spec
        self.resolutions = sorted(int(n) for n in resolutions)
        self.reference_n = int(reference_n)
        self.workers = max(1, int(workers))
        Logger.log("Initialized ConvergenceManager", level="INFO", scenario=spec.name,
                   resolutions=self.resolutions, reference_n=self.reference_n, workers=self.workers)

    def run(self) -> ConvergenceReport:
        specs = [self.spec.model_copy(update={"n_cells": n})
                 for n in self.resolutions + [self.reference_n]]
        frames = _final_frames(specs, self.workers)
        reference = frames[-1]

        reports = []
        for frame in frames[:-1]:
            report = error_norms(frame, reference)
            Logger.log("Resolution compared", level="INFO", scenario=self.spec.name,
                       n_cells=frame.n_cells, h2_l1=report.errors["h2"].l1)
            reports.append(report)

        orders = {"l1": fit_orders(reports, "l1"), "linf": fit_orders(reports, "linf")}
        for report in reports:
            report.orders = orders["l1"]
        return ConvergenceReport(scenario=self.spec.name, eigen_method=self.spec.eigen_method.value,
                                 reference_n=self.reference_n, reports=reports, orders=orders)


class WellBalancedRow(BaseModel):
    scenario: str
    bathymetry: str
    dry: bool
    report: ErrorReport


def run_well_balanced_suite(overrides: Optional[Dict] = None, workers: int = 1,
                            names: Sequence[str] = WELL_BALANCED_SCENARIOS) -> List[WellBalancedRow]:
    """Run each at-rest scenario and compare its final frame with the exact rest state."""
    specs = [build_scenario(name, overrides) for name in names]
    frames = _final_frames(specs, workers)

    rows = []
    for spec, frame in zip(specs, frames):
        rest = rest_state(spec)
        exact = SolutionFrame.from_cells(frame.t, spec.grid().centers(), rest.interior(spec.grid()),
                                         spec.parameters())
        report = error_norms(frame, exact)
        Logger.log("Well-balanced case finished", level="INFO", scenario=spec.name,
                   max_linf=max(e.linf for e in report.errors.values()))
        rows.append(WellBalancedRow(scenario=spec.name, bathymetry=spec.bathymetry.kind.value,
                                    dry="dry" in spec.name, report=report))
    return rows
