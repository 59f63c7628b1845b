"""Command-line interface: run a scenario, a convergence sweep or the well-balanced suite."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer

from twolayer_swe.common.errors import ConfigError, SolverError
from twolayer_swe.common.report_service import RunReportService, convergence_table, well_balanced_table
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.config.run_config import RunConfig, RunMode, load_config_file, parse_config_text
from twolayer_swe.core.frames import SolutionFrame
from twolayer_swe.core.parameters import EigenMethod
from twolayer_swe.driver.limiters import Limiter
from twolayer_swe.scenarios.error_norms import error_norms
from twolayer_swe.scenarios.initial_conditions import rest_state
from twolayer_swe.scenarios.models import PerturbationKind, to_flat
from twolayer_swe.scenarios.scenario_service import (
    ConvergenceManager,
    WellBalancedRow,
    run_scenario,
    run_well_balanced_suite,
)

EXIT_CONFIG_ERROR = 2
EXIT_SOLVER_ERROR = 3

logger = logging.getLogger(__name__)

app = typer.Typer(help="One-dimensional two-layer shallow water solver", no_args_is_help=True)

ConfigOption = typer.Option(None, "--config", "-c", help="Flat 'key = value' config file")
ScenarioOption = typer.Option(None, "--scenario", "-s", help="Scenario name")
CellsOption = typer.Option(None, "--n", help="Number of grid cells")
MethodOption = typer.Option(None, "--eigen-method", help="Eigensolver strategy")
LimiterOption = typer.Option(None, "--limiter", help="Wave limiter")
TFinalOption = typer.Option(None, "--t-final", help="Final time (s)")
OutputOption = typer.Option(None, "--output", "-o", help="Output directory")
SetOption = typer.Option(None, "--set", help="Scenario override 'key=value', repeatable")
WorkersOption = typer.Option(None, "--workers", help="Parallel runs in sweeps")
DtMaxOption = typer.Option(None, "--dt-max", help="Upper bound on the time step (s)")


def _configure_console_logging():
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s.%(msecs)03d %(levelname)s:%(name)s:%(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def _file_values(config: Optional[Path], settings: Optional[List[str]]) -> Dict[str, Any]:
    values = load_config_file(config) if config else {}
    if settings:
        values.update(parse_config_text("\n".join(settings)))
    return values


def _fail(error: Exception, code: int):
    payload = error.to_dict() if isinstance(error, SolverError) else {
        "error": str(error), "error_type": type(error).__name__, "indices": []}
    Logger.log("Command failed", level="ERROR", **payload)
    typer.echo(json.dumps(payload, default=str), err=True)
    raise typer.Exit(code=code)


def _guarded(action):
    try:
        action()
    except ConfigError as e:
        _fail(e, EXIT_CONFIG_ERROR)
    except SolverError as e:
        _fail(e, EXIT_SOLVER_ERROR)
    except ValueError as e:
        # environment settings and remaining model validation
        _fail(e, EXIT_CONFIG_ERROR)


def execute_run(cfg: RunConfig) -> Path:
    """Run one scenario and write its frames, stacked surfaces, resolved config, manifest and timing."""
    spec = cfg.scenario_spec()
    out = cfg.output_path(spec.name)
    reports = RunReportService(out)
    start_time = datetime.now()
    logger.info("Running %s with %d cells to t=%s", spec.name, spec.n_cells, spec.t_final)

    written: List[SolutionFrame] = []

    def on_frame(frame: SolutionFrame):
        reports.write_frame(frame, len(written))
        written.append(frame)

    result = run_scenario(spec, on_frame=on_frame, dt_max=cfg.dt_max)
    stats = dict(result.stats)
    elapsed = stats.pop("elapsed_seconds", None)
    reports.write_stacked(result.frames)
    reports.write_config(to_flat(spec))
    reports.write_manifest(to_flat(spec), spec.parameters(), stats, result.mass_start,
                           result.mass_end, len(result.frames))

    if spec.perturbation.kind is PerturbationKind.NONE:
        grid = spec.grid()
        exact = SolutionFrame.from_cells(result.frames[-1].t, grid.centers(),
                                         rest_state(spec).interior(grid), spec.parameters())
        report = error_norms(result.frames[-1], exact)
        rows = [WellBalancedRow(scenario=spec.name, bathymetry=spec.bathymetry.kind.value,
                                dry="dry" in spec.name, report=report)]
        reports.write_errors({"scenario": spec.name, "report": report.model_dump()},
                             well_balanced_table(rows))

    reports.write_timing({"run_seconds": elapsed,
                          "total_seconds": (datetime.now() - start_time).total_seconds()})
    logger.info("Finished %s after %d steps, output in %s", spec.name, stats["steps"], out)
    return out


def execute_converge(cfg: RunConfig) -> Path:
    """Convergence sweep of one scenario against its own fine-grid reference."""
    spec = cfg.scenario_spec()
    out = cfg.output_path(f"{spec.name}-convergence")
    reports = RunReportService(out)
    start_time = datetime.now()
    logger.info("Convergence sweep of %s at %s against %d cells", spec.name, cfg.resolutions, cfg.reference_n)

    report = ConvergenceManager(spec, cfg.resolutions, cfg.reference_n, cfg.workers).run()
    reports.write_errors(report.model_dump(), convergence_table(report))
    reports.write_timing({"total_seconds": (datetime.now() - start_time).total_seconds()})
    return out


def execute_well_balanced_suite(cfg: RunConfig) -> Path:
    """All at-rest scenarios compared with their exact rest states."""
    overrides = dict(cfg.overrides)
    for key, value in (("n_cells", cfg.n_cells), ("t_final", cfg.t_final),
                       ("eigen_method", cfg.eigen_method.value if cfg.eigen_method else None),
                       ("limiter", cfg.limiter.value if cfg.limiter else None)):
        if value is not None:
            overrides[key] = value
    out = cfg.output_path("well-balanced-suite")
    reports = RunReportService(out)
    start_time = datetime.now()

    rows = run_well_balanced_suite(overrides or None, workers=cfg.workers)
    payload = {"rows": [row.model_dump() for row in rows]}
    reports.write_errors(payload, well_balanced_table(rows))
    reports.write_timing({"total_seconds": (datetime.now() - start_time).total_seconds()})
    return out


@app.command()
def run(
    config: Optional[Path] = ConfigOption,
    scenario: Optional[str] = ScenarioOption,
    n: Optional[int] = CellsOption,
    eigen_method: Optional[EigenMethod] = MethodOption,
    limiter: Optional[Limiter] = LimiterOption,
    t_final: Optional[float] = TFinalOption,
    frames: Optional[int] = typer.Option(None, "--frames", help="Number of output frames"),
    output: Optional[str] = OutputOption,
    dt_max: Optional[float] = DtMaxOption,
    set_: Optional[List[str]] = SetOption,
):
    """Run one scenario and write its frames."""
    _configure_console_logging()

    def action():
        cfg = RunConfig.from_sources(_file_values(config, set_), {
            "mode": RunMode.RUN, "scenario": scenario, "n_cells": n, "eigen_method": eigen_method,
            "limiter": limiter, "t_final": t_final, "frames": frames, "output_dir": output,
            "dt_max": dt_max,
        })
        typer.echo(str(execute_run(cfg)))

    _guarded(action)


@app.command()
def converge(
    config: Optional[Path] = ConfigOption,
    scenario: Optional[str] = ScenarioOption,
    eigen_method: Optional[EigenMethod] = MethodOption,
    limiter: Optional[Limiter] = LimiterOption,
    t_final: Optional[float] = TFinalOption,
    resolutions: Optional[str] = typer.Option(None, "--resolutions", help="Comma-separated cell counts"),
    reference_n: Optional[int] = typer.Option(None, "--reference-n", help="Cells of the reference run"),
    workers: Optional[int] = WorkersOption,
    output: Optional[str] = OutputOption,
    set_: Optional[List[str]] = SetOption,
):
    """Fit convergence orders of a scenario against a fine reference run."""
    _configure_console_logging()

    def action():
        cfg = RunConfig.from_sources(_file_values(config, set_), {
            "mode": RunMode.CONVERGE, "scenario": scenario, "eigen_method": eigen_method,
            "limiter": limiter, "t_final": t_final, "resolutions": resolutions,
            "reference_n": reference_n, "workers": workers, "output_dir": output,
        })
        typer.echo(str(execute_converge(cfg)))

    _guarded(action)


@app.command("well-balanced-suite")
def well_balanced_suite(
    config: Optional[Path] = ConfigOption,
    n: Optional[int] = CellsOption,
    eigen_method: Optional[EigenMethod] = MethodOption,
    t_final: Optional[float] = TFinalOption,
    workers: Optional[int] = WorkersOption,
    output: Optional[str] = OutputOption,
    set_: Optional[List[str]] = SetOption,
):
    """Run every at-rest scenario and tabulate its departure from rest."""
    _configure_console_logging()

    def action():
        cfg = RunConfig.from_sources(_file_values(config, set_), {
            "mode": RunMode.WELL_BALANCED_SUITE, "n_cells": n, "eigen_method": eigen_method,
            "t_final": t_final, "workers": workers, "output_dir": output,
        })
        typer.echo(str(execute_well_balanced_suite(cfg)))

    _guarded(action)
