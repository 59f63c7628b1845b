"""Run artifacts: frame CSVs, stacked surfaces, manifests and error tables."""

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence

from tabulate import tabulate

from twolayer_swe.config.environment import get_env_config
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.config.run_config import dump_config_text
from twolayer_swe.core.frames import FRAME_COLUMNS, SolutionFrame
from twolayer_swe.core.parameters import Parameters

STACKED_COLUMNS = ["t", "x", "b", "eta1", "eta2"]
TABLE_FIELDS = ("h1", "h2", "hu1", "hu2", "eta1", "eta2")


def _number(value: float) -> str:
    return f"{float(value):.17g}"


def _sci(value: float) -> str:
    return f"{float(value):.3e}"


class RunReportService:
    """Writes the artifacts of one run under a single output directory."""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.names = get_env_config()['output']
        self.frames_dir = self.output_dir / self.names['frames_dir']
        self.frames_dir.mkdir(parents=True, exist_ok=True)
        Logger.log("Initialized run report service", level="INFO", output_dir=str(self.output_dir))

    def write_frame(self, frame: SolutionFrame, index: int) -> Path:
        """One row per interior cell with the full-precision frame columns."""
        path = self.frames_dir / self.names['frame_pattern'].format(index=index)
        columns = frame.columns()
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(FRAME_COLUMNS)
            for i in range(frame.n_cells):
                writer.writerow([_number(columns[name][i]) for name in FRAME_COLUMNS])
        Logger.log("Frame written", level="DEBUG", path=str(path), t=frame.t)
        return path

    def write_stacked(self, frames: Sequence[SolutionFrame]) -> Path:
        """All frames' surfaces in one table with a leading time column."""
        path = self.output_dir / self.names['stacked']
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(STACKED_COLUMNS)
            for frame in frames:
                for i in range(frame.n_cells):
                    writer.writerow([_number(frame.t), _number(frame.x[i]), _number(frame.b[i]),
                                     _number(frame.eta1[i]), _number(frame.eta2[i])])
        return path

    def _write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self.output_dir / name
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    def write_manifest(self, scenario: Dict[str, Any], params: Parameters, stats: Dict[str, Any],
                       mass_start: Sequence[float], mass_end: Sequence[float],
                       n_frames: int) -> Path:
        """Everything that determines the run plus its step diagnostics; no wall-clock data."""
        manifest = {
            "scenario": scenario,
            "parameters": params.model_dump(mode="json"),
            "eigen_method": params.eigen_method.value,
            "dry_tolerance": params.dry_tolerance,
            "frames": n_frames,
            "steps": stats.get("steps"),
            "rejected_steps": stats.get("rejected_steps"),
            "max_cfl": stats.get("max_cfl"),
            "clipped_mass": stats.get("clipped_mass"),
            "retried_interfaces": stats.get("retried_interfaces"),
            "boundary_inflow": stats.get("boundary_inflow"),
            "mass_start": {"top": mass_start[0], "bottom": mass_start[1]},
            "mass_end": {"top": mass_end[0], "bottom": mass_end[1]},
        }
        return self._write_json(self.names['manifest'], manifest)

    def write_config(self, scenario: Dict[str, Any]) -> Path:
        """Resolved scenario as a flat config file that reproduces the run with --config."""
        path = self.output_dir / self.names['config']
        path.write_text(dump_config_text(scenario), encoding="utf-8")
        return path

    def write_timing(self, timing: Dict[str, Any]) -> Path:
        return self._write_json(self.names['timing'], timing)

    def write_errors(self, payload: Dict[str, Any], table: str) -> List[Path]:
        """Machine-readable errors and their aligned-text table."""
        json_path = self._write_json(self.names['errors_json'], payload)
        text_path = self.output_dir / self.names['errors_text']
        text_path.write_text(table + "\n", encoding="utf-8")
        Logger.log("Error tables written", level="INFO", json=str(json_path), text=str(text_path))
        return [json_path, text_path]


def _create_table(headers: List[str], rows: List[List[Any]], title: str = "") -> str:
    table = tabulate(rows, headers=headers, tablefmt="simple", stralign="right", disable_numparse=True)
    return f"{title}\n\n{table}" if title else table


def convergence_table(report) -> str:
    """Per-resolution L1 errors with the fitted order in the last row."""
    fields = [f for f in TABLE_FIELDS if f in report.reports[0].errors]
    headers = ["N"] + [f"{name} L1" for name in fields]
    rows = [[str(r.n_cells)] + [_sci(r.errors[name].l1) for name in fields] for r in report.reports]
    orders = report.orders.get("l1", {})
    rows.append(["order"] + [f"{orders[name]:.2f}" if name in orders else "-" for name in fields])
    title = (f"Convergence of {report.scenario} ({report.eigen_method}) "
             f"against a {report.reference_n}-cell reference")
    return _create_table(headers, rows, title)


def well_balanced_table(rows) -> str:
    """Rows per (bathymetry, dry, layer) with L1 and L-infinity errors of depth, momentum and surface."""
    headers = ["Bathymetry", "Dry", "Layer",
               "Depth L1", "Depth Linf", "Momentum L1", "Momentum Linf", "Surface L1", "Surface Linf"]
    table_rows = []
    for row in rows:
        errors = row.report.errors
        for layer in (1, 2):
            depth, momentum, surface = errors[f"h{layer}"], errors[f"hu{layer}"], errors[f"eta{layer}"]
            table_rows.append([row.bathymetry, str(row.dry), str(layer)]
                              + [_sci(v) for v in (depth.l1, depth.linf, momentum.l1,
                                                   momentum.linf, surface.l1, surface.linf)])
    return _create_table(headers, table_rows, "Well-balanced errors after the at-rest runs")
