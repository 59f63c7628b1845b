"""Solver and output configuration"""

import os
from typing import Dict, Any, Optional

from dotenv import load_dotenv

load_dotenv()

# Numerical tolerances shared by the eigen, riemann and driver packages
SOLVER_CONFIG = {
    'condition_limit': 1.0e12,
    'hyperbolicity_tol': 1.0e-8,
    'polish_tol': 1.0e-12,
    'max_polish_iterations': 4,
    'alpha_switch_tol': 1.0e-8,
    'max_dt_halvings': 20,
    'cfl_max': 1.0,
    'dt_max': 1.0e3,
    'limiter': 'minmod',
}

OUTPUT_CONFIG = {
    'root': 'output',
    'frames_dir': 'frames',
    'frame_pattern': 'frame_{index:04d}.csv',
    'manifest': 'manifest.json',
    'timing': 'timing.json',
    'stacked': 'stacked.csv',
    'errors_json': 'errors.json',
    'errors_text': 'errors.txt',
    'config': 'run.cfg',
}

SWEEP_CONFIG = {
    'workers': 1,
    'resolutions': [64, 128, 256, 512, 1024],
    'reference_n': 5000,
}

ENV_OUTPUT_ROOT = "TWOLAYER_OUTPUT_ROOT"
ENV_WORKERS = "TWOLAYER_WORKERS"
ENV_DT_MAX = "TWOLAYER_DT_MAX"


def _read_positive(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = cast(raw)
    except ValueError:
        raise ValueError(f"Invalid value for {name}: {raw!r}. Expected a positive {cast.__name__}")
    if value <= 0:
        raise ValueError(f"Invalid value for {name}: {raw!r}. Expected a positive {cast.__name__}")
    return value


def get_env_config(output_root: Optional[str] = None) -> Dict[str, Any]:
    """Get solver, output and sweep configuration with environment overrides applied"""
    solver = SOLVER_CONFIG.copy()
    solver['dt_max'] = _read_positive(ENV_DT_MAX, float, solver['dt_max'])

    output = OUTPUT_CONFIG.copy()
    output['root'] = output_root or os.environ.get(ENV_OUTPUT_ROOT) or output['root']

    sweep = SWEEP_CONFIG.copy()
    sweep['workers'] = _read_positive(ENV_WORKERS, int, sweep['workers'])

    return {
        'solver': solver,
        'output': output,
        'sweep': sweep,
    }
