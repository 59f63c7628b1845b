"""Exception hierarchy for solver and configuration failures."""

from typing import Any, Dict, Optional, Sequence

import numpy as np


class SolverError(Exception):
    """Base class for failures raised while solving or stepping.

    ``indices`` holds the interface (or cell) indices involved and ``context``
    any diagnostic values attached on the way up to the driver.
    """

    def __init__(self, message: str, indices: Optional[Sequence[int]] = None,
                 context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.indices = [int(i) for i in np.atleast_1d(indices)] if indices is not None else []
        self.context = dict(context or {})

    def with_context(self, **context: Any) -> "SolverError":
        self.context.update(context)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": str(self),
            "error_type": type(self).__name__,
            "indices": self.indices[:20],
            "context": {k: _plain(v) for k, v in self.context.items()},
        }


class HyperbolicityLossError(SolverError):
    """Complex characteristic speeds: the layer shear exceeds the reduced gravity bound."""


class NearSingularBasisError(SolverError):
    """Eigenvector matrix too ill-conditioned to project the flux jump."""


class NegativeDepthError(SolverError):
    """A layer depth went negative by more than the dry tolerance."""


class ConfigError(ValueError):
    """Invalid run configuration, config file or scenario name."""


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()[:20]
    if isinstance(value, np.generic):
        return value.item()
    return value
