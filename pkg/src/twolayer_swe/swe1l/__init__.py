"""Single-layer shallow water f-wave solver."""

from twolayer_swe.swe1l.single_layer import SingleLayerSolution, solve_single_layer

__all__ = ["SingleLayerSolution", "solve_single_layer"]
