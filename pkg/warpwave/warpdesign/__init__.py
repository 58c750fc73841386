from ._smooth import (
    WarpShape,
    WarpTable,
    wdot_eval,
    integrate_wdot,
    expansion_D,
    edge_coordinate,
)
from ._leakage import leakage_single, leakage_per_pulse, pulse_leakages, sweep_alpha2
from ._optimize import WarpOptimizer, WarpSolution, optimize_warp
from ._spline import anchor_positions, fit_spline

__all__ = [
    "WarpShape",
    "WarpTable",
    "wdot_eval",
    "integrate_wdot",
    "expansion_D",
    "edge_coordinate",
    "leakage_single",
    "leakage_per_pulse",
    "pulse_leakages",
    "sweep_alpha2",
    "WarpOptimizer",
    "WarpSolution",
    "optimize_warp",
    "anchor_positions",
    "fit_spline",
]
