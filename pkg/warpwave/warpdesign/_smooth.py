from __future__ import annotations
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..types import WarpDerivativeParams


class WarpShape(Enum):
    """Form of the warping derivative."""

    double = "double"  # plateau of s_in between two sigmoid steps
    one_sided = "one_sided"  # single step from s_out to s_in at t1


def wdot_eval(
    params: WarpDerivativeParams, t, shape: WarpShape | str = WarpShape.double
):
    """Warping derivative at ``t`` (symbol durations from the symbol center)."""
    shape = WarpShape(shape)
    t = np.asarray(t, dtype=np.float64)
    half = (params.s_in - params.s_out) / 2
    if shape is WarpShape.double:
        steps = np.tanh((t - params.t1) / params.t_cap) - np.tanh(
            (t - params.t2) / params.t_cap
        )
    else:
        steps = 1.0 + np.tanh((t - params.t1) / params.t_cap)
    out = params.s_out + half * steps
    if out.ndim == 0:
        return float(out)
    return out


class WarpTable(NamedTuple):
    """Tabulated smooth warp ``w(t)`` with ``w(0) = 0``."""

    t: np.ndarray
    w: np.ndarray

    def __call__(self, t) -> np.ndarray:
        return np.interp(t, self.t, self.w)

    def inverse(self, w) -> np.ndarray:
        """Exact inverse of the piecewise linear table."""
        w = np.asarray(w, dtype=np.float64)
        if np.any(w < self.w[0]) or np.any(w > self.w[-1]):
            raise ValueError(
                f"Warped value outside the table range [{self.w[0]:.3f}, {self.w[-1]:.3f}]."
            )
        return np.interp(w, self.w, self.t)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.w[0]), float(self.w[-1])


def integrate_wdot(
    params: WarpDerivativeParams,
    t_range: float | None = None,
    step: float = 1e-3,
    shape: WarpShape | str = WarpShape.double,
    reach: float = 8.0,
) -> WarpTable:
    """
    Integrate the warping derivative on a symmetric grid.

    Parameters
    ----------
    params : WarpDerivativeParams
        Sigmoid parameters.
    t_range : float, optional
        Half width of the time grid. By default it is wide enough for the
        warped coordinate to reach ``±reach``.
    step : float
        Grid spacing, at most 1e-3 symbol durations.
    """
    if step > 1e-3:
        raise ValueError(f"Integration step must be <= 1e-3, got {step}.")
    if t_range is None:
        t_range = reach / params.s_out + 1.0
    k = int(np.ceil(t_range / step))
    t = np.arange(-k, k + 1) * step
    w = cumulative_trapezoid(wdot_eval(params, t, shape), t, initial=0.0)
    w -= w[k]
    return WarpTable(t, w)


def expansion_D(
    params: WarpDerivativeParams,
    edge: float = 5.5,
    shape: WarpShape | str = WarpShape.double,
    table: WarpTable | None = None,
) -> float:
    """Time span between the warped positions ``-edge`` and ``+edge``."""
    if table is None:
        table = integrate_wdot(params, shape=shape, reach=abs(edge) + 1)
    lo, hi = table.inverse([-edge, edge])
    return float(abs(hi - lo))


def edge_coordinate(n_pulses: int) -> float:
    """Warped coordinate of the outermost pulse of a centered symbol."""
    return (n_pulses - 1) / 2
