from __future__ import annotations
import itertools
import logging

import numpy as np

from .._errors import MonotonicityError, OversamplingTooLowError
from ..types import WarpDerivativeParams, WarpingMap, spline_coefficients
from ._smooth import WarpShape, edge_coordinate, integrate_wdot

logger = logging.getLogger(__name__)

MAX_RELAX_PASSES = 3


def anchor_positions(
    params: WarpDerivativeParams,
    v: int,
    n_pulses: int,
    z_h: int = 0,
    z_t: int = 0,
    shape: WarpShape | str = WarpShape.double,
) -> np.ndarray:
    """
    Real-valued sample positions of every guard and pulse index.

    Index ``k`` (``0 <= k < z_h + n_pulses + z_t``) sits at warped coordinate
    ``k - z_h - (n_pulses - 1) / 2``. Positions are relative to index 0.
    """
    u = np.arange(z_h + n_pulses + z_t) - z_h - edge_coordinate(n_pulses)
    reach = float(np.max(np.abs(u))) + 1.0
    table = integrate_wdot(params, shape=shape, reach=reach)
    t = table.inverse(u)
    return v * (t - t[0])


def _min_slope(anchors: np.ndarray) -> tuple[float, int]:
    coef = spline_coefficients(anchors)
    worst = np.inf
    where = 0
    for k in range(len(anchors) - 1):
        dx = np.arange(anchors[k + 1] - anchors[k] + 1, dtype=np.float64)
        a, b, c, _ = coef[k]
        slope = (3 * a * dx + 2 * b) * dx + c
        m = float(slope.min())
        if m < worst:
            worst, where = m, k
    return worst, where


def _relax(positions: np.ndarray, anchors: np.ndarray) -> np.ndarray:
    """Re-round anchors around non-monotone segments to the other neighbor."""
    anchors = anchors.copy()
    for npass in range(MAX_RELAX_PASSES):
        worst, seg = _min_slope(anchors)
        if worst > 0:
            return anchors
        logger.debug("relaxing anchors around segment %d (pass %d)", seg, npass + 1)
        near = [k for k in range(seg - 1, seg + 3) if 0 < k < len(anchors) - 1]
        best = None
        for choice in itertools.product((False, True), repeat=len(near)):
            trial = anchors.copy()
            for k, flip in zip(near, choice):
                if flip:
                    r = positions[k]
                    trial[k] = np.floor(r) if anchors[k] >= r else np.ceil(r)
            if np.any(np.diff(trial) <= 0):
                continue
            score, _ = _min_slope(trial)
            if best is None or score > best[0]:
                best = (score, trial)
        if best is None:
            break
        anchors = best[1]
    worst, seg = _min_slope(anchors)
    if worst > 0:
        return anchors
    raise MonotonicityError(
        f"Warping map is not monotone around anchor {seg} after "
        f"{MAX_RELAX_PASSES} relaxation passes."
    )


def fit_spline(
    params: WarpDerivativeParams,
    v: int,
    n_pulses: int,
    z_h: int = 0,
    z_t: int = 0,
    *,
    shape: WarpShape | str = WarpShape.double,
    first_index: int = 0,
) -> WarpingMap:
    """Fit the integer-anchored cubic spline map of a smooth warp."""
    positions = anchor_positions(params, v, n_pulses, z_h, z_t, shape)
    anchors = np.rint(positions)
    if np.any(np.diff(anchors) <= 0):
        k = int(np.argmax(np.diff(anchors) <= 0))
        raise OversamplingTooLowError(
            f"indices {k} and {k + 1} snap to the same sample at v={v}",
            name="anchors",
        )
    anchors = _relax(positions, anchors)
    warp = WarpingMap(tuple(int(a) for a in anchors), first_index=first_index)
    logger.info(
        "fitted %d anchors over %d samples at v=%d", len(anchors), warp.length, v
    )
    return warp
