from __future__ import annotations
import logging
from typing import TYPE_CHECKING

import numpy as np

from ..types import OpCount
from ._prune import Plan, PruneSpec, check_pow2, dif_plan, dit_plan

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)


def dft_ref(signal: ArrayLike) -> np.ndarray:
    """Direct O(N²) DFT along the last axis."""
    x = np.asarray(signal, dtype=np.complex128)
    n = x.shape[-1]
    k = np.arange(n)
    mat = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return x @ mat.T


def _run(plan: Plan, buf: np.ndarray, dit: bool) -> np.ndarray:
    for stage in plan.stages:
        a = buf[..., stage.i0]
        b = buf[..., stage.i1]
        if dit:
            b = b * stage.twiddle
            buf[..., stage.i0] = a + b
            buf[..., stage.i1] = a - b
        else:
            buf[..., stage.i0] = a + b
            buf[..., stage.i1] = (a - b) * stage.twiddle
    return buf[..., plan.output_perm]


def _scatter(values: np.ndarray, spec: PruneSpec, plan: Plan) -> np.ndarray:
    n_in = len(spec.input_nonzero)
    if values.shape[-1] == n_in:
        pass
    elif values.shape[-1] == spec.size:
        values = values[..., list(spec.input_nonzero)]
    else:
        raise ValueError(
            f"Expected {spec.size} or {n_in} input values, got {values.shape[-1]}."
        )
    buf = np.zeros(values.shape[:-1] + (spec.size,), dtype=np.complex128)
    buf[..., plan.input_perm] = values
    return buf


def fft_dif_pruned(signal: ArrayLike, prune: PruneSpec) -> tuple[np.ndarray, OpCount]:
    """
    Radix-2 decimation-in-frequency FFT computing only ``prune.output_keep``.

    Parameters
    ----------
    signal : array-like
        Input of length ``prune.size`` (or ``len(prune.input_nonzero)`` values
        at those indices). Leading axes are transformed independently.
    prune : PruneSpec
        Index sets. Plans are cached per spec.

    Returns
    -------
    (np.ndarray, OpCount)
        Kept bins in the order of ``prune.output_keep`` and the executed
        butterfly count.
    """
    x = np.asarray(signal, dtype=np.complex128)
    plan = dif_plan(prune)
    buf = _scatter(x, prune, plan)
    return _run(plan, buf, dit=False), plan.count


def ifft_dit_pruned(spectrum: ArrayLike, prune: PruneSpec) -> tuple[np.ndarray, OpCount]:
    """
    Radix-2 decimation-in-time inverse FFT with input and output pruning.

    Butterflies fed only by zero inputs and butterflies feeding no kept output
    are skipped. The result is scaled by ``1/size``.
    """
    x = np.asarray(spectrum, dtype=np.complex128)
    plan = dit_plan(prune)
    buf = _scatter(x, prune, plan)
    return _run(plan, buf, dit=True) / prune.size, plan.count


def fft_radix2(signal: ArrayLike) -> tuple[np.ndarray, OpCount]:
    """Full radix-2 FFT along the last axis."""
    x = np.asarray(signal, dtype=np.complex128)
    n = x.shape[-1]
    check_pow2(n)
    return fft_dif_pruned(x, PruneSpec.full(n))


def ifft_radix2(spectrum: ArrayLike) -> tuple[np.ndarray, OpCount]:
    """Full radix-2 inverse FFT along the last axis, scaled by ``1/N``."""
    x = np.asarray(spectrum, dtype=np.complex128)
    n = x.shape[-1]
    check_pow2(n)
    return ifft_dit_pruned(x, PruneSpec.full(n))


def full_count(n: int) -> OpCount:
    """Butterfly count of an unpruned radix-2 transform."""
    bits = check_pow2(n)
    total = n // 2 * bits
    return OpCount(total, total)


def complexity_model(n_pulses: int, v: int, window: int | None = None) -> dict[str, int]:
    """
    Complex multiplication counts of one symbol for the filter-bank transmitter
    and the full and pruned receivers.
    """
    if window is None:
        window = 1 << (v * n_pulses - 1).bit_length()
    band = 2 * n_pulses
    bins = list(range(window - n_pulses, window)) + list(range(n_pulses))
    positions = [int(round(k * window / n_pulses)) % window for k in range(n_pulses)]
    fwd = dif_plan(PruneSpec.from_sets(window, output_keep=bins)).count
    inv = dit_plan(PruneSpec.from_sets(window, input_nonzero=bins, output_keep=positions)).count
    full = full_count(window)
    out = {
        "window": window,
        "band_bins": band,
        "tx_filterbank": n_pulses * window,
        "rx_full": 2 * full.complex_mults + band,
        "rx_pruned": fwd.complex_mults + inv.complex_mults + band,
    }
    logger.debug("complexity model for N=%d, V=%d: %s", n_pulses, v, out)
    return out
