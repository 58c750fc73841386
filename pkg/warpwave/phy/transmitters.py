from __future__ import annotations
import logging
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import fft as sp_fft

from .._errors import SplitPreconditionError
from ..pulses import rc_freq_prototype, warped_pulse_samples
from ..spectral import PruneSpec, ifft_dit_pruned, is_pow2
from ..types import SampledSignal, WaveformConfig

logger = logging.getLogger(__name__)

__all__ = ["pulse_matrix", "tx_filterbank", "SplitPlan", "split_plan", "tx_split"]


@lru_cache(maxsize=16)
def pulse_matrix(cfg: WaveformConfig) -> np.ndarray:
    """Warped pulse of every data index, one row per pulse."""
    rows = [
        warped_pulse_samples(cfg.profile.spec(n), cfg.warp, cfg.pulse_index(n)).samples
        for n in range(cfg.n_pulses)
    ]
    mat = np.array(rows)
    mat.setflags(write=False)
    return mat


def _check_data(data, n: int) -> np.ndarray:
    data = np.asarray(data, dtype=np.complex128)
    if data.ndim != 1 or data.size != n:
        raise ValueError(f"Expected {n} data symbols, got shape {data.shape}.")
    return data


def tx_filterbank(data, cfg: WaveformConfig) -> SampledSignal:
    """Sum of the warped pulses modulated by ``data``."""
    data = _check_data(data, cfg.n_pulses)
    return SampledSignal(data @ pulse_matrix(cfg), v=cfg.v)


class SplitPlan(NamedTuple):
    """Block sizes and placement of the split transmitter."""

    n_dft: int
    n_window: int
    n_ifft: int
    block_start: int  # sample offset of the first DFT slot in the symbol
    v_block: int  # samples per pulse in the constant slope region
    alpha_mid: float
    edges: int
    zeros: int


def split_plan(cfg: WaveformConfig, e: int, z_e: int) -> SplitPlan:
    """
    Plan the split of ``cfg`` into ``e`` filter-bank pulses per side and a
    DFT-spread block for the rest.
    """
    n = cfg.n_pulses
    if not 0 < e < n / 2:
        raise SplitPreconditionError(e, f"edge count must be in (0, {n / 2})")
    if not 0 <= z_e <= e:
        raise SplitPreconditionError(e, f"z_e={z_e} must be in [0, {e}]")
    alpha_mid = cfg.profile.pairs[e][0]
    for k in range(e, n - e):
        left, right = cfg.profile.pairs[k]
        if left != alpha_mid or right != alpha_mid:
            raise SplitPreconditionError(
                k, f"roll-offs {left}, {right} differ from the middle alpha {alpha_mid}"
            )
    n_dft = n - 2 * (e - z_e)
    k_start = cfg.z_h + e - z_e
    anchors = np.asarray(cfg.warp.anchors)
    if k_start < 0 or k_start + n_dft > anchors.size:
        raise SplitPreconditionError(e - z_e, "DFT block does not fit in the symbol")
    block = anchors[k_start : k_start + n_dft]
    steps = np.diff(block)
    v_block = int(steps[0])
    bad = np.flatnonzero(steps != v_block)
    if bad.size:
        raise SplitPreconditionError(
            int(bad[0]) + k_start - cfg.z_h + 1, "warp slope is not constant over the DFT block"
        )
    block_start = int(block[0] - anchors[0])
    n_ifft = n_dft * v_block
    if block_start + n_ifft > cfg.length:
        raise SplitPreconditionError(n - e + z_e - 1, "DFT block runs past the symbol end")
    return SplitPlan(n_dft, 2 * n_dft, n_ifft, block_start, v_block, alpha_mid, e, z_e)


@lru_cache(maxsize=16)
def _split_window(n_dft: int, n_ifft: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(-n_dft, n_dft)
    return np.asarray(rc_freq_prototype(alpha, k / n_dft)), k % n_ifft


def _inverse(spectrum: np.ndarray, nonzero: np.ndarray) -> np.ndarray:
    n = spectrum.shape[-1]
    if is_pow2(n):
        spec = PruneSpec.from_sets(n, input_nonzero=nonzero.tolist())
        out, _ = ifft_dit_pruned(spectrum, spec)
        return out
    return sp_fft.ifft(spectrum, axis=-1)


def tx_split(data, cfg: WaveformConfig, e: int, z_e: int) -> SampledSignal:
    """
    Filter bank for ``e`` pulses on each side and a DFT-spread block for the
    middle pulses.

    The middle block spreads the data with a DFT, replicates the spectrum over
    ``2 * n_dft`` bins, applies the raised-cosine window of the middle roll-off
    and returns to time with an inverse transform of ``n_dft * v`` points.
    """
    data = _check_data(data, cfg.n_pulses)
    plan = split_plan(cfg, e, z_e)
    n = cfg.n_pulses
    spread = sp_fft.fft(np.pad(data[e : n - e], (z_e, z_e)))
    window, bins = _split_window(plan.n_dft, plan.n_ifft, plan.alpha_mid)
    # periodic extension: entry i holds bin i - n_dft
    extended = np.concatenate([spread, spread]) * window
    spectrum = np.zeros(plan.n_ifft, dtype=np.complex128)
    spectrum[bins] = extended
    block = _inverse(spectrum, bins) * (plan.n_ifft / plan.n_dft)

    edge_data = data.copy()
    edge_data[e : n - e] = 0
    out = edge_data @ pulse_matrix(cfg)
    out[plan.block_start : plan.block_start + plan.n_ifft] += block
    logger.debug("split transmit with %s", plan)
    return SampledSignal(out, v=cfg.v)
