from __future__ import annotations
import logging
from functools import lru_cache

import numpy as np

from .._errors import ValidationError, ZeroForcingError
from ..spectral import PruneSpec, fft_dif_pruned, ifft_dit_pruned
from ..types import SampledSignal, WaveformConfig
from .baselines import ZF_THRESHOLD
from .qam import qam_demap

logger = logging.getLogger(__name__)

__all__ = ["band_bins", "receiver_specs", "equalize", "rx_symbols", "rx_chain"]


def band_bins(window: int, keep: int) -> list[int]:
    """Bins ``-keep .. keep - 1`` of a ``window`` point transform, DC in the middle."""
    return list(range(window - keep, window)) + list(range(keep))


@lru_cache(maxsize=16)
def receiver_specs(cfg: WaveformConfig) -> tuple[PruneSpec, PruneSpec]:
    """Pruning specs of the forward and inverse transforms of the receiver."""
    m = cfg.window_length
    bins = band_bins(m, cfg.keep_bins)
    fwd = PruneSpec.from_sets(m, output_keep=bins)
    inv = PruneSpec(m, tuple(bins), tuple(int(p) for p in cfg.data_anchor_offsets()))
    return fwd, inv


def equalize(band: np.ndarray, taps, fwd: PruneSpec) -> np.ndarray:
    """Zero-forcing equalization of the kept bins."""
    taps = np.asarray(taps, dtype=np.complex128)
    padded = np.zeros(fwd.size, dtype=np.complex128)
    padded[: taps.size] = taps
    h, _ = fft_dif_pruned(padded, fwd)
    mag = np.abs(h)
    weak = np.flatnonzero(mag < ZF_THRESHOLD)
    if weak.size:
        raise ZeroForcingError(fwd.output_keep[weak[0]], float(mag[weak[0]]))
    return band / h


def rx_symbols(received: SampledSignal, cfg: WaveformConfig, csi=(1.0,)) -> np.ndarray:
    """Equalized data symbols of one received window."""
    m = cfg.window_length
    if len(received) != m:
        raise ValidationError(
            f"received window has {len(received)} samples, expected {m}", name="receiver"
        )
    if len(csi) > m:
        raise ValidationError(f"{len(csi)} channel taps exceed the window", name="receiver")
    fwd, inv = receiver_specs(cfg)
    band, _ = fft_dif_pruned(received.samples, fwd)
    symbols, _ = ifft_dit_pruned(equalize(band, csi, fwd), inv)
    return symbols


def rx_chain(received: SampledSignal, cfg: WaveformConfig, csi=(1.0,)) -> np.ndarray:
    """Recovered bits of one received window with perfect channel knowledge."""
    return qam_demap(rx_symbols(received, cfg, csi), cfg.qam_order)
