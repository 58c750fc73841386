from __future__ import annotations
from typing import Sequence

import numpy as np
from scipy import fft as sp_fft

from ..pulses import asym_rc_time
from ..types import PulseSpec, RolloffProfile, WarpDerivativeParams
from ._smooth import WarpShape, WarpTable, edge_coordinate, integrate_wdot

# samples per symbol duration of the dense grid
FS = 8
# warped units kept on both sides of a pulse peak
TAIL = 24.0


def _band_weights(freqs: np.ndarray, df: float, band: tuple[float, float]) -> np.ndarray:
    lo, hi = band
    left = np.maximum(freqs - df / 2, lo)
    right = np.minimum(freqs + df / 2, hi)
    return np.clip((right - left) / df, 0.0, 1.0)


def _leakage_of(
    specs: Sequence[PulseSpec],
    centers: Sequence[float],
    table: WarpTable,
    band: tuple[float, float],
    fs: int,
    tail: float,
) -> np.ndarray:
    centers = np.asarray(centers, dtype=np.float64)
    t_lo, t_hi = table.inverse([centers.min() - tail, centers.max() + tail])
    k = int(np.ceil(max(abs(t_lo), abs(t_hi)) * fs))
    t = np.arange(-k, k + 1) / fs
    w = table(t)
    pulses = np.zeros((len(specs), t.size))
    for i, (spec, c) in enumerate(zip(specs, centers)):
        x = w - c
        inside = np.abs(x) <= tail
        pulses[i, inside] = asym_rc_time(spec, x[inside])
    fft_len = 2 << (t.size - 1).bit_length()
    power = np.abs(sp_fft.fft(pulses, n=fft_len, axis=-1)) ** 2
    freqs = sp_fft.fftfreq(fft_len, d=1.0 / fs)
    weights = _band_weights(freqs, fs / fft_len, band)
    return 1.0 - (power @ weights) / power.sum(axis=-1)


def leakage_single(
    spec: PulseSpec,
    params: WarpDerivativeParams,
    band: tuple[float, float] = (-0.5, 0.5),
    *,
    position: float = 0.0,
    shape: WarpShape | str = WarpShape.double,
    fs: int = FS,
    tail: float = TAIL,
) -> float:
    """
    Fraction of a warped pulse's spectral power outside ``band``.

    The pulse peaks at warped coordinate ``position`` and ``band`` is given in
    cycles per symbol duration.
    """
    table = integrate_wdot(params, shape=shape, reach=abs(position) + tail + 1)
    return float(_leakage_of([spec], [position], table, band, fs, tail)[0])


def pulse_leakages(
    profile: RolloffProfile,
    params: WarpDerivativeParams,
    f_m: float = 0.5,
    *,
    shape: WarpShape | str = WarpShape.double,
    fs: int = FS,
    tail: float = TAIL,
    table: WarpTable | None = None,
) -> np.ndarray:
    """Leakage outside ``[-f_m, f_m]`` of every pulse at its warped position."""
    n = profile.n_pulses
    edge = edge_coordinate(n)
    if table is None:
        table = integrate_wdot(params, shape=shape, reach=edge + tail + 1)
    centers = np.arange(n) - edge
    return _leakage_of(profile.specs(), centers, table, (-f_m, f_m), fs, tail)


def leakage_per_pulse(
    profile: RolloffProfile,
    params: WarpDerivativeParams,
    n: int,
    f_m: float = 0.5,
    *,
    shape: WarpShape | str = WarpShape.double,
    fs: int = FS,
    tail: float = TAIL,
) -> float:
    """Leakage of pulse ``n`` (0 = first pulse of the symbol)."""
    if not 0 <= n < profile.n_pulses:
        raise ValueError(f"Pulse index {n} out of range for {profile.n_pulses} pulses.")
    edge = edge_coordinate(profile.n_pulses)
    table = integrate_wdot(params, shape=shape, reach=edge + tail + 1)
    center = n - edge
    return float(
        _leakage_of([profile.spec(n)], [center], table, (-f_m, f_m), fs, tail)[0]
    )


def sweep_alpha2(
    params: WarpDerivativeParams,
    alphas2: Sequence[float],
    alpha1: float = 1.0,
    *,
    position: float = 0.0,
    band: tuple[float, float] = (-0.5, 0.5),
    shape: WarpShape | str = WarpShape.one_sided,
) -> np.ndarray:
    """Leakage of one asymmetric pulse for each right roll-off in ``alphas2``."""
    table = integrate_wdot(params, shape=shape, reach=abs(position) + TAIL + 1)
    specs = [PulseSpec(alpha1, a) for a in alphas2]
    return _leakage_of(specs, [position] * len(specs), table, band, FS, TAIL)
