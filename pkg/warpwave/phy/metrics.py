from __future__ import annotations
from typing import Sequence

import numpy as np
from scipy import fft as sp_fft
from scipy import signal as sp_signal

from .._errors import ValidationError
from ..types import SampledSignal, WaveformConfig
from .transmitters import pulse_matrix

__all__ = ["papr", "psd", "time_profile", "evm_db", "pulse_leakage"]


def _as_array(signal) -> np.ndarray:
    if isinstance(signal, SampledSignal):
        return signal.samples
    return np.asarray(signal, dtype=np.complex128)


def papr(signal) -> float:
    """Peak-to-average power ratio in dB."""
    x = _as_array(signal)
    if x.size == 0:
        raise ValidationError("signal is empty", name="PAPR")
    power = np.abs(x) ** 2
    mean = power.mean()
    if mean == 0:
        raise ValidationError("signal is zero", name="PAPR")
    return float(10 * np.log10(power.max() / mean))


def psd(symbols: Sequence[SampledSignal] | np.ndarray, nperseg: int | None = None):
    """
    Averaged periodogram of back-to-back symbols, in dB relative to its peak.

    Segments are one symbol long with 50% overlap and no analysis window.

    Returns
    -------
    (np.ndarray, np.ndarray)
        Frequencies in cycles per sample (ascending, DC in the middle) and the
        normalized density.
    """
    rows = np.array([_as_array(s) for s in symbols])
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise ValidationError("need at least one symbol", name="PSD")
    if nperseg is None:
        nperseg = rows.shape[1]
    freqs, pxx = sp_signal.welch(
        rows.reshape(-1),
        fs=1.0,
        window="boxcar",
        nperseg=nperseg,
        noverlap=nperseg // 2,
        return_onesided=False,
        detrend=False,
    )
    freqs = sp_fft.fftshift(freqs)
    pxx = sp_fft.fftshift(pxx)
    with np.errstate(divide="ignore"):
        return freqs, 10 * np.log10(pxx / pxx.max())


def time_profile(symbols: Sequence[SampledSignal] | np.ndarray) -> np.ndarray:
    """Per-sample RMS amplitude over symbols, in dB relative to its peak."""
    rows = np.array([_as_array(s) for s in symbols])
    rms = np.sqrt(np.mean(np.abs(rows) ** 2, axis=0))
    with np.errstate(divide="ignore"):
        return 20 * np.log10(rms / rms.max())


def evm_db(received, reference) -> float:
    """Error vector magnitude in dB."""
    rx = _as_array(received)
    ref = _as_array(reference)
    err = np.sum(np.abs(rx - ref) ** 2)
    with np.errstate(divide="ignore"):
        return float(10 * np.log10(err / np.sum(np.abs(ref) ** 2)))


def pulse_leakage(cfg: WaveformConfig, pad: int = 8) -> np.ndarray:
    """
    Fraction of each sampled pulse's power above ``0.5 / v`` cycles per sample.

    Pulses are zero padded to ``pad`` times the next power of two of the
    symbol length before the transform.
    """
    rows = pulse_matrix(cfg)
    n_fft = pad << (rows.shape[1] - 1).bit_length()
    power = np.abs(sp_fft.fft(rows, n_fft, axis=-1)) ** 2
    outside = np.abs(sp_fft.fftfreq(n_fft)) > 0.5 / cfg.v
    return power[:, outside].sum(axis=-1) / power.sum(axis=-1)
