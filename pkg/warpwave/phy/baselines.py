"""DFT-spread and plain OFDM reference transceivers."""

from __future__ import annotations

import numpy as np
from scipy import fft as sp_fft

from .._errors import ValidationError, ZeroForcingError
from ..types import SampledSignal

__all__ = [
    "centered_bins",
    "channel_response",
    "tx_zt_dfts_ofdm",
    "rx_zt_dfts_ofdm",
    "tx_cp_dfts_ofdm",
    "rx_cp_dfts_ofdm",
    "tx_cp_ofdm",
    "rx_cp_ofdm",
]

ZF_THRESHOLD = 1e-6


def centered_bins(n: int, size: int) -> np.ndarray:
    """Transform bins of ``n`` contiguous subcarriers centered on DC."""
    if n > size:
        raise ValidationError(f"{n} subcarriers do not fit in {size} bins", name="allocation")
    k = np.arange(n)
    return np.where(k < (n + 1) // 2, k, k - n) % size


def channel_response(taps, size: int, bins: np.ndarray) -> np.ndarray:
    """Channel response at ``bins``; raises on bins too weak for zero forcing."""
    h = sp_fft.fft(np.asarray(taps, dtype=np.complex128), size)[bins]
    mag = np.abs(h)
    weak = np.flatnonzero(mag < ZF_THRESHOLD)
    if weak.size:
        raise ZeroForcingError(int(bins[weak[0]]), float(mag[weak[0]]))
    return h


def _check(data, n: int) -> np.ndarray:
    data = np.asarray(data, dtype=np.complex128)
    if data.ndim != 1 or data.size != n:
        raise ValidationError(f"expected {n} data symbols, got shape {data.shape}", name="data")
    return data


def _spread(data: np.ndarray, dft_size: int, ifft_size: int) -> np.ndarray:
    bins = centered_bins(dft_size, ifft_size)
    spectrum = np.zeros(ifft_size, dtype=np.complex128)
    spectrum[bins] = sp_fft.fft(data)
    return sp_fft.ifft(spectrum) * (ifft_size / dft_size)


def _despread(samples: np.ndarray, taps, dft_size: int, ifft_size: int) -> np.ndarray:
    bins = centered_bins(dft_size, ifft_size)
    y = sp_fft.fft(samples[:ifft_size])[bins]
    y = y / channel_response(taps, ifft_size, bins)
    return sp_fft.ifft(y * (dft_size / ifft_size))


def tx_zt_dfts_ofdm(data, dft_size: int, ifft_size: int, z_h: int, z_t: int) -> SampledSignal:
    """Zero-tail DFT-s-OFDM: data framed by zero head and tail, no cyclic prefix."""
    n = dft_size - z_h - z_t
    if n < 1:
        raise ValidationError(f"no data left in a {dft_size} DFT with guards {z_h}/{z_t}", name="ZT-DFT-s-OFDM")
    data = _check(data, n)
    framed = np.concatenate([np.zeros(z_h), data, np.zeros(z_t)])
    return SampledSignal(_spread(framed, dft_size, ifft_size), v=ifft_size // dft_size)


def rx_zt_dfts_ofdm(received: SampledSignal, taps, dft_size: int, ifft_size: int, z_h: int, z_t: int) -> np.ndarray:
    chips = _despread(received.samples, taps, dft_size, ifft_size)
    return chips[z_h : dft_size - z_t]


def tx_cp_dfts_ofdm(data, dft_size: int, ifft_size: int, cp: int) -> SampledSignal:
    """DFT-s-OFDM with a cyclic prefix of ``cp`` samples."""
    data = _check(data, dft_size)
    body = _spread(data, dft_size, ifft_size)
    return SampledSignal(np.concatenate([body[ifft_size - cp :], body]), v=ifft_size // dft_size)


def rx_cp_dfts_ofdm(received: SampledSignal, taps, dft_size: int, ifft_size: int, cp: int) -> np.ndarray:
    return _despread(received.samples[cp:], taps, dft_size, ifft_size)


def tx_cp_ofdm(data, n_sub: int, ifft_size: int, cp: int) -> SampledSignal:
    """CP-OFDM with ``n_sub`` centered subcarriers."""
    data = _check(data, n_sub)
    spectrum = np.zeros(ifft_size, dtype=np.complex128)
    spectrum[centered_bins(n_sub, ifft_size)] = data
    body = sp_fft.ifft(spectrum) * (ifft_size / np.sqrt(n_sub))
    return SampledSignal(np.concatenate([body[ifft_size - cp :], body]), v=ifft_size // n_sub)


def rx_cp_ofdm(received: SampledSignal, taps, n_sub: int, ifft_size: int, cp: int) -> np.ndarray:
    bins = centered_bins(n_sub, ifft_size)
    y = sp_fft.fft(received.samples[cp : cp + ifft_size])[bins]
    return y / channel_response(taps, ifft_size, bins) * (np.sqrt(n_sub) / ifft_size)
