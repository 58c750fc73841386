from __future__ import annotations
import warnings
from typing import TYPE_CHECKING

import numpy as np

from ._errors import DomainError
from .types import PulseSpec, SampledSignal, WarpingMap

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

__all__ = [
    "rc_time",
    "asym_rc_time",
    "rc_freq_prototype",
    "warped_pulse_samples",
    "warped_pulse_spectrum",
]

SINGULAR_TOL = 1e-9


def _scalar_or_array(out: np.ndarray):
    if out.ndim == 0:
        return float(out)
    return out


def _rc(alpha: float, x: np.ndarray) -> np.ndarray:
    if alpha == 0:
        return np.sinc(x)
    arg = 2.0 * alpha * x
    den = 1.0 - arg * arg
    singular = np.abs(den) < SINGULAR_TOL
    safe = np.where(singular, 1.0, den)
    out = np.sinc(x) * np.cos(np.pi * alpha * x) / safe
    if np.any(singular):
        limit = np.pi / 4 * np.sinc(1.0 / (2.0 * alpha))
        out = np.where(singular, limit, out)
    return out


def rc_time(alpha: float, x: ArrayLike):
    """Raised-cosine pulse with roll-off ``alpha`` at ``x`` symbol durations."""
    return _scalar_or_array(_rc(float(alpha), np.asarray(x, dtype=np.float64)))


def asym_rc_time(spec: PulseSpec, x: ArrayLike):
    """
    Asymmetric raised-cosine pulse.

    The negative-x side uses ``spec.alpha_left`` and the positive-x side uses
    ``spec.alpha_right``. Each side applies its own singular-point limit.
    """
    x = np.asarray(x, dtype=np.float64)
    if spec.is_symmetric:
        return _scalar_or_array(_rc(spec.alpha_left, x))
    out = np.where(x < 0, _rc(spec.alpha_left, x), _rc(spec.alpha_right, x))
    return _scalar_or_array(out)


def rc_freq_prototype(alpha: float, nu: ArrayLike):
    """Raised-cosine spectrum at normalized frequency ``nu``."""
    nu = np.abs(np.asarray(nu, dtype=np.float64))
    if alpha == 0:
        warnings.warn(
            "alpha=0 gives a rectangular prototype with an empty transition band.",
            RuntimeWarning,
            stacklevel=2,
        )
        out = np.where(nu < 0.5, 1.0, np.where(nu == 0.5, 0.5, 0.0))
        return _scalar_or_array(out)
    lo = (1.0 - alpha) / 2
    hi = (1.0 + alpha) / 2
    rolloff = 0.5 * (1.0 + np.cos(np.pi / alpha * (nu - lo)))
    out = np.where(nu <= lo, 1.0, np.where(nu <= hi, rolloff, 0.0))
    return _scalar_or_array(out)


def warped_pulse_samples(
    spec: PulseSpec,
    warp: WarpingMap,
    n: int,
    length: int | None = None,
    v: int = 1,
) -> SampledSignal:
    """
    Samples of the pulse peaking at warped index ``n``.

    Sample ``k`` sits at position ``warp.anchors[0] + k``. Samples past the map
    domain are zero. The pulse keeps unit peak amplitude whatever the local
    warp slope is.
    """
    if n not in warp.indices:
        raise DomainError(f"index {n} has no anchor", name="pulse index")
    if length is None:
        length = warp.length
    start = warp.anchors[0]
    pos = np.arange(start, start + min(length, warp.length), dtype=np.float64)
    out = np.zeros(length, dtype=np.complex128)
    out[: pos.size] = asym_rc_time(spec, warp(pos) - n)
    center = (warp.anchors[0] + warp.anchors[-1]) // 2 - start
    return SampledSignal(out, v=v, origin=center)


def warped_pulse_spectrum(
    spec: PulseSpec, warp: WarpingMap, n: int, fft_len: int
) -> np.ndarray:
    """DFT of the warped pulse zero-padded to ``fft_len`` samples."""
    from .spectral import fft_radix2

    if fft_len < warp.length:
        raise ValueError(
            f"fft_len={fft_len} is shorter than the pulse ({warp.length} samples)."
        )
    samples = warped_pulse_samples(spec, warp, n, length=fft_len)
    spectrum, _ = fft_radix2(samples.samples)
    return spectrum
