from __future__ import annotations
import logging
import math
from typing import Callable

import numpy as np

from ._errors import ValidationError
from .types import LinkScenario, SampledSignal

logger = logging.getLogger(__name__)

__all__ = [
    "STREAMS",
    "rng_for",
    "exp_pdp_taps",
    "draw_taps",
    "apply_channel",
    "awgn",
    "compose_grid",
]

# independent random sub-streams of one scenario seed
STREAMS = {
    "victim_data": 0,
    "victim_channel": 1,
    "noise": 2,
    "prev_data": 3,
    "prev_channel": 4,
    "next_data": 5,
    "next_channel": 6,
    "freq_data": 7,
    "freq_channel": 8,
}


def rng_for(seed: int, stream: str | int, trial: int = 0) -> np.random.Generator:
    """Random generator of one sub-stream of ``seed``."""
    stream_id = STREAMS[stream] if isinstance(stream, str) else int(stream)
    return np.random.default_rng([int(seed), stream_id, int(trial)])


def exp_pdp_taps(
    tau_rms: float,
    n_taps: int | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """
    Rayleigh taps of an exponential power delay profile.

    Tap ``k`` has mean power proportional to ``exp(-k / tau_rms)`` and the
    profile is normalized to unit total mean power.
    """
    if tau_rms < 0:
        raise ValidationError(f"tau_rms must be >= 0, got {tau_rms}", name="channel")
    if tau_rms == 0:
        return np.ones(1, dtype=np.complex128)
    if n_taps is None:
        n_taps = int(math.ceil(8 * tau_rms)) + 1
    if n_taps < 1:
        raise ValidationError(f"n_taps must be >= 1, got {n_taps}", name="channel")
    rng = rng or np.random.default_rng()
    pdp = np.exp(-np.arange(n_taps) / tau_rms)
    pdp /= pdp.sum()
    gains = (rng.standard_normal(n_taps) + 1j * rng.standard_normal(n_taps)) / np.sqrt(2)
    return gains * np.sqrt(pdp)


def draw_taps(scenario: LinkScenario, stream: str, trial: int = 0) -> np.ndarray:
    """Channel taps of one component of ``scenario`` in trial ``trial``."""
    return exp_pdp_taps(
        scenario.tau_rms, scenario.taps, rng_for(scenario.seed, stream, trial)
    )


def apply_channel(signal: SampledSignal, taps: np.ndarray) -> SampledSignal:
    """Linear convolution with taps spaced at the sample period."""
    taps = np.asarray(taps, dtype=np.complex128)
    if taps.size == 0:
        raise ValidationError("taps must be non-empty", name="channel")
    return signal.with_samples(np.convolve(signal.samples, taps))


def awgn(
    signal: SampledSignal,
    snr_db: float,
    rng: np.random.Generator,
    reference_power: float | None = None,
) -> SampledSignal:
    """Add complex white Gaussian noise at ``snr_db`` below the signal power."""
    if math.isinf(snr_db) and snr_db > 0:
        return signal
    power = signal.power if reference_power is None else reference_power
    if power <= 0:
        raise ValidationError("cannot set an SNR on a zero signal", name="noise")
    var = power / 10 ** (snr_db / 10)
    n = len(signal)
    noise = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * np.sqrt(var / 2)
    return signal.with_samples(signal.samples + noise)


def _place(samples: np.ndarray, start: int, window: int) -> np.ndarray:
    """Samples of a stream starting at ``start`` that fall in ``[0, window)``."""
    out = np.zeros(window, dtype=np.complex128)
    lo = max(start, 0)
    hi = min(start + samples.size, window)
    if hi > lo:
        out[lo:hi] = samples[lo - start : hi - start]
    return out


def _slot_power(samples: np.ndarray, window: int) -> float:
    return float(np.sum(np.abs(samples[:window]) ** 2) / window)


def compose_grid(
    victim: SampledSignal,
    scenario: LinkScenario,
    make_interferer: Callable[[np.random.Generator], SampledSignal] | None = None,
    *,
    trial: int = 0,
    window: int | None = None,
) -> SampledSignal:
    """
    Received window of the victim symbol with interferers, channels and noise.

    Every component passes its own channel draw. The time interferers are the
    previous symbol ending ``time_offset`` samples into the window and the next
    symbol starting ``time_offset`` samples before the window end. The frequency
    interferer shares the victim slot, shifted by ``freq_offset_bins`` bins of
    the window. Interferer powers are set relative to the victim slot power.
    """
    window = window or len(victim)
    if len(victim) > window:
        raise ValidationError(
            f"victim has {len(victim)} samples for a {window} sample window",
            name="grid",
        )
    if (scenario.time_interferer or scenario.freq_interferer) and make_interferer is None:
        raise ValidationError("interferers need a symbol generator", name="grid")
    ref = _slot_power(victim.samples, window)
    seed = scenario.seed

    received = apply_channel(victim, draw_taps(scenario, "victim_channel", trial))
    total = _place(received.samples, 0, window)

    def _interferer(data_stream: str, channel_stream: str, p_db: float, shift: int = 0):
        sym = make_interferer(rng_for(seed, data_stream, trial)).padded(window)
        samples = sym.samples
        if shift:
            samples = samples * np.exp(2j * np.pi * shift * np.arange(window) / window)
        scale = math.sqrt(ref * 10 ** (p_db / 10) / _slot_power(samples, window))
        taps = draw_taps(scenario, channel_stream, trial)
        return np.convolve(samples * scale, taps)

    if scenario.time_interferer:
        offset = scenario.time_offset
        span = window + scenario.taps - 1
        if offset <= -(scenario.taps - 1) or offset >= window:
            logger.warning(
                "time offset %d leaves the time interferers outside the window", offset
            )
        else:
            prev = _interferer("prev_data", "prev_channel", scenario.p_imb_time_db)
            nxt = _interferer("next_data", "next_channel", scenario.p_imb_time_db)
            total += _place(prev[:span], offset - window, window)
            total += _place(nxt[:span], window - offset, window)

    if scenario.freq_interferer:
        freq = _interferer(
            "freq_data", "freq_channel", scenario.p_imb_freq_db, scenario.freq_offset_bins
        )
        total += _place(freq, 0, window)

    out = SampledSignal(total, v=victim.v, origin=victim.origin)
    return awgn(out, scenario.snr_db, rng_for(seed, "noise", trial), reference_power=ref)
