"""Monte Carlo measurements behind the ``measure`` and ``ber`` commands."""

from __future__ import annotations
import math
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from .._errors import ValidationError
from ..channel import compose_grid, draw_taps, rng_for
from ..phy import Scheme, WarpedScheme, papr, psd, pulse_leakage, time_profile
from ..types import LinkScenario, SampledSignal

MIN_BITS = 10_000

_METRICS: dict[str, Callable[..., pd.DataFrame]] = {}


def register_metric(name: str):
    def _register(func):
        _METRICS[name] = func
        return func

    return _register


def metric_names() -> list[str]:
    return list(_METRICS)


def measure(
    metric: str,
    schemes: Sequence[Scheme],
    labels: Sequence[str],
    n_trials: int,
    seed: int,
) -> pd.DataFrame:
    """Table of ``metric`` for every scheme."""
    func = _METRICS.get(metric)
    if func is None:
        raise ValueError(f"No metric named {metric}")
    if n_trials < 1:
        raise ValidationError(f"trials must be positive, got {n_trials}", name="measurement")
    frames = [func(scheme, label, n_trials, seed) for scheme, label in zip(schemes, labels)]
    frames = [f for f in frames if f is not None]
    if not frames:
        raise ValidationError(f"no waveform supports the {metric!r} metric", name="measurement")
    return pd.concat(frames, ignore_index=True)


def random_symbols(scheme: Scheme, n_trials: int, seed: int) -> list[SampledSignal]:
    """Random-data symbols, one generator sub-stream per trial."""
    return [
        scheme.random_symbol(rng_for(seed, "victim_data", trial)) for trial in range(n_trials)
    ]


@register_metric("psd")
def _psd(scheme: Scheme, label: str, n_trials: int, seed: int) -> pd.DataFrame:
    symbols = [scheme.slot(s) for s in random_symbols(scheme, n_trials, seed)]
    freqs, density = psd(symbols)
    return pd.DataFrame(
        {
            "waveform": label,
            "freq": freqs,
            "band_edge_ratio": freqs / scheme.band_edge,
            "psd_db": density,
        }
    )


@register_metric("timeprofile")
def _time_profile(scheme: Scheme, label: str, n_trials: int, seed: int) -> pd.DataFrame:
    symbols = [scheme.slot(s) for s in random_symbols(scheme, n_trials, seed)]
    rms = time_profile(symbols)
    return pd.DataFrame({"waveform": label, "sample": np.arange(rms.size), "rms_db": rms})


@register_metric("papr")
def _papr(scheme: Scheme, label: str, n_trials: int, seed: int) -> pd.DataFrame:
    values = np.array([papr(s) for s in random_symbols(scheme, n_trials, seed)])
    return pd.DataFrame(
        {
            "waveform": [label],
            "trials": [n_trials],
            "median_db": [float(np.median(values))],
            "p99_db": [float(np.percentile(values, 99))],
        }
    )


@register_metric("leakage")
def _leakage(scheme: Scheme, label: str, n_trials: int, seed: int) -> pd.DataFrame | None:
    if not isinstance(scheme, WarpedScheme):
        return None
    cfg = scheme.config
    return pd.DataFrame(
        {
            "waveform": label,
            "pulse": np.arange(cfg.n_pulses),
            "alpha_left": [p[0] for p in cfg.profile.pairs],
            "alpha_right": [p[1] for p in cfg.profile.pairs],
            "leakage": pulse_leakage(cfg),
        }
    )


def ber_point(scheme: Scheme, scenario: LinkScenario) -> tuple[int, int]:
    """
    Bit errors and transmitted bits of one sweep point.

    Every trial sends one symbol of random data through ``compose_grid`` and
    demodulates it with the exact victim channel.
    """
    if scenario.n_bits < MIN_BITS:
        raise ValidationError(
            f"n_bits must be at least {MIN_BITS}, got {scenario.n_bits}", name="scenario"
        )
    per_symbol = scheme.bits_per_symbol
    n_trials = math.ceil(scenario.n_bits / per_symbol)
    interfered = scenario.time_interferer or scenario.freq_interferer
    make_interferer = scheme.random_slot if interfered else None
    errors = 0
    for trial in range(n_trials):
        bits = scheme.random_bits(rng_for(scenario.seed, "victim_data", trial))
        victim = scheme.slot(scheme.modulate(bits))
        received = compose_grid(victim, scenario, make_interferer, trial=trial, window=scheme.window)
        taps = draw_taps(scenario, "victim_channel", trial)
        errors += int(np.count_nonzero(scheme.demodulate(received, taps) != bits))
    return errors, n_trials * per_symbol
