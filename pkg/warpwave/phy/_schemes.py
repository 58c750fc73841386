from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Callable, ClassVar

import numpy as np

from .._config import check_keys, from_dict, register_decoder, to_dict
from .._errors import MonotonicityError, OversamplingTooLowError, ValidationError
from ..types import (
    QAM_ORDERS,
    RolloffProfile,
    SampledSignal,
    WarpDerivativeParams,
    WarpingMap,
    WaveformConfig,
)
from . import baselines
from .qam import bits_per_symbol, qam_demap, qam_map
from .receiver import rx_symbols
from .transmitters import tx_filterbank, tx_split

logger = logging.getLogger(__name__)

_SCHEME_BUILDERS: dict[str, type[Scheme]] = {}
_PRESETS: dict[str, Callable[[], Scheme]] = {}


class Scheme(ABC):
    """
    A waveform with a transmitter and a perfect-CSI receiver.

    Subclasses are frozen dataclasses with ``name`` and ``qam_order``.
    """

    kind: ClassVar[str]
    name: str
    qam_order: int

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}<{self.name!r}, {self.qam_order}-QAM>"

    @property
    @abstractmethod
    def n_data(self) -> int:
        """Data symbols per waveform symbol."""

    @property
    @abstractmethod
    def length(self) -> int:
        """Samples of one transmitted symbol."""

    @property
    @abstractmethod
    def window(self) -> int:
        """Samples of one receiver window (symbol slot)."""

    @property
    @abstractmethod
    def band_edge(self) -> float:
        """Nominal half bandwidth in cycles per sample."""

    @abstractmethod
    def transmit(self, data) -> SampledSignal:
        """Modulate ``n_data`` complex symbols."""

    @abstractmethod
    def receive(self, received: SampledSignal, taps) -> np.ndarray:
        """Equalized data symbols of one received window."""

    @property
    def lead(self) -> int:
        """Zero samples ahead of the symbol in its slot."""
        return 0

    @property
    def bits_per_symbol(self) -> int:
        """Bits carried by one waveform symbol."""
        return self.n_data * bits_per_symbol(self.qam_order)

    def modulate(self, bits) -> SampledSignal:
        return self.transmit(qam_map(bits, self.qam_order))

    def demodulate(self, received: SampledSignal, taps=(1.0,)) -> np.ndarray:
        return qam_demap(self.receive(received, taps), self.qam_order)

    def random_bits(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, 2, self.bits_per_symbol, dtype=np.uint8)

    def random_symbol(self, rng: np.random.Generator) -> SampledSignal:
        """Symbol carrying random data."""
        return self.modulate(self.random_bits(rng))

    def slot(self, signal: SampledSignal) -> SampledSignal:
        """``signal`` in one receiver window, starting ``lead`` samples in."""
        out = np.zeros(self.window, dtype=np.complex128)
        n = min(len(signal), self.window - self.lead)
        out[self.lead : self.lead + n] = signal.samples[:n]
        return replace(signal, samples=out, origin=self.lead)

    def random_slot(self, rng: np.random.Generator) -> SampledSignal:
        """Slot carrying random data."""
        return self.slot(self.random_symbol(rng))

    def with_options(self, **kwargs) -> Scheme:
        """Copy with another ``name`` or ``qam_order``."""
        check_keys(kwargs, ["name", "qam_order"], name="scheme options")
        return replace(self, **kwargs)


def register_scheme(
    builder: type[Scheme] | None = None,
    kind: str | None = None,
):
    def _register(cls):
        nonlocal kind
        if kind is None:
            kind = cls.__name__
        cls.kind = kind
        _SCHEME_BUILDERS[kind] = cls
        return cls

    if builder is None:
        return _register
    else:
        return _register(builder)


def register_preset(
    builder: Callable[[], Scheme] | None = None,
    name: str | None = None,
):
    def _register(func):
        nonlocal name
        if name is None:
            name = func.__name__
        _PRESETS[name] = lru_cache(maxsize=1)(func)
        return func

    if builder is None:
        return _register
    else:
        return _register(builder)


def get_scheme(kind: str, **kwargs) -> Scheme:
    """Build a scheme of registered ``kind``."""
    cls = _SCHEME_BUILDERS.get(kind)
    if cls is None:
        raise ValueError(f"No scheme kind named {kind}")
    return cls(**kwargs)


def preset(name: str, **options) -> Scheme:
    """A named waveform, optionally with another ``name`` or ``qam_order``."""
    builder = _PRESETS.get(name)
    if builder is None:
        raise ValueError(f"No preset named {name}")
    scheme = builder()
    if options:
        scheme = scheme.with_options(**options)
    return scheme


def preset_names() -> list[str]:
    return list(_PRESETS)


@register_scheme(kind="warped")
@dataclass(frozen=True, eq=False)
class WarpedScheme(Scheme):
    """Warped waveform, optionally with the split transmitter."""

    config: WaveformConfig
    split_edges: int | None = None
    split_zeros: int = 0

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def qam_order(self) -> int:
        return self.config.qam_order

    @property
    def n_data(self) -> int:
        return self.config.n_pulses

    @property
    def length(self) -> int:
        return self.config.length

    @property
    def window(self) -> int:
        return self.config.window_length

    @property
    def band_edge(self) -> float:
        return 0.5 / self.config.v

    @property
    def lead(self) -> int:
        # centered: the guard samples split between head and tail
        return (self.window - self.length) // 2

    def transmit(self, data) -> SampledSignal:
        if self.split_edges is None:
            return tx_filterbank(data, self.config)
        return tx_split(data, self.config, self.split_edges, self.split_zeros)

    def receive(self, received: SampledSignal, taps) -> np.ndarray:
        window = received.padded(self.window)
        if received.origin:
            window = window.with_samples(np.roll(window.samples, -received.origin))
        return rx_symbols(window, self.config, taps)

    def with_options(self, **kwargs) -> Scheme:
        check_keys(kwargs, ["name", "qam_order"], name="scheme options")
        return replace(self, config=replace(self.config, **kwargs))


@register_scheme(kind="zt-dfts-ofdm")
@dataclass(frozen=True)
class ZTScheme(Scheme):
    """Zero-tail DFT-s-OFDM."""

    dft_size: int = 16
    ifft_size: int = 128
    z_h: int = 2
    z_t: int = 2
    qam_order: int = 512
    name: str = "zt"

    def __post_init__(self):
        _check_order(self.qam_order)

    @property
    def n_data(self) -> int:
        return self.dft_size - self.z_h - self.z_t

    @property
    def length(self) -> int:
        return self.ifft_size

    @property
    def window(self) -> int:
        return self.ifft_size

    @property
    def band_edge(self) -> float:
        return self.dft_size / (2 * self.ifft_size)

    def transmit(self, data) -> SampledSignal:
        return baselines.tx_zt_dfts_ofdm(data, self.dft_size, self.ifft_size, self.z_h, self.z_t)

    def receive(self, received: SampledSignal, taps) -> np.ndarray:
        return baselines.rx_zt_dfts_ofdm(
            received.padded(self.window), taps, self.dft_size, self.ifft_size, self.z_h, self.z_t
        )


@register_scheme(kind="cp-dfts-ofdm")
@dataclass(frozen=True)
class CPDFTsScheme(Scheme):
    """DFT-s-OFDM with a cyclic prefix."""

    dft_size: int = 12
    ifft_size: int = 104
    cp: int = 24
    qam_order: int = 512
    name: str = "cp-dfts"

    def __post_init__(self):
        _check_order(self.qam_order)

    @property
    def n_data(self) -> int:
        return self.dft_size

    @property
    def length(self) -> int:
        return self.ifft_size + self.cp

    @property
    def window(self) -> int:
        return self.length

    @property
    def band_edge(self) -> float:
        return self.dft_size / (2 * self.ifft_size)

    def transmit(self, data) -> SampledSignal:
        return baselines.tx_cp_dfts_ofdm(data, self.dft_size, self.ifft_size, self.cp)

    def receive(self, received: SampledSignal, taps) -> np.ndarray:
        return baselines.rx_cp_dfts_ofdm(
            received.padded(self.window), taps, self.dft_size, self.ifft_size, self.cp
        )


@register_scheme(kind="cp-ofdm")
@dataclass(frozen=True)
class CPOFDMScheme(Scheme):
    """Plain OFDM with a cyclic prefix."""

    n_sub: int = 12
    ifft_size: int = 104
    cp: int = 24
    qam_order: int = 512
    name: str = "cp-ofdm"

    def __post_init__(self):
        _check_order(self.qam_order)

    @property
    def n_data(self) -> int:
        return self.n_sub

    @property
    def length(self) -> int:
        return self.ifft_size + self.cp

    @property
    def window(self) -> int:
        return self.length

    @property
    def band_edge(self) -> float:
        return self.n_sub / (2 * self.ifft_size)

    def transmit(self, data) -> SampledSignal:
        return baselines.tx_cp_ofdm(data, self.n_sub, self.ifft_size, self.cp)

    def receive(self, received: SampledSignal, taps) -> np.ndarray:
        return baselines.rx_cp_ofdm(
            received.padded(self.window), taps, self.n_sub, self.ifft_size, self.cp
        )


def _check_order(order: int) -> None:
    if order not in QAM_ORDERS:
        raise ValidationError(f"qam_order must be one of {QAM_ORDERS}, got {order}", name="scheme")


@to_dict.register
def _(obj: Scheme) -> dict:
    data = asdict(obj)
    data["type"] = "scheme"
    data["kind"] = obj.kind
    return data


@to_dict.register
def _(obj: WarpedScheme) -> dict:
    config = to_dict(obj.config)
    config.pop("type")
    return {
        "type": "scheme",
        "kind": obj.kind,
        "config": config,
        "split_edges": obj.split_edges,
        "split_zeros": obj.split_zeros,
    }


@register_decoder(type_name="scheme")
def scheme_from_dict(data: dict) -> Scheme:
    """Scheme from ``{preset: NAME, ...}`` or ``{kind: KIND, ...}``."""
    data = dict(data)
    data.pop("type", None)
    if "preset" in data:
        return preset(data.pop("preset"), **data)
    kind = data.pop("kind", None)
    if kind is None:
        raise ValidationError("waveform needs 'preset' or 'kind'", name="waveform")
    if kind == "warped":
        check_keys(data, ["config", "split_edges", "split_zeros"], ["config"], "warped waveform")
        data["config"] = from_dict("WaveformConfig", data["config"])
        return WarpedScheme(**data)
    cls = _SCHEME_BUILDERS.get(kind)
    if cls is None:
        raise ValidationError(f"unknown waveform kind {kind!r}", name="waveform")
    check_keys(data, cls.__dataclass_fields__, name=kind)
    return cls(**data)


# Designs of the 12-pulse comparison symbols.
DESIGN_OUTER = (1.0, 0.48, 0.34, 0.27, 0.17, 0.08)
DESIGN_INNER = (0.3, 0.1, 0.08, 0.08, 0.17, 0.08)
DESIGN_PARAMS = WarpDerivativeParams.symmetric(0.49, 0.98, 5.3, 1.8)


def warped_config(
    profile: RolloffProfile,
    params: WarpDerivativeParams,
    *,
    name: str,
    z_h: int = 1,
    z_t: int = 1,
    qam_order: int = 512,
    window: int = 128,
    max_v: int = 16,
) -> WaveformConfig:
    """Warped waveform at the highest oversampling that fits in ``window``."""
    from ..warpdesign import fit_spline

    for v in range(max_v, 0, -1):
        try:
            warp = fit_spline(params, v, profile.n_pulses, z_h, z_t)
        except (OversamplingTooLowError, MonotonicityError) as e:
            logger.debug("v=%d rejected: %s", v, e)
            continue
        if warp.length <= window:
            return WaveformConfig(
                profile.n_pulses, z_h, z_t, v, qam_order, profile, warp,
                name=name, window=window,
            )
    raise ValidationError(f"no oversampling fits {window} samples", name=name)


@register_preset(name="warped-sym")
def _warped_sym() -> Scheme:
    profile = RolloffProfile.mirrored(DESIGN_OUTER)
    return WarpedScheme(warped_config(profile, DESIGN_PARAMS, name="warped-sym"))


@register_preset(name="warped-asym")
def _warped_asym() -> Scheme:
    profile = RolloffProfile.mirrored(DESIGN_OUTER, DESIGN_INNER)
    return WarpedScheme(warped_config(profile, DESIGN_PARAMS, name="warped-asym"))


def _zt(z: int, dft_size: int) -> Callable[[], Scheme]:
    def _build():
        return ZTScheme(dft_size, 128, z, z, name=f"zt-{z}")

    return _build


register_preset(_zt(2, 16), name="zt-2")
register_preset(_zt(3, 18), name="zt-3")
register_preset(_zt(4, 20), name="zt-4")
register_preset(lambda: CPDFTsScheme(), name="cp-dfts")
register_preset(lambda: CPOFDMScheme(), name="cp-ofdm")

# 76-pulse design with the split transmitter
SPLIT_ANCHORS = (
    (1, 12, 23, 33, 41, 49, 56, 63)
    + tuple(range(69, 472, 6))
    + (478, 485, 492, 501, 511, 522)
)
SPLIT_OUTER = (1.0, 0.48, 0.34, 0.27, 0.21, 0.17, 0.12, 0.09)
SPLIT_INNER = (0.22, 0.15, 0.09, 0.09, 0.09, 0.09, 0.09, 0.09)


@register_preset(name="split-76")
def _split_76() -> Scheme:
    profile = RolloffProfile.mirrored(SPLIT_OUTER, SPLIT_INNER, n_pulses=76)
    warp = WarpingMap(SPLIT_ANCHORS, first_index=1)
    cfg = WaveformConfig(76, 3, 3, 6, 512, profile, warp, name="split-76")
    return WarpedScheme(cfg, split_edges=20, split_zeros=14)


@register_preset(name="zt-522-3")
def _zt_522_3() -> Scheme:
    return ZTScheme(82, 522, 3, 3, name="zt-522-3")


@register_preset(name="zt-522-4")
def _zt_522_4() -> Scheme:
    return ZTScheme(84, 522, 4, 4, name="zt-522-4")
