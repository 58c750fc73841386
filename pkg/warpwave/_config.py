from __future__ import annotations
import dataclasses
import math
from functools import singledispatch
from typing import Any, Callable, Iterable

from ._errors import ErrorCollector, ValidationError
from .types import (
    LinkScenario,
    PulseSpec,
    RolloffProfile,
    WarpDerivativeParams,
    WarpingMap,
    WaveformConfig,
)

_DECODERS: dict[str, Callable[[dict], Any]] = {}

# section name -> decoder name
_SECTIONS = {
    "profile": "RolloffProfile",
    "warp_params": "WarpDerivativeParams",
    "warp": "WarpingMap",
    "config": "WaveformConfig",
    "scenario": "LinkScenario",
    "waveform": "scheme",
}


def register_decoder(
    decoder: Callable[[dict], Any] | None = None,
    type_name: str | None = None,
):
    def _register(func):
        nonlocal type_name
        if type_name is None:
            type_name = func.__name__
        _DECODERS[type_name] = func
        return func

    if decoder is None:
        return _register
    else:
        return _register(decoder)


def from_dict(type_name: str, data: dict) -> Any:
    """Build an object of registered type ``type_name`` from a plain dict."""
    if type_name == "scheme" and type_name not in _DECODERS:
        from .phy import _schemes  # noqa: F401  registers the scheme decoder
    decoder = _DECODERS.get(type_name)
    if decoder is None:
        raise ValueError(f"No config type named {type_name}")
    if not isinstance(data, dict):
        raise ValidationError(f"expected a mapping, got {type(data).__name__}", name=type_name)
    return decoder(data)


def from_document(doc: Any) -> Any:
    """
    Decode a loaded YAML document.

    A document with a ``type`` key is a single object. Otherwise each top-level
    key is a section decoded by its own type, ``waveforms`` is a list of
    waveform entries and ``options`` is passed through as is.
    """
    if not isinstance(doc, dict):
        raise ValidationError("config document must be a mapping", name="config file")
    if "type" in doc:
        data = dict(doc)
        return from_dict(data.pop("type"), data)
    errors = ErrorCollector("config file")
    out = {}
    for key, value in doc.items():
        if key in _SECTIONS:
            out[key] = from_dict(_SECTIONS[key], _untyped(value))
        elif key == "waveforms":
            out[key] = [from_dict("scheme", v) for v in value]
        elif key == "options":
            out[key] = dict(value or {})
        else:
            errors.add(f"unknown section {key!r}")
    errors.raise_if_any()
    return out


def _untyped(value: Any) -> Any:
    # saved objects carry their type name
    if isinstance(value, dict):
        return {k: v for k, v in value.items() if k != "type"}
    return value


def check_keys(
    data: dict, allowed: Iterable[str], required: Iterable[str] = (), name: str = ""
) -> None:
    """Raise a ValidationError listing unknown and missing keys."""
    allowed = set(allowed)
    errors = ErrorCollector(name)
    for key in data:
        errors.check(key in allowed, f"unknown key {key!r}")
    for key in required:
        errors.check(key in data, f"missing key {key!r}")
    errors.raise_if_any()


def _field_names(cls) -> list[str]:
    return [f.name for f in dataclasses.fields(cls) if f.init]


@singledispatch
def to_dict(obj: Any) -> Any:
    """Convert a warpwave object to plain YAML-safe data."""
    if isinstance(obj, dict):
        return {str(k): to_dict(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_dict(v) for v in obj]
    if isinstance(obj, float) and math.isnan(obj):
        raise ValidationError("NaN cannot be stored", name="config value")
    if hasattr(obj, "item"):
        # numpy scalar
        return obj.item()
    return obj


@to_dict.register
def _(obj: PulseSpec) -> dict:
    return {"type": "PulseSpec", "alpha_left": obj.alpha_left, "alpha_right": obj.alpha_right}


@to_dict.register
def _(obj: RolloffProfile) -> dict:
    return {"type": "RolloffProfile", "pairs": [list(p) for p in obj.pairs]}


@to_dict.register
def _(obj: WarpDerivativeParams) -> dict:
    out: dict[str, Any] = {"type": "WarpDerivativeParams"}
    for name in _field_names(WarpDerivativeParams):
        out[name] = getattr(obj, name)
    return out


@to_dict.register
def _(obj: WarpingMap) -> dict:
    return {
        "type": "WarpingMap",
        "anchors": list(obj.anchors),
        "first_index": obj.first_index,
    }


@to_dict.register
def _(obj: WaveformConfig) -> dict:
    out: dict[str, Any] = {"type": "WaveformConfig"}
    for name in _field_names(WaveformConfig):
        value = getattr(obj, name)
        if isinstance(value, (RolloffProfile, WarpingMap)):
            value = to_dict(value)
            value.pop("type")
        out[name] = value
    return out


@to_dict.register
def _(obj: LinkScenario) -> dict:
    out: dict[str, Any] = {"type": "LinkScenario"}
    for name in _field_names(LinkScenario):
        out[name] = getattr(obj, name)
    return out


@register_decoder(type_name="PulseSpec")
def _decode_pulse_spec(data: dict) -> PulseSpec:
    check_keys(data, ["alpha_left", "alpha_right"], ["alpha_left", "alpha_right"], "PulseSpec")
    return PulseSpec(**data)


@register_decoder(type_name="RolloffProfile")
def _decode_profile(data: dict) -> RolloffProfile:
    check_keys(data, ["pairs", "outer", "inner", "n_pulses"], name="RolloffProfile")
    if "pairs" in data:
        return RolloffProfile(tuple(tuple(p) for p in data["pairs"]))
    if "outer" not in data:
        raise ValidationError("either 'pairs' or 'outer' is needed", name="RolloffProfile")
    return RolloffProfile.mirrored(
        data["outer"], data.get("inner"), data.get("n_pulses")
    )


@register_decoder(type_name="WarpDerivativeParams")
def _decode_params(data: dict) -> WarpDerivativeParams:
    names = _field_names(WarpDerivativeParams)
    if "t_edge" in data:
        check_keys(
            data, ["s_out", "s_in", "t_edge", "t_cap"], ["s_out", "s_in", "t_edge", "t_cap"],
            "WarpDerivativeParams",
        )
        return WarpDerivativeParams.symmetric(**data)
    check_keys(data, names, names, "WarpDerivativeParams")
    return WarpDerivativeParams(**data)


@register_decoder(type_name="WarpingMap")
def _decode_map(data: dict) -> WarpingMap:
    check_keys(data, ["anchors", "first_index"], ["anchors"], "WarpingMap")
    return WarpingMap(tuple(data["anchors"]), first_index=data.get("first_index", 0))


@register_decoder(type_name="WaveformConfig")
def _decode_waveform(data: dict) -> WaveformConfig:
    names = _field_names(WaveformConfig)
    required = ["n_pulses", "z_h", "z_t", "v", "qam_order", "profile", "warp"]
    check_keys(data, names, required, "WaveformConfig")
    kwargs = dict(data)
    kwargs["profile"] = from_dict("RolloffProfile", kwargs["profile"])
    kwargs["warp"] = from_dict("WarpingMap", kwargs["warp"])
    return WaveformConfig(**kwargs)


@register_decoder(type_name="LinkScenario")
def _decode_scenario(data: dict) -> LinkScenario:
    check_keys(data, _field_names(LinkScenario), name="LinkScenario")
    kwargs = dict(data)
    if "snr_db" in kwargs:
        kwargs["snr_db"] = float(kwargs["snr_db"])
    return LinkScenario(**kwargs)
