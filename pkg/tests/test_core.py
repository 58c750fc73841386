import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import warpwave as ww
from warpwave import (
    DomainError,
    LinkScenario,
    RolloffProfile,
    ValidationError,
    WarpDerivativeParams,
    WarpingMap,
    WaveformConfig,
)
from warpwave.phy import WarpedScheme, ZTScheme

SPLIT_ANCHORS = (
    [1, 12, 23, 33, 41, 49, 56, 63]
    + list(range(69, 472, 6))
    + [478, 485, 492, 501, 511, 522]
)


def _config() -> WaveformConfig:
    profile = RolloffProfile.mirrored([1.0, 0.5])
    return WaveformConfig(4, 1, 1, 4, 16, profile, WarpingMap.identity(6, 4), name="small")


@pytest.mark.parametrize(
    "n, expected", [(1, 1), (4, 33), (5, 41), (79, 492), (82, 522)]
)
def test_warp_anchor(n, expected):
    warp = WarpingMap(tuple(SPLIT_ANCHORS), first_index=1)
    assert ww.warp_anchor(warp, n) == expected
    assert ww.warp_eval(warp, float(expected)) == n


def test_warp_eval_between_anchors():
    warp = WarpingMap(tuple(SPLIT_ANCHORS), first_index=1)
    assert 4 < ww.warp_eval(warp, 34.5) < 5
    x = np.arange(SPLIT_ANCHORS[0], SPLIT_ANCHORS[-1] + 1, dtype=np.float64)
    values = ww.warp_eval(warp, x)
    # every sample maps into the index interval of its segment
    seg = np.searchsorted(SPLIT_ANCHORS, x, side="right")
    assert np.all(values >= seg - 1e-9)
    assert np.all(values <= seg + 1 + 1e-9)
    assert np.all(np.diff(values) > 0)
    # a shifted index origin only shifts the map
    zero_based = WarpingMap(tuple(SPLIT_ANCHORS))
    assert_allclose(values, zero_based(x) + 1, atol=1e-12)


@pytest.mark.parametrize("n", [0, 83])
def test_warp_anchor_out_of_range(n):
    warp = WarpingMap(tuple(SPLIT_ANCHORS), first_index=1)
    with pytest.raises(DomainError):
        ww.warp_anchor(warp, n)


def test_warp_eval_types():
    warp = WarpingMap.identity(4, 2)
    assert isinstance(ww.warp_eval(warp, 1.0), float)
    assert_allclose(ww.warp_eval(warp, [0.0, 3.0]), [0.0, 1.5], atol=1e-12)
    with pytest.raises(DomainError):
        ww.warp_eval(warp, 6.5)


@pytest.mark.parametrize(
    "obj",
    [
        RolloffProfile.mirrored([1.0, 0.48, 0.34]),
        WarpDerivativeParams.symmetric(0.49, 0.98, 5.3, 1.8),
        LinkScenario(tau_rms=4, time_offset=10, snr_db=50, time_interferer=True),
        LinkScenario(),
    ],
)
def test_config_round_trip(obj, tmp_path):
    path = ww.save_config(obj, tmp_path / "obj.yaml")
    assert ww.load_config(path) == obj


def test_waveform_config_round_trip(tmp_path):
    cfg = _config()
    loaded = ww.load_config(ww.save_config(cfg, tmp_path / "cfg.yaml"))
    assert loaded.warp.anchors == cfg.warp.anchors
    assert loaded.profile == cfg.profile
    assert ww.config_hash(loaded) == ww.config_hash(cfg)


def test_scheme_round_trip(tmp_path):
    doc = {"waveforms": [WarpedScheme(_config()), ZTScheme(20, 128, 4, 4, name="zt-4")]}
    loaded = ww.load_config(ww.save_config(doc, tmp_path / "schemes.yaml"))
    warped, zt = loaded["waveforms"]
    assert warped.config.warp.anchors == _config().warp.anchors
    assert zt == ZTScheme(20, 128, 4, 4, name="zt-4")


def test_document_sections(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(
        "scenario:\n"
        "  tau_rms: 2.0\n"
        "  seed: 7\n"
        "waveforms:\n"
        "  - preset: zt-2\n"
        "    qam_order: 16\n"
        "options:\n"
        "  trials: 3\n"
    )
    doc = ww.load_config(path)
    assert doc["scenario"] == LinkScenario(tau_rms=2.0, seed=7)
    assert doc["waveforms"][0].qam_order == 16
    assert doc["waveforms"][0].n_data == 12
    assert doc["options"] == {"trials": 3}


def test_profile_shorthand(tmp_path):
    path = tmp_path / "profile.yaml"
    path.write_text("type: RolloffProfile\nouter: [1.0, 0.5]\ninner: [0.3, 0.5]\n")
    assert ww.load_config(path) == RolloffProfile.mirrored([1.0, 0.5], [0.3, 0.5])


@pytest.mark.parametrize(
    "text",
    [
        "type: LinkScenario\ntau: 3\n",
        "type: WarpingMap\nfirst_index: 1\n",
        "unknown: {}\n",
        "- 1\n- 2\n",
    ],
)
def test_invalid_documents(text, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ValidationError):
        ww.load_config(path)


def test_config_hash_is_stable():
    a = ww.config_hash(RolloffProfile.mirrored([1.0, 0.5]))
    b = ww.config_hash(RolloffProfile.mirrored([1.0, 0.5]))
    c = ww.config_hash(RolloffProfile.mirrored([1.0, 0.4]))
    assert a == b != c
    assert len(a) == 16


def test_nan_is_rejected():
    with pytest.raises(ValidationError):
        ww.dump_config({"x": math.nan})


def test_waveform_config_checks():
    profile = RolloffProfile.mirrored([1.0, 0.5])
    with pytest.raises(ValidationError) as e:
        WaveformConfig(4, 1, 1, 4, 12, profile, WarpingMap.identity(5, 4))
    # qam order and anchor count
    assert len(e.value.problems) == 2
    cfg = _config()
    assert cfg.window_length == 32
    assert cfg.keep_bins == 8
    assert_allclose(cfg.data_anchor_offsets(), [4, 8, 12, 16])
    assert cfg.pulse_index(0) == 1
    assert np.isclose(cfg.effective_v, 4)
