import numpy as np
import pytest

from warpwave import LinkScenario, ValidationError
from warpwave.labcli._sim import ber_point, measure, metric_names
from warpwave.phy import preset

CONTAINMENT = ["warped-asym", "warped-sym", "zt-4", "cp-dfts"]


def _psd_at(df, label, ratio):
    rows = df[(df["waveform"] == label) & (df["band_edge_ratio"] > 0)]
    rows = rows.sort_values("band_edge_ratio")
    return float(np.interp(ratio, rows["band_edge_ratio"], rows["psd_db"]))


def test_metric_names():
    assert metric_names() == ["psd", "timeprofile", "papr", "leakage"]
    with pytest.raises(ValueError):
        measure("nope", [preset("zt-4")], ["zt-4"], 1, 0)


def test_containment_ordering():
    df = measure("psd", [preset(n) for n in CONTAINMENT], CONTAINMENT, 200, 0)
    for ratio in [1.45, 1.5]:
        asym, sym, zt, cp = (_psd_at(df, label, ratio) for label in CONTAINMENT)
        assert sym < zt < cp
        assert asym < zt
        # within the spread of 200 trials
        assert asym < sym + 0.5


def test_time_profile_edges():
    names = ["warped-asym", "zt-4"]
    df = measure("timeprofile", [preset(n) for n in names], names, 50, 0)
    warped = df[df["waveform"] == "warped-asym"]["rms_db"].to_numpy()
    zt = df[df["waveform"] == "zt-4"]["rms_db"].to_numpy()
    assert warped.size == zt.size == 128
    # the centered warped symbol leaves silent guard samples on both ends
    lead = preset("warped-asym").lead
    assert np.all(np.isneginf(warped[:lead]))
    assert np.isneginf(warped[-1])
    assert np.all(np.isfinite(zt))


def test_single_carrier_papr():
    schemes = [preset("warped-sym", qam_order=4), preset("cp-ofdm", qam_order=4)]
    df = measure("papr", schemes, ["warped", "ofdm"], 500, 0)
    warped, ofdm = df.set_index("waveform").loc[["warped", "ofdm"], "p99_db"]
    assert warped < ofdm


@pytest.mark.parametrize("offset", [10, 20])
def test_loose_sync_ordering(offset):
    scenario = LinkScenario(
        tau_rms=1.0, time_offset=offset, snr_db=50.0, time_interferer=True, n_bits=20_000
    )
    warped, bits = ber_point(preset("warped-asym"), scenario)
    zt, _ = ber_point(preset("zt-4"), scenario)
    assert bits >= 20_000
    assert warped <= zt


def test_ber_point_without_impairments():
    scenario = LinkScenario(n_bits=10_000, seed=2)
    for name in ["warped-asym", "zt-4", "cp-dfts"]:
        errors, bits = ber_point(preset(name), scenario)
        assert errors == 0
        assert bits >= 10_000


def test_ber_point_needs_bits():
    with pytest.raises(ValidationError):
        ber_point(preset("zt-4"), LinkScenario(n_bits=100))
