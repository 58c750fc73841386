import io
import json
import logging

import numpy as np
import pandas as pd
import pytest

from warpwave import load_config
from warpwave.labcli import main
from warpwave.phy import WarpedScheme

SINC_PROFILE = """\
# config_hash=x; seed=None
pulse,alpha_left,alpha_right
0,0,0
1,0,0
2,0,0
3,0,0
"""


def _read(path):
    return pd.read_csv(path, comment="#")


def test_design_profile(tmp_path):
    out = tmp_path / "profile.csv"
    sidecar = tmp_path / "profile.json"
    assert main(["design-profile", "--out", str(out), "--sidecar", str(sidecar)]) == 0
    df = _read(out)
    assert list(df.columns) == ["pulse", "alpha_left", "alpha_right"]
    assert len(df) == 12
    assert df["alpha_left"].iloc[0] == pytest.approx(1.0)
    assert out.read_text().startswith("# config_hash=")

    again = tmp_path / "again.csv"
    assert main(["design-profile", "--out", str(again)]) == 0
    assert again.read_bytes() == out.read_bytes()

    side = json.loads(sidecar.read_text())
    assert side["config"]["case"] == 3
    assert side["seed"] is None
    assert side["config_hash"] in out.read_text()


def test_design_profile_options(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("options:\n  pulses: 4\n  alpha1: 0.8\n")
    out = tmp_path / "profile.csv"
    assert main(["design-profile", "--config", str(config), "--out", str(out)]) == 0
    df = _read(out)
    assert len(df) == 8
    assert df["alpha_left"].iloc[0] == pytest.approx(0.8)


def test_design_warp(tmp_path, capsys):
    profile = tmp_path / "profile.csv"
    profile.write_text(SINC_PROFILE)
    out = tmp_path / "design"
    argv = [
        "design-warp", "--profile", str(profile), "--out", str(out),
        "--xi", "0.02", "--v", "4", "--max-evals", "60", "--qam", "16",
    ]
    assert main(argv) == 0
    assert capsys.readouterr().out.startswith("D=")

    anchors = _read(out / "anchors.csv")
    assert list(anchors["role"]) == ["head"] + ["data"] * 4 + ["tail"]
    assert np.all(np.diff(anchors["anchor"]) >= 4)
    leakage = _read(out / "leakage.csv")
    assert (leakage["leakage"] < 0.02).all()

    doc = load_config(out / "params.yaml")
    scheme = doc["waveform"]
    assert isinstance(scheme, WarpedScheme)
    assert scheme.qam_order == 16
    assert list(scheme.config.warp.anchors) == list(anchors["anchor"])


def test_design_warp_infeasible(tmp_path, capsys):
    profile = tmp_path / "profile.csv"
    profile.write_text(SINC_PROFILE)
    argv = [
        "design-warp", "--profile", str(profile), "--out", str(tmp_path / "design"),
        "--xi", "1e-12", "--max-evals", "20",
    ]
    assert main(argv) == 3
    assert "best design" in capsys.readouterr().err


def test_measure_papr(tmp_path):
    out = tmp_path / "papr.csv"
    argv = [
        "measure", "--metric", "papr", "--trials", "20",
        "--waveform", "warped-sym", "--waveform", "zt-4", "--out", str(out),
    ]
    assert main(argv) == 0
    df = _read(out)
    assert list(df["waveform"]) == ["warped-sym", "zt-4"]
    assert (df["trials"] == 20).all()
    assert (df["p99_db"] >= df["median_db"]).all()
    assert (df["median_db"] > 0).all()


def test_measure_duplicate_names(tmp_path):
    out = tmp_path / "papr.csv"
    argv = [
        "measure", "--metric", "papr", "--trials", "5",
        "--waveform", "zt-4", "--waveform", "zt-4", "--out", str(out),
    ]
    assert main(argv) == 0
    labels = list(_read(out)["waveform"])
    assert len(set(labels)) == 2
    assert labels[0] == "zt-4"


def test_measure_psd_stdout(capsys):
    argv = ["measure", "--metric", "psd", "--trials", "10", "--waveform", "warped-asym"]
    assert main(argv) == 0
    df = pd.read_csv(io.StringIO(capsys.readouterr().out), comment="#")
    assert set(df.columns) == {"waveform", "freq", "band_edge_ratio", "psd_db"}
    assert df["psd_db"].max() == pytest.approx(0.0)


def test_measure_leakage_skips_baselines(tmp_path):
    out = tmp_path / "leak.csv"
    argv = [
        "measure", "--metric", "leakage", "--trials", "1",
        "--waveform", "warped-sym", "--waveform", "cp-ofdm", "--out", str(out),
    ]
    assert main(argv) == 0
    df = _read(out)
    assert set(df["waveform"]) == {"warped-sym"}
    assert len(df) == 12


def test_measure_rejects_zero_trials(tmp_path, capsys):
    argv = ["measure", "--metric", "papr", "--trials", "0", "--out", str(tmp_path / "x.csv")]
    assert main(argv) == 2
    assert "trials" in capsys.readouterr().err
    assert not (tmp_path / "x.csv").exists()


def _ber(tmp_path, name, *extra):
    out = tmp_path / name
    argv = [
        "ber", "--waveform", "warped-sym", "--waveform", "zt-4", "--qam", "4",
        "--snr=-10,50", "--bits", "10000", "--seed", "3", "--out", str(out), *extra,
    ]
    assert main(argv) == 0
    return out


def test_ber_sweep(tmp_path):
    out = _ber(tmp_path, "ber.csv")
    df = _read(out)
    assert list(df["waveform"]) == ["warped-sym", "zt-4"] * 2
    assert list(df["snr_db"]) == [-10, -10, 50, 50]
    assert (df["bits"] >= 10000).all()
    noisy = df[df["snr_db"] == -10]
    clean = df[df["snr_db"] == 50]
    assert (noisy["ber"] > 0.01).all()
    assert (clean["errors"] == 0).all()
    assert noisy["ber_over_first"].iloc[0] == pytest.approx(1.0)


def test_ber_is_reproducible(tmp_path):
    a = _ber(tmp_path, "a.csv")
    b = _ber(tmp_path, "b.csv", "--workers", "2")
    assert a.read_bytes() == b.read_bytes()


def test_ber_logs_progress(tmp_path, caplog):
    caplog.set_level(logging.INFO, logger="warpwave")
    _ber(tmp_path, "ber.csv")
    done = [r.getMessage() for r in caplog.records if "errors in" in r.getMessage()]
    assert len(done) == 4
    assert done[-1].startswith("zt-4 point 4/4")


def test_ber_rejects_few_bits(tmp_path):
    argv = ["ber", "--bits", "100", "--snr", "10", "--out", str(tmp_path / "x.csv")]
    assert main(argv) == 2


def test_bench(capsys):
    assert main(["bench", "--sizes", "12:8", "76:6:512"]) == 0
    df = pd.read_csv(io.StringIO(capsys.readouterr().out), comment="#")
    assert list(df["n_pulses"]) == [12, 76]
    assert (df["rx_pruned"] < df["rx_full"]).all()
    assert (df["saving"] > 1).all()


def test_bench_timing(capsys):
    assert main(["bench", "--sizes", "12:8", "--timing", "warped-sym", "--repeats", "2"]) == 0
    df = pd.read_csv(io.StringIO(capsys.readouterr().out), comment="#")
    assert df["waveform"].iloc[-1] == "warped-sym"
    assert df["pruned_us"].iloc[-1] > 0
    assert main(["bench", "--timing", "zt-4"]) == 2


def test_bad_size():
    with pytest.raises(SystemExit):
        main(["bench", "--sizes", "12"])
