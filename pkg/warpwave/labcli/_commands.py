from __future__ import annotations
import logging
import sys
import time
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from .._errors import ConvergenceError, InfeasibleDesignError, ValidationError
from ..core import load_config, save_config
from ..phy import Scheme, WarpedScheme, preset, receiver_specs
from ..rolloff import solve_profile
from ..spectral import complexity_model, fft_dif_pruned, ifft_dit_pruned
from ..types import LinkScenario, RolloffProfile, WaveformConfig
from ..warpdesign import WarpShape, fit_spline, optimize_warp
from ._output import read_table, unique_labels, write_sidecar, write_table
from ._runner import SweepRunner
from ._sim import ber_point, measure

logger = logging.getLogger(__name__)

DEFAULT_MEASURE = ("warped-asym", "warped-sym", "zt-4", "cp-dfts")
DEFAULT_BER = ("warped-asym", "zt-4")
OFFSET_MAP_OFFSETS = (0, 10, 20, 30)
OFFSET_MAP_TAUS = (1.0, 2.0, 4.0)
OFFSET_MAP_SNR = 50.0

# section a single-object config file fills
_OBJECT_SECTIONS = {
    RolloffProfile: "profile",
    LinkScenario: "scenario",
    WaveformConfig: "config",
}


def _load_document(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    obj = load_config(path)
    if isinstance(obj, dict):
        return obj
    if isinstance(obj, Scheme):
        return {"waveform": obj}
    for cls, section in _OBJECT_SECTIONS.items():
        if isinstance(obj, cls):
            return {section: obj}
    raise ValidationError(f"cannot use a {type(obj).__name__} here", name="config file")


def _option(args, doc: dict, name: str, default: Any) -> Any:
    """Command line value, else the ``options`` section of the config, else default."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    return doc.get("options", {}).get(name, default)


def _finish(args, config: Any, seed: int | None) -> None:
    if args.sidecar:
        write_sidecar(args.sidecar, config, seed)


def _profile_table(profile: RolloffProfile) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "pulse": np.arange(profile.n_pulses),
            "alpha_left": [p[0] for p in profile.pairs],
            "alpha_right": [p[1] for p in profile.pairs],
        }
    )


def cmd_design_profile(args) -> int:
    doc = _load_document(args.config)
    case = int(_option(args, doc, "case", 3))
    n_pulses = int(_option(args, doc, "pulses", 6))
    alpha1 = float(_option(args, doc, "alpha1", 1.0))
    config = {"command": "design-profile", "case": case, "pulses": n_pulses, "alpha1": alpha1}
    try:
        profile = solve_profile(case, n_pulses, alpha1)
    except ConvergenceError as e:
        if e.last is not None:
            logger.warning("writing the last iterate of a non-converged profile")
            write_table(
                _profile_table(e.last), args.out, config=config,
                warning="profile did not converge",
            )
        raise
    write_table(_profile_table(profile), args.out, config=config)
    _finish(args, config, None)
    return 0


def _load_profile(path: str) -> RolloffProfile:
    if Path(path).suffix.lower() == ".csv":
        df = read_table(path)
        missing = {"alpha_left", "alpha_right"} - set(df.columns)
        if missing:
            raise ValidationError(f"missing columns {sorted(missing)}", name="profile table")
        return RolloffProfile(tuple(zip(df["alpha_left"], df["alpha_right"])))
    doc = _load_document(path)
    if "profile" in doc:
        return doc["profile"]
    if "config" in doc:
        return doc["config"].profile
    raise ValidationError("no profile section", name="profile file")


def cmd_design_warp(args) -> int:
    profile = _load_profile(args.profile)
    shape = WarpShape(args.shape)
    config = {
        "command": "design-warp",
        "profile": profile,
        "xi": args.xi,
        "v": args.v,
        "z_h": args.z_h,
        "z_t": args.z_t,
        "asym": args.asym,
        "shape": shape.value,
        "max_evals": args.max_evals,
    }
    try:
        solution = optimize_warp(
            profile, args.xi, shape=shape, free_inner=args.asym, max_evals=args.max_evals
        )
    except InfeasibleDesignError as e:
        print(f"best design: {e.last!r}, max leakage {e.leakage:.4g}", file=sys.stderr)
        raise
    warp = fit_spline(solution.params, args.v, profile.n_pulses, args.z_h, args.z_t, shape=shape)
    waveform = WarpedScheme(
        WaveformConfig(
            profile.n_pulses, args.z_h, args.z_t, args.v, args.qam or 512,
            solution.profile, warp, name="designed",
        )
    )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_config(
        {
            "profile": solution.profile,
            "warp_params": solution.params,
            "warp": warp,
            "waveform": waveform,
        },
        out / "params.yaml",
    )
    n_anchor = len(warp.anchors)
    roles = ["head"] * args.z_h + ["data"] * profile.n_pulses + ["tail"] * args.z_t
    anchors = pd.DataFrame(
        {
            "index": np.arange(n_anchor) + warp.first_index,
            "anchor": list(warp.anchors),
            "role": roles,
        }
    )
    write_table(anchors, out / "anchors.csv", config=config)
    leakage = _profile_table(solution.profile)
    leakage["leakage"] = solution.leakages
    write_table(leakage, out / "leakage.csv", config=config)
    print(f"D={solution.expansion:.4f} max_leakage={solution.max_leakage:.4g}")
    _finish(args, config, None)
    return 0


def _resolve_waveforms(args, doc: dict, default: tuple[str, ...]) -> list[Scheme]:
    schemes = list(doc.get("waveforms", []))
    if "waveform" in doc:
        schemes.append(doc["waveform"])
    schemes.extend(preset(name) for name in args.waveform or [])
    if not schemes:
        schemes = [preset(name) for name in default]
    if args.qam is not None:
        schemes = [s.with_options(qam_order=args.qam) for s in schemes]
    return schemes


def cmd_measure(args) -> int:
    doc = _load_document(args.config)
    schemes = _resolve_waveforms(args, doc, DEFAULT_MEASURE)
    labels = unique_labels(s.name for s in schemes)
    trials = int(_option(args, doc, "trials", 200))
    seed = int(_option(args, doc, "seed", 0))
    config = {
        "command": "measure",
        "metric": args.metric,
        "trials": trials,
        "waveforms": schemes,
    }
    df = measure(args.metric, schemes, labels, trials, seed)
    write_table(df, args.out, config=config, seed=seed)
    _finish(args, config, seed)
    return 0


def _scenario(args, doc: dict) -> LinkScenario:
    scenario = doc.get("scenario", LinkScenario())
    updates = {
        "tau_rms": args.tau_rms,
        "time_offset": args.time_offset,
        "freq_offset_bins": args.freq_offset,
        "p_imb_time_db": args.p_imb_time,
        "p_imb_freq_db": args.p_imb_freq,
        "n_bits": args.bits,
        "seed": args.seed,
    }
    if args.interferers is not None:
        updates["time_interferer"] = args.interferers in ("time", "both")
        updates["freq_interferer"] = args.interferers in ("freq", "both")
    return scenario.with_updates(**{k: v for k, v in updates.items() if v is not None})


def _sweep_points(args, scenario: LinkScenario) -> list[tuple[dict, LinkScenario]]:
    if args.sweep == "snr":
        return [
            ({"snr_db": snr}, scenario.with_updates(snr_db=snr)) for snr in args.snr
        ]
    points = []
    for tau in OFFSET_MAP_TAUS:
        for offset in OFFSET_MAP_OFFSETS:
            point = scenario.with_updates(
                tau_rms=tau, time_offset=offset, snr_db=OFFSET_MAP_SNR, time_interferer=True
            )
            points.append(({"tau_rms": tau, "time_offset": offset}, point))
    return points


def cmd_ber(args) -> int:
    doc = _load_document(args.config)
    scenario = _scenario(args, doc)
    schemes = _resolve_waveforms(args, doc, DEFAULT_BER)
    labels = unique_labels(s.name for s in schemes)
    points = _sweep_points(args, scenario)
    jobs = [(scheme, point) for _, point in points for scheme in schemes]
    runner = SweepRunner(ber_point, workers=args.workers)

    @runner.events.point_done.connect
    def _progress(index: int, result: tuple[int, int]) -> None:
        scheme, _ = jobs[index]
        logger.info(
            "%s point %d/%d: %d errors in %d bits", scheme.name, index + 1, len(jobs), *result
        )

    results = runner.run(jobs)

    rows = []
    it = iter(results)
    for index, (keys, _) in enumerate(points):
        bers = []
        for label in labels:
            errors, bits = next(it)
            ber = errors / bits
            bers.append(ber)
            rows.append(
                {"waveform": label, "point": index, **keys, "ber": ber, "errors": errors, "bits": bits}
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            gains = np.divide(bers, bers[0])
        for row, gain in zip(rows[-len(labels):], gains):
            row["ber_over_first"] = float(gain)
    df = pd.DataFrame(rows)
    config = {
        "command": "ber",
        "sweep": args.sweep,
        "scenario": scenario,
        "points": [keys for keys, _ in points],
        "waveforms": schemes,
    }
    write_table(df, args.out, config=config, seed=scenario.seed)
    _finish(args, config, scenario.seed)
    return 0


def _time_receiver(cfg: WaveformConfig, repeats: int) -> tuple[float, float]:
    """Microseconds per call of the pruned receiver transforms and of numpy's."""
    fwd, inv = receiver_specs(cfg)
    x = np.random.default_rng(0).standard_normal(fwd.size) + 0j
    start = time.perf_counter()
    for _ in range(repeats):
        band, _ = fft_dif_pruned(x, fwd)
        ifft_dit_pruned(band, inv)
    pruned = time.perf_counter() - start
    start = time.perf_counter()
    for _ in range(repeats):
        np.fft.ifft(np.fft.fft(x))
    full = time.perf_counter() - start
    return pruned / repeats * 1e6, full / repeats * 1e6


def _bench_row(n_pulses: int, v: int, window: int | None) -> dict[str, Any]:
    row = {"n_pulses": n_pulses, "v": v, **complexity_model(n_pulses, v, window)}
    row["saving"] = row["rx_full"] / row["rx_pruned"]
    return row


def cmd_bench(args) -> int:
    rows = [_bench_row(*size) for size in args.sizes]
    for name in args.timing or []:
        scheme = preset(name)
        if not isinstance(scheme, WarpedScheme):
            raise ValidationError(f"{name} is not a warped waveform", name="bench")
        cfg = scheme.config
        row = {"waveform": name, **_bench_row(cfg.n_pulses, cfg.v, cfg.window_length)}
        row["pruned_us"], row["numpy_us"] = _time_receiver(cfg, args.repeats)
        rows.append(row)
    df = pd.DataFrame(rows)
    config = {"command": "bench", "sizes": [list(s) for s in args.sizes]}
    write_table(df, args.out, config=config)
    _finish(args, config, None)
    return 0
