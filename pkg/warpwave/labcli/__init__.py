"""Command line runner of the design, measurement and BER experiments."""

from __future__ import annotations
import argparse
import logging
import sys
from typing import Sequence

from .._errors import WarpwaveError
from ..types import QAM_ORDERS
from ..warpdesign import WarpShape
from ._commands import (
    cmd_ber,
    cmd_bench,
    cmd_design_profile,
    cmd_design_warp,
    cmd_measure,
)
from ._runner import SweepRunner, SweepSignals
from ._sim import metric_names

__all__ = ["main", "build_parser", "SweepRunner", "SweepSignals"]

logger = logging.getLogger(__name__)


def _float_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")


def _size(text: str) -> tuple[int, int, int | None]:
    """``N:V`` or ``N:V:WINDOW``."""
    parts = text.split(":")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a size: {text!r}")
    if len(values) == 2:
        return values[0], values[1], None
    if len(values) == 3:
        return values[0], values[1], values[2]
    raise argparse.ArgumentTypeError(f"size must be N:V or N:V:WINDOW, got {text!r}")


def _common(parser: argparse.ArgumentParser, *, config: bool = True) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--out", default=None, help="output file (standard output if omitted)")
    parser.add_argument("--sidecar", default=None, help="JSON file echoing the resolved config")
    if config:
        parser.add_argument("--config", default=None, help="YAML config file")


def _waveform_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--waveform", action="append", default=None, metavar="PRESET",
        help="named waveform, repeatable",
    )
    parser.add_argument("--qam", type=int, choices=QAM_ORDERS, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warpwave", description="Time-frequency warped waveform experiments."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design-profile", help="solve a roll-off profile")
    _common(p)
    p.add_argument("--case", type=int, choices=(1, 2, 3), default=None)
    p.add_argument("--pulses", type=int, default=None, help="pulses per half symbol")
    p.add_argument("--alpha1", type=float, default=None, help="roll-off of the edge pulse")
    p.set_defaults(func=cmd_design_profile)

    p = sub.add_parser("design-warp", help="optimize a warp and fit its anchors")
    _common(p, config=False)
    p.add_argument("--profile", required=True, help="profile CSV or YAML")
    p.add_argument("--xi", type=float, default=0.003, help="per-pulse leakage bound")
    p.add_argument("--v", type=int, default=6, help="oversampling ratio")
    p.add_argument("--z-h", type=int, default=1)
    p.add_argument("--z-t", type=int, default=1)
    p.add_argument("--asym", action="store_true", help="also optimize the inner roll-offs")
    p.add_argument("--shape", choices=[s.value for s in WarpShape], default=WarpShape.double.value)
    p.add_argument("--max-evals", type=int, default=2000)
    p.add_argument("--qam", type=int, choices=QAM_ORDERS, default=None)
    p.set_defaults(func=cmd_design_warp)

    p = sub.add_parser("measure", help="PSD, time profile, PAPR or pulse leakage")
    _common(p)
    _waveform_args(p)
    p.add_argument("--metric", choices=metric_names(), required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("ber", help="Monte Carlo bit error rate sweeps")
    _common(p)
    _waveform_args(p)
    p.add_argument("--sweep", choices=("snr", "offset-map"), default="snr")
    p.add_argument("--snr", type=_float_list, default=_float_list("0,10,20,30,40,50"))
    p.add_argument("--bits", type=int, default=None, help="bits per sweep point")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tau-rms", type=float, default=None)
    p.add_argument("--time-offset", type=int, default=None)
    p.add_argument("--freq-offset", type=int, default=None, help="bins of the receiver window")
    p.add_argument("--p-imb-time", type=float, default=None)
    p.add_argument("--p-imb-freq", type=float, default=None)
    p.add_argument("--interferers", choices=("none", "time", "freq", "both"), default=None)
    p.set_defaults(func=cmd_ber)

    p = sub.add_parser("bench", help="butterfly counts of the pruned receiver")
    _common(p, config=False)
    p.add_argument("--sizes", type=_size, nargs="+", default=[(12, 8, None), (76, 6, None)])
    p.add_argument(
        "--timing", nargs="*", default=None, metavar="PRESET",
        help="also time the receiver transforms of these waveforms",
    )
    p.add_argument("--repeats", type=int, default=100)
    p.set_defaults(func=cmd_bench)
    return parser


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except WarpwaveError as e:
        print(f"warpwave {args.command}: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"warpwave {args.command}: {e}", file=sys.stderr)
        return 2
