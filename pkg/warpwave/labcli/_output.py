from __future__ import annotations
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Iterable

import pandas as pd

from .._config import to_dict
from ..core import config_hash

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"


def header_line(config: Any, seed: int | None) -> str:
    """Comment line recording the config hash and the seed."""
    return f"# config_hash={config_hash(config)}; seed={seed}\n"


def write_table(
    df: pd.DataFrame,
    path: str | Path | None,
    *,
    config: Any,
    seed: int | None = None,
    warning: str | None = None,
) -> Path | None:
    """
    Write ``df`` as CSV with a leading comment line.

    Parameters
    ----------
    df : pd.DataFrame
        Table to write. The index is not written.
    path : path-like, optional
        Output file. Standard output if not given.
    config : Any
        Resolved configuration, hashed into the comment line.
    seed : int, optional
        Seed of the run.
    warning : str, optional
        Extra comment line for partial results.
    """
    text = header_line(config, seed)
    if warning:
        text += f"# warning: {warning}\n"
    text += df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if path is None:
        sys.stdout.write(text)
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("wrote %d rows to %s", len(df), path)
    return path


def read_table(path: str | Path) -> pd.DataFrame:
    """Read a CSV written by ``write_table``."""
    return pd.read_csv(path, comment="#")


def write_sidecar(path: str | Path, config: Any, seed: int | None = None) -> Path:
    """JSON echo of the resolved configuration."""
    path = Path(path)
    doc = {"config": to_dict(config), "config_hash": config_hash(config), "seed": seed}
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def coerce_name(name: str, names: Iterable[str]) -> str:
    """Make ``name`` unique among ``names`` by a numeric suffix."""
    names = set(names)
    suffix = re.findall(r".*-(\d+)", name)
    if suffix:
        suf = suffix[0]
        new_name = name
        name = new_name[: -len(suf) - 1]
        i = int(suf)
    else:
        new_name = name
        i = 0
    while new_name in names:
        new_name = f"{name}-{i}"
        i += 1
    return new_name


def unique_labels(labels: Iterable[str]) -> list[str]:
    out: list[str] = []
    for label in labels:
        out.append(coerce_name(label, out))
    return out
