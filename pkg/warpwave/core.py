from __future__ import annotations
import hashlib
from pathlib import Path
from typing import Any, TYPE_CHECKING, overload

import numpy as np

from ._errors import DomainError
from .types import WarpingMap

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


@overload
def warp_eval(warp: WarpingMap, x_t: float) -> float:
    ...


@overload
def warp_eval(warp: WarpingMap, x_t: ArrayLike) -> np.ndarray:
    ...


def warp_eval(warp, x_t):
    """Warped coordinate of sample position(s) ``x_t``."""
    out = warp(x_t)
    if out.ndim == 0:
        return float(out)
    return out


def warp_anchor(warp: WarpingMap, n: int) -> int:
    """Integer sample position of warped index ``n``."""
    k = int(n) - warp.first_index
    if not 0 <= k < len(warp.anchors):
        lo = warp.first_index
        hi = lo + len(warp.anchors) - 1
        raise DomainError(
            f"index {n} is out of range [{lo}, {hi}]", name="anchor index"
        )
    return warp.anchors[k]


def load_config(path: str | Path) -> Any:
    """Load a YAML config file into warpwave objects."""
    import yaml
    from ._config import from_document

    with open(path, encoding="utf-8") as f:
        doc = yaml.safe_load(f)
    return from_document(doc)


def save_config(obj: Any, path: str | Path) -> Path:
    """Save a warpwave object (or a dict of them) as a YAML config file."""
    path = Path(path)
    path.write_text(dump_config(obj), encoding="utf-8")
    return path


def dump_config(obj: Any) -> str:
    """YAML text of a warpwave object."""
    import yaml
    from ._config import to_dict

    return yaml.safe_dump(to_dict(obj), sort_keys=True, default_flow_style=None)


def config_hash(obj: Any) -> str:
    """Short stable hash of the YAML text of ``obj``."""
    return hashlib.sha256(dump_config(obj).encode("utf-8")).hexdigest()[:16]
