from __future__ import annotations
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Tuple

import numpy as np

from .._errors import ErrorCollector
from ..types import OpCount


def is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def check_pow2(n: int) -> int:
    if not is_pow2(n):
        raise ValueError(f"Transform length must be a power of two, got {n}.")
    return n.bit_length() - 1


@dataclass(frozen=True)
class PruneSpec:
    """
    Index sets of a pruned transform.

    ``input_nonzero`` lists the input indices that may be nonzero and
    ``output_keep`` the output indices that are computed. Both keep the order
    in which values are passed in and returned.
    """

    size: int
    input_nonzero: Tuple[int, ...]
    output_keep: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "input_nonzero", tuple(int(i) for i in self.input_nonzero))
        object.__setattr__(self, "output_keep", tuple(int(i) for i in self.output_keep))
        errors = ErrorCollector("PruneSpec")
        errors.check(is_pow2(self.size), f"size must be a power of two, got {self.size}")
        for label, idx in [("input_nonzero", self.input_nonzero), ("output_keep", self.output_keep)]:
            errors.check(len(idx) > 0, f"{label} must be non-empty")
            errors.check(
                all(0 <= i < self.size for i in idx),
                f"{label} has indices outside [0, {self.size})",
            )
            errors.check(len(set(idx)) == len(idx), f"{label} has duplicates")
        errors.raise_if_any()

    @classmethod
    def full(cls, size: int) -> PruneSpec:
        idx = tuple(range(size))
        return cls(size, idx, idx)

    @classmethod
    def from_sets(
        cls,
        size: int,
        input_nonzero: Iterable[int] | None = None,
        output_keep: Iterable[int] | None = None,
    ) -> PruneSpec:
        """Spec with ``None`` meaning every index."""
        every = tuple(range(size))
        return cls(
            size,
            every if input_nonzero is None else tuple(input_nonzero),
            every if output_keep is None else tuple(output_keep),
        )

    @property
    def is_full(self) -> bool:
        return len(self.input_nonzero) == self.size and len(self.output_keep) == self.size


class Stage(NamedTuple):
    i0: np.ndarray
    i1: np.ndarray
    twiddle: np.ndarray


class Plan(NamedTuple):
    stages: Tuple[Stage, ...]
    input_perm: np.ndarray
    output_perm: np.ndarray
    count: OpCount


@lru_cache(maxsize=None)
def bit_reverse(n: int) -> np.ndarray:
    bits = check_pow2(n)
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    rev.setflags(write=False)
    return rev


@lru_cache(maxsize=None)
def _butterflies(n: int, dit: bool) -> tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]:
    """Pairs and twiddles of every stage of the unpruned transform."""
    bits = check_pow2(n)
    p = np.arange(n // 2)
    out = []
    for s in range(bits):
        if dit:
            half = 1 << s
            j = p % half
            tw = np.exp(2j * np.pi * j * (n // (2 * half)) / n)
        else:
            half = n >> (s + 1)
            j = p % half
            tw = np.exp(-2j * np.pi * (j << s) / n)
        i0 = (p // half) * 2 * half + j
        i1 = i0 + half
        for arr in (i0, i1, tw):
            arr.setflags(write=False)
        out.append((i0, i1, tw))
    return tuple(out)


def _needed_backward(stages, keep_mask: np.ndarray) -> list[np.ndarray]:
    """Skinner pruning: butterflies feeding at least one kept output."""
    need = keep_mask.copy()
    active = [None] * len(stages)
    for s in range(len(stages) - 1, -1, -1):
        i0, i1, _ = stages[s]
        act = need[i0] | need[i1]
        active[s] = act
        need = np.zeros_like(need)
        need[i0[act]] = True
        need[i1[act]] = True
    return active


def _nonzero_forward(stages, nz_mask: np.ndarray) -> list[np.ndarray]:
    """Markel pruning: butterflies fed by at least one nonzero value."""
    nz = nz_mask.copy()
    active = []
    for i0, i1, _ in stages:
        act = nz[i0] | nz[i1]
        active.append(act)
        nz = nz.copy()
        nz[i0[act]] = True
        nz[i1[act]] = True
    return active


def _compile(stages, active) -> tuple[tuple[Stage, ...], OpCount]:
    out = []
    total = 0
    for (i0, i1, tw), act in zip(stages, active):
        out.append(Stage(i0[act], i1[act], tw[act]))
        total += int(np.count_nonzero(act))
    return tuple(out), OpCount(total, total)


@lru_cache(maxsize=64)
def dif_plan(spec: PruneSpec) -> Plan:
    """Decimation-in-frequency forward plan with output pruning."""
    n = spec.size
    stages = _butterflies(n, dit=False)
    rev = bit_reverse(n)
    keep = np.zeros(n, dtype=bool)
    # DIF leaves bin k at bit-reversed position
    keep[rev[list(spec.output_keep)]] = True
    compiled, count = _compile(stages, _needed_backward(stages, keep))
    return Plan(
        compiled,
        np.asarray(spec.input_nonzero, dtype=np.intp),
        rev[list(spec.output_keep)],
        count,
    )


@lru_cache(maxsize=64)
def dit_plan(spec: PruneSpec) -> Plan:
    """Decimation-in-time inverse plan with input and output pruning."""
    n = spec.size
    stages = _butterflies(n, dit=True)
    rev = bit_reverse(n)
    nz = np.zeros(n, dtype=bool)
    nz[rev[list(spec.input_nonzero)]] = True
    keep = np.zeros(n, dtype=bool)
    keep[list(spec.output_keep)] = True
    fwd = _nonzero_forward(stages, nz)
    bwd = _needed_backward(stages, keep)
    active = [a & b for a, b in zip(fwd, bwd)]
    compiled, count = _compile(stages, active)
    return Plan(
        compiled,
        rev[list(spec.input_nonzero)],
        np.asarray(spec.output_keep, dtype=np.intp),
        count,
    )
