from __future__ import annotations
from functools import lru_cache

import numpy as np

from .._errors import ValidationError
from ..types import QAM_ORDERS

__all__ = ["bits_per_symbol", "constellation", "qam_map", "qam_demap"]

_CHUNK = 4096


def bits_per_symbol(order: int) -> int:
    if order not in QAM_ORDERS:
        raise ValidationError(f"QAM order must be one of {QAM_ORDERS}, got {order}", name="QAM")
    return order.bit_length() - 1


def _gray_decode(g: np.ndarray) -> np.ndarray:
    out = g.copy()
    shift = g >> 1
    while np.any(shift):
        out ^= shift
        shift >>= 1
    return out


def _split_bits(order: int) -> tuple[int, int]:
    b = bits_per_symbol(order)
    return (b + 1) // 2, b // 2


def _levels(idx: np.ndarray, nbits: int) -> np.ndarray:
    return 2 * _gray_decode(idx) - ((1 << nbits) - 1)


@lru_cache(maxsize=None)
def _table(order: int) -> tuple[np.ndarray, float]:
    b_i, b_q = _split_bits(order)
    codes = np.arange(order)
    i = _levels(codes >> b_q, b_i)
    q = _levels(codes & ((1 << b_q) - 1), b_q)
    if b_i != b_q:
        # fold the outer columns of the rectangle onto the top and bottom rows
        n_q = 1 << b_q
        s = 3 * n_q // 2
        outer = np.abs(i) > s - 1
        k = (np.abs(i[outer]) - (s - 1)) // 2
        i_new = np.sign(i[outer]) * (n_q - np.abs(q[outer]))
        q_new = np.sign(q[outer]) * (n_q - 1 + 2 * k)
        i = i.copy()
        q = q.copy()
        i[outer] = i_new
        q[outer] = q_new
    points = i + 1j * q
    scale = float(np.sqrt(np.mean(np.abs(points) ** 2)))
    table = points / scale
    table.setflags(write=False)
    return table, scale


def constellation(order: int) -> np.ndarray:
    """Unit-energy constellation indexed by the MSB-first bit label."""
    return _table(order)[0]


def _check_bits(bits: np.ndarray, order: int) -> np.ndarray:
    b = bits_per_symbol(order)
    bits = np.asarray(bits).reshape(-1)
    if bits.size % b:
        raise ValidationError(
            f"{bits.size} bits is not a multiple of {b} bits per symbol", name="QAM"
        )
    if np.any((bits != 0) & (bits != 1)):
        raise ValidationError("bits must be 0 or 1", name="QAM")
    return bits.astype(np.int64).reshape(-1, b)


def qam_map(bits, order: int) -> np.ndarray:
    """Gray-mapped QAM symbols of a bit sequence (most significant bit first)."""
    groups = _check_bits(bits, order)
    b = groups.shape[1]
    codes = groups @ (1 << np.arange(b - 1, -1, -1))
    return constellation(order)[codes]


def _codes_to_bits(codes: np.ndarray, b: int) -> np.ndarray:
    shifts = np.arange(b - 1, -1, -1)
    return ((codes[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)


def _gray_encode(i: np.ndarray) -> np.ndarray:
    return i ^ (i >> 1)


def qam_demap(symbols, order: int) -> np.ndarray:
    """Hard-decision bits of the nearest constellation points."""
    symbols = np.asarray(symbols, dtype=np.complex128).reshape(-1)
    b = bits_per_symbol(order)
    b_i, b_q = _split_bits(order)
    table, scale = _table(order)
    if b_i == b_q:
        n = 1 << b_i
        pts = symbols * scale
        i = np.clip(np.rint((pts.real + n - 1) / 2), 0, n - 1).astype(np.int64)
        q = np.clip(np.rint((pts.imag + n - 1) / 2), 0, n - 1).astype(np.int64)
        codes = (_gray_encode(i) << b_q) | _gray_encode(q)
        return _codes_to_bits(codes, b)
    codes = np.empty(symbols.size, dtype=np.int64)
    for start in range(0, symbols.size, _CHUNK):
        chunk = symbols[start : start + _CHUNK]
        dist = np.abs(chunk[:, None] - table[None, :])
        codes[start : start + _CHUNK] = np.argmin(dist, axis=1)
    return _codes_to_bits(codes, b)
