from __future__ import annotations
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ._errors import ErrorCollector, DomainError, MonotonicityError

__all__ = [
    "SampledSignal",
    "PulseSpec",
    "RolloffProfile",
    "WarpDerivativeParams",
    "WarpingMap",
    "WaveformConfig",
    "LinkScenario",
    "UtilityCase",
    "QAM_ORDERS",
]

QAM_ORDERS = (4, 16, 32, 64, 128, 256, 512, 1024)

Pair = Tuple[float, float]


class UtilityCase(Enum):
    """Utility/cost formulation used to derive a roll-off profile."""

    coherent = 1
    power_difference = 2
    equal_lobe_power = 3


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """
    Complex baseband samples at ``v`` samples per data-symbol duration.

    ``origin`` is the sample index of the time reference: the peak of a lone
    pulse, or the start of a symbol inside its slot.
    """

    samples: np.ndarray
    v: int = 1
    origin: int = 0

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.complex128, copy=True).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        errors = ErrorCollector("SampledSignal")
        errors.check(arr.size > 0, "samples must be non-empty")
        errors.check(bool(np.all(np.isfinite(arr))), "samples must be finite")
        errors.check(
            isinstance(self.v, (int, np.integer)) and self.v >= 1,
            f"v must be a positive integer, got {self.v!r}",
        )
        errors.raise_if_any()

    def __len__(self) -> int:
        return self.samples.size

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}<{len(self)} samples, v={self.v}>"

    @property
    def power(self) -> float:
        """Mean power of the samples."""
        return float(np.mean(np.abs(self.samples) ** 2))

    def with_samples(self, samples: ArrayLike) -> SampledSignal:
        return replace(self, samples=samples)

    def padded(self, length: int) -> SampledSignal:
        """Zero-pad (or cut) to ``length`` samples."""
        out = np.zeros(length, dtype=np.complex128)
        n = min(length, len(self))
        out[:n] = self.samples[:n]
        return self.with_samples(out)


def _check_alpha(errors: ErrorCollector, alpha: float, label: str) -> None:
    errors.check(
        math.isfinite(alpha) and 0.0 <= alpha <= 1.0,
        f"{label} must be in [0, 1], got {alpha!r}",
    )


@dataclass(frozen=True)
class PulseSpec:
    """Roll-off factors of the negative-x and positive-x sides of a pulse."""

    alpha_left: float
    alpha_right: float

    def __post_init__(self):
        object.__setattr__(self, "alpha_left", float(self.alpha_left))
        object.__setattr__(self, "alpha_right", float(self.alpha_right))
        errors = ErrorCollector("PulseSpec")
        _check_alpha(errors, self.alpha_left, "alpha_left")
        _check_alpha(errors, self.alpha_right, "alpha_right")
        errors.raise_if_any()

    @classmethod
    def symmetric(cls, alpha: float) -> PulseSpec:
        return cls(alpha, alpha)

    @property
    def is_symmetric(self) -> bool:
        return self.alpha_left == self.alpha_right

    def swapped(self) -> PulseSpec:
        return PulseSpec(self.alpha_right, self.alpha_left)


@dataclass(frozen=True)
class RolloffProfile:
    """
    Per-pulse roll-off pairs ordered from the symbol start to the symbol end.

    The profile is mirror-symmetric about the symbol center and the edge-facing
    roll-off does not increase from the outermost pulse toward the center.
    """

    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple((float(l), float(r)) for l, r in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        errors = ErrorCollector("RolloffProfile")
        errors.check(len(pairs) > 0, "profile must have at least one pulse")
        n = len(pairs)
        for k, (l, r) in enumerate(pairs):
            _check_alpha(errors, l, f"alpha_left of pulse {k}")
            _check_alpha(errors, r, f"alpha_right of pulse {k}")
        for k in range(n // 2 + n % 2):
            l, r = pairs[k]
            ml, mr = pairs[n - 1 - k]
            errors.check(
                abs(l - mr) < 1e-12 and abs(r - ml) < 1e-12,
                f"pulse {k} is not the mirror image of pulse {n - 1 - k}",
            )
        edge = self.outer
        for k in range(1, len(edge)):
            errors.check(
                edge[k] <= edge[k - 1] + 1e-12,
                f"edge-facing alpha increases at pulse {k}",
            )
        errors.raise_if_any()

    @classmethod
    def mirrored(
        cls,
        outer: Sequence[float],
        inner: Sequence[float] | None = None,
        n_pulses: int | None = None,
    ) -> RolloffProfile:
        """
        Build a profile from the edge-facing alphas of the first half.

        Parameters
        ----------
        outer : sequence of float
            Edge-facing alphas from the outermost pulse inward.
        inner : sequence of float, optional
            Center-facing alphas of the same pulses. Symmetric pulses if not given.
        n_pulses : int, optional
            Number of pulses of the symbol. Pulses between the two halves take
            the last given alphas. Defaults to ``2 * len(outer)``.
        """
        outer = [float(a) for a in outer]
        if inner is None:
            inner = list(outer)
        else:
            inner = [float(a) for a in inner]
        if len(inner) != len(outer):
            raise ValueError("Lengths of outer and inner alphas must match.")
        if n_pulses is None:
            n_pulses = 2 * len(outer)
        if n_pulses < 1:
            raise ValueError(f"n_pulses must be positive, got {n_pulses}.")
        half = (n_pulses + 1) // 2
        fill = outer[-1]
        left = []
        for k in range(half):
            if k < len(outer):
                left.append((outer[k], inner[k]))
            else:
                left.append((fill, fill))
        if n_pulses % 2 == 1:
            # the middle pulse is its own mirror image
            l, r = left[-1]
            left[-1] = (l, l)
            right = [(r, l) for l, r in reversed(left[:-1])]
        else:
            right = [(r, l) for l, r in reversed(left)]
        return cls(tuple(left + right))

    @property
    def n_pulses(self) -> int:
        return len(self.pairs)

    @property
    def outer(self) -> tuple[float, ...]:
        """Edge-facing alphas of the first half, outermost first."""
        n = len(self.pairs)
        return tuple(self.pairs[k][0] for k in range(n // 2 + n % 2))

    def spec(self, n: int) -> PulseSpec:
        """PulseSpec of pulse ``n``."""
        return PulseSpec(*self.pairs[n])

    def specs(self) -> list[PulseSpec]:
        return [PulseSpec(*p) for p in self.pairs]


@dataclass(frozen=True)
class WarpDerivativeParams:
    """Parameters of the double-sigmoid warping derivative (times in T_N)."""

    s_out: float
    s_in: float
    t1: float
    t2: float
    t_cap: float

    def __post_init__(self):
        for name in ("s_out", "s_in", "t1", "t2", "t_cap"):
            object.__setattr__(self, name, float(getattr(self, name)))
        errors = ErrorCollector("WarpDerivativeParams")
        for problem in self.problems():
            errors.add(problem)
        errors.raise_if_any()

    def problems(self) -> list[str]:
        return _param_problems(self.s_out, self.s_in, self.t1, self.t2, self.t_cap)

    @classmethod
    def symmetric(
        cls, s_out: float, s_in: float, t_edge: float, t_cap: float
    ) -> WarpDerivativeParams:
        return cls(s_out, s_in, -abs(t_edge), abs(t_edge), t_cap)

    @classmethod
    def identity(cls) -> WarpDerivativeParams:
        return cls(1.0, 1.0, -1.0, 1.0, 1.0)

    def as_vector(self) -> np.ndarray:
        return np.array([self.s_out, self.s_in, self.t1, self.t2, self.t_cap])

    @classmethod
    def from_vector(cls, vec: Iterable[float]) -> WarpDerivativeParams:
        return cls(*[float(v) for v in vec])


def _param_problems(s_out, s_in, t1, t2, t_cap) -> list[str]:
    out = []
    if not all(math.isfinite(v) for v in (s_out, s_in, t1, t2, t_cap)):
        return ["all parameters must be finite"]
    if not 0 < s_out <= s_in <= 1:
        out.append(f"need 0 < s_out <= s_in <= 1, got s_out={s_out}, s_in={s_in}")
    if not t1 < t2:
        out.append(f"need t1 < t2, got t1={t1}, t2={t2}")
    if not t_cap > 0:
        out.append(f"t_cap must be positive, got {t_cap}")
    return out


@dataclass(frozen=True, eq=False)
class WarpingMap:
    """
    Piecewise cubic warping map from oversampled sample positions to pulse indices.

    The spline passes through ``(anchors[k], first_index + k)`` and is C² at every
    knot. Segment ``k`` is stored as local coefficients ``(a, b, c, d)`` so that
    ``a*dx**3 + b*dx**2 + c*dx + d`` with ``dx = x - knots[k]``.
    """

    anchors: Tuple[int, ...]
    first_index: int = 0
    knots: Tuple[int, ...] = field(init=False)
    segments: Tuple[Tuple[float, float, float, float], ...] = field(init=False)

    def __post_init__(self):
        anchors = tuple(int(a) for a in self.anchors)
        if any(a != b for a, b in zip(anchors, self.anchors)):
            raise DomainError("anchors must be integers", name="WarpingMap")
        object.__setattr__(self, "anchors", anchors)
        errors = ErrorCollector("WarpingMap")
        errors.check(len(anchors) >= 2, "at least two anchors are needed")
        diffs = np.diff(anchors)
        errors.check(
            bool(np.all(diffs > 0)), "anchors must be strictly increasing"
        )
        errors.raise_if_any()

        coef = spline_coefficients(anchors, self.first_index)
        object.__setattr__(self, "knots", anchors)
        object.__setattr__(self, "segments", tuple(tuple(map(float, c)) for c in coef))
        object.__setattr__(self, "_knots", np.asarray(anchors, dtype=np.float64))
        object.__setattr__(self, "_coef", coef)

        slope = self.slope(np.arange(anchors[0], anchors[-1] + 1, dtype=np.float64))
        if np.min(slope) <= 0:
            bad = int(anchors[0] + np.argmin(slope))
            raise MonotonicityError(
                f"Warping map is not strictly increasing around sample {bad}."
            )

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}<{len(self.anchors)} anchors, "
            f"samples {self.anchors[0]}..{self.anchors[-1]}>"
        )

    @classmethod
    def from_anchors(cls, anchors: Iterable[int], first_index: int = 0) -> WarpingMap:
        return cls(tuple(anchors), first_index=first_index)

    @classmethod
    def identity(cls, n_anchors: int, v: int = 1) -> WarpingMap:
        """Uniform map with anchors every ``v`` samples."""
        return cls(tuple(range(0, n_anchors * v, v)))

    @property
    def domain(self) -> tuple[int, int]:
        return self.anchors[0], self.anchors[-1]

    @property
    def length(self) -> int:
        """Number of samples covered by the map."""
        return self.anchors[-1] - self.anchors[0] + 1

    @property
    def indices(self) -> range:
        return range(self.first_index, self.first_index + len(self.anchors))

    def _locate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.domain
        if x.size and (np.min(x) < lo or np.max(x) > hi):
            raise DomainError(
                f"positions must be within [{lo}, {hi}]", name="warp position"
            )
        seg = np.searchsorted(self._knots, x, side="right") - 1
        seg = np.clip(seg, 0, len(self.anchors) - 2)
        return seg, x - self._knots[seg]

    def __call__(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        seg, dx = self._locate(x)
        a, b, c, d = (self._coef[seg, i] for i in range(4))
        out = ((a * dx + b) * dx + c) * dx + d
        # exact values at the anchors
        pos = np.searchsorted(self._knots, x)
        pos = np.minimum(pos, len(self.anchors) - 1)
        hit = self._knots[pos] == x
        out = np.where(hit, (self.first_index + pos).astype(np.float64), out)
        return out

    def slope(self, x: ArrayLike) -> np.ndarray:
        """First derivative of the map."""
        x = np.asarray(x, dtype=np.float64)
        seg, dx = self._locate(x)
        a, b, c = (self._coef[seg, i] for i in range(3))
        return (3 * a * dx + 2 * b) * dx + c

    def curvature(self, x: ArrayLike) -> np.ndarray:
        """Second derivative of the map."""
        x = np.asarray(x, dtype=np.float64)
        seg, dx = self._locate(x)
        a, b = (self._coef[seg, i] for i in range(2))
        return 6 * a * dx + 2 * b


def spline_coefficients(anchors: Sequence[int], first_index: int = 0) -> np.ndarray:
    """Local cubic coefficients of the C² spline through ``(anchors[k], first_index + k)``."""
    from scipy.interpolate import CubicSpline

    x = np.asarray(anchors, dtype=np.float64)
    y = first_index + np.arange(x.size, dtype=np.float64)
    spline = CubicSpline(x, y, bc_type="not-a-knot")
    coef = np.ascontiguousarray(spline.c.T)
    # the constant terms are the integer indices themselves
    coef[:, 3] = y[:-1]
    return coef


@dataclass(frozen=True, eq=False)
class WaveformConfig:
    """
    A warped single-carrier waveform.

    The warping map has one anchor per zero head, data pulse and zero tail. Data
    pulse ``n`` peaks at warped coordinate ``first_index + z_h + n``.
    """

    n_pulses: int
    z_h: int
    z_t: int
    v: int
    qam_order: int
    profile: RolloffProfile
    warp: WarpingMap
    name: str = "warped"
    window: int | None = None
    rx_band: float = 1.0

    def __post_init__(self):
        errors = ErrorCollector("WaveformConfig")
        errors.check(self.n_pulses >= 1, f"n_pulses must be >= 1, got {self.n_pulses}")
        errors.check(self.z_h >= 0, f"z_h must be >= 0, got {self.z_h}")
        errors.check(self.z_t >= 0, f"z_t must be >= 0, got {self.z_t}")
        errors.check(self.v >= 1, f"v must be >= 1, got {self.v}")
        errors.check(
            self.qam_order in QAM_ORDERS,
            f"qam_order must be one of {QAM_ORDERS}, got {self.qam_order}",
        )
        errors.check(
            self.profile.n_pulses == self.n_pulses,
            f"profile has {self.profile.n_pulses} pulses, expected {self.n_pulses}",
        )
        n_anchor = self.n_pulses + self.z_h + self.z_t
        errors.check(
            len(self.warp.anchors) == n_anchor,
            f"warp has {len(self.warp.anchors)} anchors, expected {n_anchor}",
        )
        errors.check(self.rx_band > 0, f"rx_band must be positive, got {self.rx_band}")
        if self.window is not None:
            w = self.window
            errors.check(
                w >= self.warp.length and w & (w - 1) == 0,
                f"window must be a power of two >= {self.warp.length}, got {w}",
            )
        errors.raise_if_any()
        if 2 * self.keep_bins > self.window_length:
            raise DomainError(
                f"rx_band={self.rx_band} keeps more bins than the window has",
                name="WaveformConfig",
            )

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}<{self.name!r}, N={self.n_pulses}, "
            f"guards=[{self.z_h},{self.z_t}], v={self.v}, {self.qam_order}-QAM>"
        )

    @property
    def length(self) -> int:
        """Symbol length in samples."""
        return self.warp.length

    @property
    def window_length(self) -> int:
        """Receiver window, the smallest power of two holding the symbol by default."""
        if self.window is not None:
            return self.window
        return 1 << (self.length - 1).bit_length()

    @property
    def effective_v(self) -> float:
        """Average samples per anchor step over the fitted map."""
        return (self.warp.anchors[-1] - self.warp.anchors[0]) / (len(self.warp.anchors) - 1)

    @property
    def keep_bins(self) -> int:
        """Half-width of the receiver band in bins."""
        return int(math.ceil(self.rx_band * self.window_length / self.v - 1e-9))

    def pulse_index(self, n: int) -> int:
        """Warped coordinate of data pulse ``n``."""
        return self.warp.first_index + self.z_h + n

    def data_anchor_offsets(self) -> np.ndarray:
        """Sample offsets of the data pulse peaks from the symbol start."""
        anchors = np.asarray(self.warp.anchors)
        return anchors[self.z_h : self.z_h + self.n_pulses] - anchors[0]


@dataclass(frozen=True)
class LinkScenario:
    """Channel, interference and noise setup of one BER experiment."""

    tau_rms: float = 0.0
    time_offset: int = 0
    freq_offset_bins: int = 0
    p_imb_time_db: float = 0.0
    p_imb_freq_db: float = 0.0
    snr_db: float = math.inf
    seed: int = 0
    n_bits: int = 100_000
    time_interferer: bool = False
    freq_interferer: bool = False
    n_taps: int | None = None

    def __post_init__(self):
        errors = ErrorCollector("LinkScenario")
        errors.check(
            math.isfinite(self.tau_rms) and self.tau_rms >= 0,
            f"tau_rms must be >= 0, got {self.tau_rms}",
        )
        errors.check(self.n_bits > 0, f"n_bits must be positive, got {self.n_bits}")
        errors.check(self.seed >= 0, f"seed must be non-negative, got {self.seed}")
        errors.check(
            not math.isnan(self.snr_db), "snr_db must be a number or inf"
        )
        if self.n_taps is not None:
            errors.check(self.n_taps >= 1, f"n_taps must be >= 1, got {self.n_taps}")
        errors.raise_if_any()

    @property
    def taps(self) -> int:
        """Number of channel taps."""
        if self.n_taps is not None:
            return self.n_taps
        return int(math.ceil(8 * self.tau_rms)) + 1

    def with_updates(self, **kwargs) -> LinkScenario:
        return replace(self, **kwargs)


class OpCount(NamedTuple):
    """Operation count of a transform."""

    butterflies: int
    complex_mults: int

    def __add__(self, other: OpCount) -> OpCount:
        return OpCount(
            self.butterflies + other.butterflies,
            self.complex_mults + other.complex_mults,
        )
