from __future__ import annotations
import logging
import math
from typing import NamedTuple

import numpy as np
from psygnal import Signal, SignalGroup
from scipy.optimize import minimize

from .._errors import InfeasibleDesignError, ValidationError
from ..types import RolloffProfile, WarpDerivativeParams
from ._leakage import TAIL, pulse_leakages
from ._smooth import WarpShape, edge_coordinate, expansion_D, integrate_wdot

logger = logging.getLogger(__name__)

PENALTY = 1e6
INVALID = 1e9


class OptimizerSignals(SignalGroup):
    """Signal group of a WarpOptimizer."""

    evaluated = Signal(int, float, float)  # n_evals, D, max leakage
    improved = Signal(object)  # WarpDerivativeParams
    finished = Signal(object)  # WarpSolution


class WarpSolution(NamedTuple):
    params: WarpDerivativeParams
    profile: RolloffProfile
    expansion: float
    max_leakage: float
    leakages: np.ndarray
    n_evals: int


class _Point(NamedTuple):
    params: WarpDerivativeParams
    profile: RolloffProfile
    expansion: float
    leakages: np.ndarray

    @property
    def max_leakage(self) -> float:
        return float(self.leakages.max())


def _violation(vec: np.ndarray) -> float:
    s_out, s_in, t1, t2, t_cap = vec[:5]
    parts = [-s_out, s_out - s_in, s_in - 1, t1 - t2, -t_cap]
    parts.extend(-vec[5:])
    parts.extend(vec[5:] - 1)
    if not np.all(np.isfinite(vec)):
        return math.inf
    return float(sum(max(0.0, p) for p in parts))


class WarpOptimizer:
    """
    Downhill-simplex design of the warping derivative.

    Minimizes the expansion ``D`` of the symbol with the per-pulse leakage bound
    added as a penalty. Only points meeting the bound are returned.
    """

    def __init__(
        self,
        profile: RolloffProfile,
        xi: float = 0.003,
        *,
        f_m: float = 0.5,
        shape: WarpShape | str = WarpShape.double,
        free_inner: bool = False,
        max_evals: int = 2000,
    ):
        if not xi > 0:
            raise ValidationError(f"xi must be positive, got {xi}", name="optimizer")
        self.events = OptimizerSignals()
        self._profile = profile
        self._xi = float(xi)
        self._f_m = float(f_m)
        self._shape = WarpShape(shape)
        self._free_inner = free_inner
        self._max_evals = int(max_evals)
        self._edge = edge_coordinate(profile.n_pulses)
        self._n_evals = 0
        self._best: _Point | None = None
        self._best_infeasible: _Point | None = None

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}<{self._profile.n_pulses} pulses, "
            f"xi={self._xi}, free_inner={self._free_inner}>"
        )

    @property
    def xi(self) -> float:
        """Leakage bound."""
        return self._xi

    @property
    def n_inner(self) -> int:
        """Number of free inner roll-offs."""
        if not self._free_inner:
            return 0
        return self._profile.n_pulses // 2

    def profile_with(self, inner: np.ndarray) -> RolloffProfile:
        """Profile with the center-facing alphas of the first half replaced."""
        if len(inner) == 0:
            return self._profile
        outer = list(self._profile.outer)
        current = [self._profile.pairs[k][1] for k in range(len(outer))]
        current[: len(inner)] = [float(a) for a in inner]
        return RolloffProfile.mirrored(outer, current, self._profile.n_pulses)

    def evaluate(self, vec: np.ndarray) -> float:
        """Penalized objective at ``vec``."""
        self._n_evals += 1
        vec = np.asarray(vec, dtype=np.float64)
        violation = _violation(vec)
        if violation > 0:
            return INVALID * (1.0 + violation)
        params = WarpDerivativeParams.from_vector(vec[:5])
        profile = self.profile_with(vec[5:])
        table = integrate_wdot(params, shape=self._shape, reach=self._edge + TAIL + 1)
        expansion = expansion_D(params, self._edge, table=table)
        leakages = pulse_leakages(
            profile, params, self._f_m, shape=self._shape, table=table
        )
        point = _Point(params, profile, expansion, leakages)
        max_leak = point.max_leakage
        self.events.evaluated.emit(self._n_evals, expansion, max_leak)
        if max_leak < self._xi:
            if self._best is None or expansion < self._best.expansion:
                self._best = point
                self.events.improved.emit(params)
                logger.debug(
                    "eval %d: D=%.4f max leakage=%.3g", self._n_evals, expansion, max_leak
                )
        elif (
            self._best_infeasible is None
            or max_leak < self._best_infeasible.max_leakage
        ):
            self._best_infeasible = point
        return expansion + PENALTY * max(0.0, max_leak - self._xi)

    def _initial_simplex(self, x0: np.ndarray) -> np.ndarray:
        simplex = [x0]
        for i in range(x0.size):
            step = 0.1 * x0[i] if x0[i] != 0 else 0.05
            vertex = x0.copy()
            vertex[i] += step
            if _violation(vertex) > 0:
                vertex[i] = x0[i] - step
            simplex.append(vertex)
        return np.array(simplex)

    def run(self, init: WarpDerivativeParams | None = None) -> WarpSolution:
        """Run the search from ``init`` and return the best feasible design."""
        if init is None:
            init = WarpDerivativeParams.symmetric(0.5, 0.95, self._edge, 2.0)
        inner0 = [self._profile.pairs[k][1] for k in range(self.n_inner)]
        x0 = np.concatenate([init.as_vector(), inner0])
        self._n_evals = 0
        self._best = None
        self._best_infeasible = None
        logger.info("optimizing warp for %r", self)
        minimize(
            self.evaluate,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": self._initial_simplex(x0),
                "maxfev": self._max_evals,
                "xatol": 1e-4,
                "fatol": 1e-6,
            },
        )
        if self._best is None:
            best = self._best_infeasible
            leakage = math.nan if best is None else best.max_leakage
            raise InfeasibleDesignError(
                f"No design met max leakage < {self._xi} in {self._n_evals} "
                f"evaluations (best {leakage:.4g}).",
                best=None if best is None else best.params,
                leakage=leakage,
            )
        best = self._best
        solution = WarpSolution(
            best.params,
            best.profile,
            best.expansion,
            best.max_leakage,
            best.leakages,
            self._n_evals,
        )
        logger.info(
            "warp design: D=%.4f, max leakage=%.4g after %d evaluations",
            solution.expansion, solution.max_leakage, solution.n_evals,
        )
        self.events.finished.emit(solution)
        return solution


def optimize_warp(
    profile: RolloffProfile,
    xi: float = 0.003,
    init: WarpDerivativeParams | None = None,
    *,
    f_m: float = 0.5,
    shape: WarpShape | str = WarpShape.double,
    free_inner: bool = False,
    max_evals: int = 2000,
) -> WarpSolution:
    """Optimize the warping derivative of ``profile`` under leakage bound ``xi``."""
    optimizer = WarpOptimizer(
        profile, xi, f_m=f_m, shape=shape, free_inner=free_inner, max_evals=max_evals
    )
    return optimizer.run(init)
