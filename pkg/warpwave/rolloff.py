"""
Roll-off profile design.

Pulses are counted from the symbol edge: pulse 1 is the edge pulse and pulse
``n`` sits ``n - 1`` symbol durations inside it. All of them leak into the first
side-lobe interval past the edge pulse, ``x`` in ``[1, 2]`` relative to the edge
pulse peak, where pulse ``n`` contributes its own ``n``-th side lobe.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import bisect

from ._errors import ConvergenceError, ErrorCollector
from .pulses import rc_time
from .types import RolloffProfile, UtilityCase

logger = logging.getLogger(__name__)

__all__ = [
    "LobeGrid",
    "lobe_amplitude",
    "first_lobe_power",
    "lobe_power",
    "utility",
    "marginal_utility",
    "solve_profile",
]

_FD_STEP = 1e-4


@dataclass(frozen=True)
class LobeGrid:
    """Integration grid over the first lobe interval past the edge pulse."""

    step: float = 1e-3
    start: float = 1.0
    stop: float = 2.0

    def __post_init__(self):
        errors = ErrorCollector("LobeGrid")
        errors.check(0 < self.step <= 1e-3, f"step must be in (0, 1e-3], got {self.step}")
        errors.check(self.start < self.stop, "start must be below stop")
        errors.raise_if_any()

    @cached_property
    def x(self) -> np.ndarray:
        n = int(round((self.stop - self.start) / self.step))
        return np.linspace(self.start, self.stop, n + 1)

    def refined(self, factor: int = 10) -> LobeGrid:
        return LobeGrid(self.step / factor, self.start, self.stop)

    def integrate(self, y: np.ndarray) -> float:
        return float(simpson(y, x=self.x))


def lobe_amplitude(n: int, alpha: float, x) -> np.ndarray:
    """Tail amplitude of pulse ``n`` (1 = edge) at edge-relative position ``x``."""
    if n < 1:
        raise ValueError(f"Pulse index must be >= 1, got {n}.")
    return np.asarray(rc_time(alpha, np.asarray(x, dtype=np.float64) + n - 1))


def lobe_power(n: int, alpha: float, grid: LobeGrid | None = None) -> float:
    """Power of pulse ``n``'s tail over the lobe interval."""
    grid = grid or LobeGrid()
    return grid.integrate(lobe_amplitude(n, alpha, grid.x) ** 2)


def _coherent_sum(alphas: Sequence[float], grid: LobeGrid) -> np.ndarray:
    total = np.zeros_like(grid.x)
    for n, a in enumerate(alphas, start=1):
        total += np.abs(lobe_amplitude(n, a, grid.x))
    return total


def first_lobe_power(alphas: Sequence[float], grid: LobeGrid | None = None) -> float:
    """Power under the first out-of-band lobe when all tails add in phase."""
    if len(alphas) == 0:
        raise ValueError("alphas must be non-empty.")
    grid = grid or LobeGrid()
    return grid.integrate(_coherent_sum(alphas, grid) ** 2)


def utility(
    case: UtilityCase | int,
    n: int,
    alphas: Sequence[float],
    grid: LobeGrid | None = None,
) -> float:
    """
    Lobe power suppressed by shaping pulse ``n`` with ``alphas[n - 1]``.

    The coherent case compares the composite lobe with and without the shaping
    of pulse ``n``, so the cross terms with the other tails count. The power
    difference case only looks at pulse ``n`` itself.
    """
    case = UtilityCase(case)
    if case is UtilityCase.equal_lobe_power:
        raise ValueError("Equal lobe power case has no utility function.")
    if not 1 <= n <= len(alphas):
        raise ValueError(f"Pulse index {n} out of range for {len(alphas)} alphas.")
    grid = grid or LobeGrid()
    alpha = alphas[n - 1]
    if case is UtilityCase.power_difference:
        unshaped = lobe_amplitude(n, 0.0, grid.x)
        shaped = lobe_amplitude(n, alpha, grid.x)
        return grid.integrate(unshaped**2 - shaped**2)
    others = _coherent_sum(alphas, grid) - np.abs(lobe_amplitude(n, alpha, grid.x))
    unshaped = others + np.abs(lobe_amplitude(n, 0.0, grid.x))
    shaped = others + np.abs(lobe_amplitude(n, alpha, grid.x))
    return grid.integrate(unshaped**2 - shaped**2)


def marginal_utility(
    case: UtilityCase | int,
    n: int,
    alphas: Sequence[float],
    grid: LobeGrid | None = None,
) -> float:
    """
    Utility gained per unit of cost at ``alphas[n - 1]``.

    The cost of a roll-off is the warping expansion ``1 / (1 + alpha)``, so the
    ratio of the marginals is ``du/dalpha * (1 + alpha)**2``.
    """
    grid = grid or LobeGrid()
    alphas = list(alphas)
    a = alphas[n - 1]
    lo = max(a - _FD_STEP, 0.0)
    hi = min(a + _FD_STEP, 1.0)
    alphas[n - 1] = hi
    u_hi = utility(case, n, alphas, grid)
    alphas[n - 1] = lo
    u_lo = utility(case, n, alphas, grid)
    return (u_hi - u_lo) / (hi - lo) * (1.0 + a) ** 2


def _solve_marginal(case, n, alphas, target, upper, grid, tol) -> float:
    """Roll-off of pulse ``n`` in ``[0, upper]`` matching the target marginal."""
    work = list(alphas)

    def residual(a: float) -> float:
        work[n - 1] = a
        return marginal_utility(case, n, work, grid) - target

    if residual(upper) >= 0:
        return upper
    # the marginal rises from zero then decays, take the root on the decaying side
    scan = 0.01
    hi = upper
    lo = hi - scan
    while lo > 0:
        if residual(lo) >= 0:
            return bisect(residual, lo, hi, xtol=tol * 1e-2)
        hi, lo = lo, lo - scan
    if residual(0.0) >= 0:
        return bisect(residual, 0.0, hi, xtol=tol * 1e-2)
    return 0.0


def _solve_equal_power(n, target, upper, grid, tol) -> float:
    def residual(a: float) -> float:
        return lobe_power(n, a, grid) - target

    r_hi = residual(upper)
    if r_hi >= 0:
        return upper
    if residual(0.0) <= 0:
        return 0.0
    return bisect(residual, 0.0, upper, xtol=tol * 1e-2)


def solve_profile(
    case: UtilityCase | int,
    n_pulses: int,
    alpha1: float = 1.0,
    grid: LobeGrid | None = None,
    *,
    tol: float = 1e-4,
    max_iter: int = 100,
    total_pulses: int | None = None,
) -> RolloffProfile:
    """
    Solve the edge-facing roll-offs of ``n_pulses`` pulses from the edge inward.

    Parameters
    ----------
    case : UtilityCase or int
        1 (coherent utility), 2 (power difference utility) or 3 (equal lobe
        power).
    n_pulses : int
        Number of pulses to solve, counted from the edge.
    alpha1 : float
        Roll-off of the edge pulse.
    grid : LobeGrid, optional
        Integration grid of the lobe interval.
    tol : float
        Convergence tolerance on every alpha.
    max_iter : int
        Iteration cap of the utility cases.
    total_pulses : int, optional
        Pulse count of the mirrored profile. ``2 * n_pulses`` by default.

    Returns
    -------
    RolloffProfile
        Mirrored symmetric profile. ``profile.outer`` holds the solved alphas.
    """
    case = UtilityCase(case)
    errors = ErrorCollector("profile request")
    errors.check(n_pulses >= 1, f"n_pulses must be >= 1, got {n_pulses}")
    errors.check(0 < alpha1 <= 1, f"alpha1 must be in (0, 1], got {alpha1}")
    errors.raise_if_any()
    grid = grid or LobeGrid()

    def _result(alphas) -> RolloffProfile:
        return RolloffProfile.mirrored(alphas, n_pulses=total_pulses or 2 * n_pulses)

    alphas = [float(alpha1)] + [0.0] * (n_pulses - 1)
    if case is UtilityCase.equal_lobe_power:
        target = lobe_power(1, alpha1, grid)
        for n in range(2, n_pulses + 1):
            alphas[n - 1] = _solve_equal_power(n, target, alphas[n - 2], grid, tol)
        logger.info("equal lobe power profile solved: %s", np.round(alphas, 4).tolist())
        return _result(alphas)

    for it in range(max_iter):
        previous = list(alphas)
        target = marginal_utility(case, 1, alphas, grid)
        for n in range(2, n_pulses + 1):
            alphas[n - 1] = _solve_marginal(
                case, n, alphas, target, alphas[n - 2], grid, tol
            )
        change = max(abs(a - b) for a, b in zip(alphas, previous))
        logger.debug("profile iteration %d: max change %.3g", it, change)
        if change < tol:
            logger.info(
                "case %d profile solved in %d iterations: %s",
                case.value, it + 1, np.round(alphas, 4).tolist(),
            )
            return _result(alphas)
    raise ConvergenceError(
        f"Profile did not converge in {max_iter} iterations.", last=_result(alphas)
    )
