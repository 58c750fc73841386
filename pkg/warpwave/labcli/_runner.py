from __future__ import annotations
import logging
from typing import Any, Callable, Sequence

from joblib import Parallel, delayed
from psygnal import Signal, SignalGroup

logger = logging.getLogger(__name__)


class SweepSignals(SignalGroup):
    """Signal group of a SweepRunner."""

    started = Signal(int)  # number of points
    point_done = Signal(int, object)  # sweep index, result
    finished = Signal()


class SweepRunner:
    """
    Evaluate ``func`` at every sweep point, optionally in worker processes.

    Results are returned in sweep order whatever the completion order is.
    """

    def __init__(self, func: Callable[..., Any], workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be positive, got {workers}.")
        self._func = func
        self._workers = workers
        self.events = SweepSignals()

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}<{self._func.__name__}, workers={self._workers}>"

    @property
    def workers(self) -> int:
        return self._workers

    def run(self, points: Sequence[tuple]) -> list[Any]:
        """Run ``func(*point)`` for every point."""
        self.events.started.emit(len(points))
        if self._workers == 1:
            results = (self._func(*args) for args in points)
        else:
            results = Parallel(n_jobs=self._workers, return_as="generator")(
                delayed(self._func)(*args) for args in points
            )
        out = []
        for i, result in enumerate(results):
            logger.debug("sweep point %d/%d done", i + 1, len(points))
            self.events.point_done.emit(i, result)
            out.append(result)
        self.events.finished.emit()
        return out
