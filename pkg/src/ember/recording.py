"""Run outcomes, trajectory accounting, and evaluation plumbing shared by
every optimizer."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError


def evaluate_checked(objective, point) -> float:
    """Call the objective and reject non-finite results.

    Raises :class:`EvaluationError` carrying the offending point, so a failed
    run can report where the objective broke down.
    """
    value = float(objective(point))
    if not math.isfinite(value):
        raise EvaluationError(
            f"objective returned non-finite value {value!r}",
            agent=np.array(point, copy=True),
            value=value,
        )
    return value


class TrajectoryTracker:
    """Accumulates the Euclidean path length of appended positions.

    The running total is maintained in streaming fashion so the distance
    metric survives even when position storage is turned off for large
    experiments. Distances are summed in append order, each new point
    measured against the previously appended one.
    """

    __slots__ = ("positions", "total", "record", "_prev")

    def __init__(self, record: bool = True):
        self.positions: list[np.ndarray] = []
        self.total: float = 0.0
        self.record = record
        self._prev: np.ndarray | None = None

    def append(self, position) -> None:
        point = np.array(position, dtype=float, copy=True)
        if self._prev is not None:
            self.total += float(np.linalg.norm(point - self._prev))
        self._prev = point
        if self.record:
            self.positions.append(point)

    def __len__(self) -> int:
        return len(self.positions)


def path_length(positions) -> float:
    """Total Euclidean length of a stored position sequence.

    Brute-force re-summation over consecutive pairs; the streaming total
    kept by :class:`TrajectoryTracker` must agree with this value.
    """
    total = 0.0
    for prev, here in zip(positions, positions[1:]):
        total += float(np.linalg.norm(here - prev))
    return total


@dataclass(frozen=True)
class RunOutcome:
    """What a single optimization run reports back.

    ``fitness_history`` holds the best-so-far value at the end of each
    completed iteration and is therefore non-increasing. ``best_fitness``
    always equals the last history entry when the history is non-empty.
    ``iterations_run`` is the final value of the optimizer's iteration
    counter (equal to the requested budget when no early stop fired).
    """

    best_agent: np.ndarray
    best_fitness: float
    fitness_history: list[float] = field(repr=False)
    execution_time: float = 0.0
    total_distance: float = 0.0
    iterations_run: int = 0
