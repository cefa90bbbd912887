"""
Desk-scale global search used to validate reformulations without an SDP solver:
a uniform grid over a box, repeated zooming around the best feasible points,
and a coordinate-descent polish.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from core.config import Limits, Tolerances
from core.errors import PreconditionError

logger = logging.getLogger("DeskSearch")

BatchFunction = Callable[[np.ndarray], np.ndarray]


@dataclass
class SearchResult:
    """
    :param value: Best objective value found (inf when nothing feasible was seen)
    :param point: Minimizer candidate
    :param boundary_hit: The candidate touches the search box
    :param unbounded: The objective dropped below Limits.UNBOUNDED_VALUE
    :param evaluations: Number of objective evaluations
    """
    value: float
    point: Optional[np.ndarray]
    boundary_hit: bool = False
    unbounded: bool = False
    evaluations: int = 0

    @property
    def feasible(self) -> bool:
        return self.point is not None


def grid(lower: np.ndarray, upper: np.ndarray, points_per_axis: int) -> np.ndarray:
    """All points of a uniform tensor grid, shape (points_per_axis**dim, dim)."""
    axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(lower, upper)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _points_per_axis(dim: int, requested: int) -> int:
    """Grid points per axis, lowered so that a sweep stays within Limits.GRID_BUDGET points."""
    if dim == 0:
        return 1
    budget_points = int(Limits.GRID_BUDGET ** (1.0 / dim) + 1e-9)
    per_axis = max(3, min(requested, budget_points))
    if per_axis < requested:
        logger.debug(f"Grid lowered from {requested} to {per_axis} points per axis in dimension {dim}")
    return per_axis


class DeskMinimizer:
    """
    Minimize a batched objective over a box intersected with a batched feasibility mask.
    """

    def __init__(self, objective: BatchFunction, feasible: Optional[BatchFunction] = None,
                 points: int = Limits.GRID_POINTS, rounds: int = Limits.ZOOM_ROUNDS,
                 starts: int = 3, tol: float = Tolerances.SEARCH):
        """
        :param objective: Maps a (k, dim) array of points to k values
        :param feasible: Maps a (k, dim) array to a boolean mask (None = everything feasible)
        :param points: Grid points per axis on the first sweep
        :param rounds: Number of zoom rounds per start
        :param starts: How many of the best grid points seed a zoom track
        :param tol: Step size at which the coordinate-descent polish stops
        """
        self.objective = objective
        self.feasible = feasible
        self.points = points
        self.rounds = rounds
        self.starts = starts
        self.tol = tol
        self.evaluations = 0

    def _evaluate(self, pts: np.ndarray) -> np.ndarray:
        self.evaluations += pts.shape[0]
        values = np.real(np.asarray(self.objective(pts), dtype=complex)).astype(float)
        if self.feasible is not None:
            mask = np.asarray(self.feasible(pts), dtype=bool)
            values = np.where(mask, values, np.inf)
        return values

    def minimize(self, lower: Sequence[float], upper: Sequence[float]) -> SearchResult:
        """
        :param lower: Box lower corner
        :param upper: Box upper corner
        :return: SearchResult
        :raises PreconditionError: On an empty or inverted box
        """
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != upper.shape or np.any(upper < lower):
            raise PreconditionError(f"Invalid search box {lower} .. {upper}")
        dim = lower.shape[0]
        self.evaluations = 0
        if dim == 0:
            value = float(self._evaluate(np.zeros((1, 0)))[0])
            point = np.zeros(0) if np.isfinite(value) else None
            return SearchResult(value, point, evaluations=self.evaluations)

        per_axis = _points_per_axis(dim, self.points)
        pts = grid(lower, upper, per_axis)
        values = self._evaluate(pts)
        order = np.argsort(values, kind="stable")
        seeds = [pts[i] for i in order[:self.starts] if np.isfinite(values[i])]
        if not seeds:
            logger.warning("No feasible grid point in the search box")
            return SearchResult(float("inf"), None, evaluations=self.evaluations)

        best_value, best_point = float(values[order[0]]), pts[order[0]].copy()
        for seed in seeds:
            value, point = self._zoom(seed, lower, upper, per_axis)
            value, point = self._polish(point, value, lower, upper)
            if value < best_value:
                best_value, best_point = value, point
            if best_value < Limits.UNBOUNDED_VALUE:
                break

        span = np.maximum(upper - lower, 1.0)
        boundary = bool(np.any(np.minimum(best_point - lower, upper - best_point) <= 1e-6 * span))
        unbounded = best_value < Limits.UNBOUNDED_VALUE
        if unbounded:
            logger.warning(f"Objective dropped below {Limits.UNBOUNDED_VALUE:g}: treated as unbounded")
        logger.debug(f"Desk search: value {best_value:.10g} after {self.evaluations} evaluations")
        return SearchResult(best_value, best_point, boundary, unbounded, self.evaluations)

    def _zoom(self, center: np.ndarray, lower: np.ndarray, upper: np.ndarray, per_axis: int):
        half = (upper - lower) / 2.0
        best_point = center.copy()
        best_value = float(self._evaluate(center[None, :])[0])
        for _ in range(self.rounds):
            half = half / 2.0
            lo = np.maximum(lower, best_point - half)
            hi = np.minimum(upper, best_point + half)
            pts = grid(lo, hi, per_axis)
            values = self._evaluate(pts)
            index = int(np.argmin(values))
            if values[index] < best_value:
                best_value, best_point = float(values[index]), pts[index].copy()
            if np.all(half < self.tol * 1e-3):
                break
        return best_value, best_point

    def _polish(self, point: np.ndarray, value: float, lower: np.ndarray, upper: np.ndarray):
        """Compass moves along coordinate axes with step halving."""
        step = max(float(np.max(upper - lower)) / (4 * self.points), self.tol)
        point = point.copy()
        moves = 0
        while step >= self.tol * 1e-3 and moves < Limits.REWRITE_STEPS:
            moves += 1
            improved = False
            for axis in range(point.shape[0]):
                for direction in (1.0, -1.0):
                    trial = point.copy()
                    trial[axis] = np.clip(trial[axis] + direction * step, lower[axis], upper[axis])
                    trial_value = float(self._evaluate(trial[None, :])[0])
                    if trial_value < value:
                        point, value, improved = trial, trial_value, True
                        break
            if not improved:
                step /= 2.0
        return value, point
