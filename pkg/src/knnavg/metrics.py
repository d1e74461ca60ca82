"""Quality indicators for solution sets: hypervolume, IGD, objective error.

All indicators are computed on the expectation-adjusted set: each found
solution is re-expressed by its expected (noise-free) objectives, so runs
are judged by where their solutions truly lie rather than by what the noisy
samples claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .core import ContractViolationError, Solution, objectives_matrix
from .problems import NoiseSpec, ParetoFrontSample, ZdtProblem, mean_objectives, true_front

__all__ = [
    "DEFAULT_REFERENCE",
    "DEFAULT_FRONT_SAMPLE_SIZE",
    "MetricReport",
    "adjusted_set",
    "hypervolume_2d",
    "igd",
    "delta_f",
    "compute_report",
]

# Reference point for the two-objective hypervolume. The noisy ZDT samples
# in the studied noise range stay well inside it, so no solution set is
# silently clipped to nothing.
DEFAULT_REFERENCE = (11.0, 11.0)
DEFAULT_FRONT_SAMPLE_SIZE = 1000


@dataclass(frozen=True, eq=False)
class MetricReport:
    """The three indicator values of one finished run.

    ``hv_mean_adjusted`` and ``igd_mean_adjusted`` are computed on the
    expectation-adjusted solution set; ``delta_f`` measures how far the
    reported objectives sit from those expected values. The reference point
    and front sample size record the comparison context.
    """

    hv_mean_adjusted: float
    igd_mean_adjusted: float
    delta_f: float
    reference_point: tuple[float, float]
    front_sample_size: int

    def __post_init__(self) -> None:
        for field in ("hv_mean_adjusted", "igd_mean_adjusted", "delta_f"):
            value = float(getattr(self, field))
            if not np.isfinite(value) or value < 0.0:
                raise ContractViolationError(f"{field} must be finite and non-negative")
            object.__setattr__(self, field, value)
        ref = tuple(float(v) for v in self.reference_point)
        if len(ref) != 2:
            raise ContractViolationError("reference_point must have two coordinates")
        object.__setattr__(self, "reference_point", ref)
        object.__setattr__(self, "front_sample_size", int(self.front_sample_size))

    def value(self, metric: str) -> float:
        """Look up an indicator by its short name: hv, igd or delta_f."""
        try:
            return {
                "hv": self.hv_mean_adjusted,
                "igd": self.igd_mean_adjusted,
                "delta_f": self.delta_f,
            }[metric]
        except KeyError:
            raise ContractViolationError(f"unknown metric {metric!r}") from None


def adjusted_set(
    solutions: Sequence[Solution], problem: ZdtProblem, noise: NoiseSpec
) -> list[Solution]:
    """Replace each solution's objectives by its expected objectives.

    Under the additive zero-mean noise model the expectation is the
    noise-free evaluation, so the adjustment is analytic; ``noise`` takes
    part only through that zero-mean contract. Variables and raw samples
    are preserved, and the result is aligned index by index with the input.
    """
    del noise  # zero-mean: the expectation is the noise-free evaluation
    return [
        Solution(
            variables=s.variables,
            objectives=mean_objectives(problem, s),
            raw_objectives=s.raw_objectives,
        )
        for s in solutions
    ]


def hypervolume_2d(points, reference) -> float:
    """Exact area dominated by ``points`` up to the reference point.

    Two objectives, minimization. Points that do not strictly dominate the
    reference are ignored; dominated points contribute nothing. The sweep
    sorts by f1 and accumulates each strip's improvement in f2, so the
    result is exact up to float rounding. An empty set has volume zero.
    """
    reference = np.asarray(reference, dtype=np.float64)
    if reference.shape != (2,):
        raise ContractViolationError("reference must be a 2-d point")
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        return 0.0
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ContractViolationError(f"expected (n, 2) points, got shape {pts.shape}")
    pts = pts[(pts[:, 0] < reference[0]) & (pts[:, 1] < reference[1])]
    if pts.shape[0] == 0:
        return 0.0
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    area = 0.0
    best_f2 = reference[1]
    for f1, f2 in pts[order]:
        if f2 < best_f2:
            area += (reference[0] - f1) * (best_f2 - f2)
            best_f2 = f2
    return float(area)


def igd(front: ParetoFrontSample, objectives) -> float:
    """Inverted generational distance from the true front to a solution set.

    The mean, over the front sample, of each front point's Euclidean
    distance to its nearest solution. Lower is better; zero means every
    front point coincides with some solution.
    """
    objs = np.asarray(objectives, dtype=np.float64)
    if objs.size == 0:
        raise ContractViolationError("solution set must be non-empty")
    if objs.ndim != 2 or objs.shape[1] != front.points.shape[1]:
        raise ContractViolationError(
            f"objective matrix shape {objs.shape} does not match front dimension"
        )
    return float(cdist(front.points, objs).min(axis=1).mean())


def delta_f(solutions: Sequence[Solution], adjusted: Sequence[Solution]) -> float:
    """Mean Euclidean distance between reported and expected objectives.

    ``adjusted`` must be the index-aligned expectation-adjusted counterpart
    of ``solutions``. Zero means the reported objectives were exact; large
    values mean the search believed numbers far from the truth.
    """
    if len(solutions) != len(adjusted) or not solutions:
        raise ContractViolationError("need equally sized, non-empty paired sets")
    reported = objectives_matrix(solutions)
    expected = objectives_matrix(adjusted)
    if reported.shape != expected.shape:
        raise ContractViolationError("paired sets have mismatching objective dimensions")
    return float(np.linalg.norm(reported - expected, axis=1).mean())


def compute_report(
    solutions: Sequence[Solution],
    problem: ZdtProblem,
    noise: NoiseSpec,
    reference: tuple[float, float] = DEFAULT_REFERENCE,
    front_sample_size: int = DEFAULT_FRONT_SAMPLE_SIZE,
) -> MetricReport:
    """All three indicators of a final solution set, in one report."""
    if not solutions:
        raise ContractViolationError("cannot score an empty solution set")
    adjusted = adjusted_set(solutions, problem, noise)
    adjusted_objs = objectives_matrix(adjusted)
    front = true_front(problem, front_sample_size)
    return MetricReport(
        hv_mean_adjusted=hypervolume_2d(adjusted_objs, reference),
        igd_mean_adjusted=igd(front, adjusted_objs),
        delta_f=delta_f(solutions, adjusted),
        reference_point=tuple(float(v) for v in reference),
        front_sample_size=front_sample_size,
    )
