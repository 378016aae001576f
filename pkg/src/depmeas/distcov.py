"""Closed-form distance covariance / correlation V-statistics.

For samples x (n x p) and y (n x q), let a and b be the matrices of pairwise
Euclidean distances raised to a power alpha in (0, 2), and A, B their
double-centered versions. Then

    dcov2 = (1/n^2) sum A_kl B_kl  >= 0,

zero exactly when the empirical joint characteristic function factorizes, and
the statistic is consistent against every dependence alternative — which is
what fails at alpha = 2 (rejected here).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import (
    CenteredDistanceMatrix,
    DistanceMatrix,
    Sample,
    clamp_nonnegative,
)
from .errors import AlphaOutOfRange

__all__ = [
    "pairwise_distances",
    "double_center",
    "dcov2",
    "dcov2_terms",
    "dvar2",
    "dcor",
    "TermDecomposition",
]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 2.0 or not np.isfinite(alpha):
        raise AlphaOutOfRange(alpha)
    return alpha


def _as_points(points) -> np.ndarray:
    m = np.asarray(points, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    return m


def _distance_values(points: np.ndarray, alpha: float) -> np.ndarray:
    """Pairwise alpha-power distances with overflow-safe accumulation.

    cdist squares coordinate differences internally, so magnitudes beyond
    ~1e150 would overflow before the square root. A global power-of-two
    rescale keeps the accumulation in range and is exact in floating point;
    the distance is reassembled before the alpha power is applied.
    """
    peak = np.max(np.abs(points)) if points.size else 0.0
    if peak == 0.0 or 1e-150 < peak < 1e150:
        d = cdist(points, points)
    else:
        s = float(2.0 ** np.floor(np.log2(peak)))
        d = s * cdist(points / s, points / s)
    if alpha == 1.0:
        return d
    return d**alpha


def pairwise_distances(points, alpha: float = 1.0) -> DistanceMatrix:
    """Matrix of (Euclidean distance)^alpha between rows; alpha in (0, 2)."""
    alpha = _check_alpha(alpha)
    pts = _as_points(points)
    if pts.shape[0] < 2:
        raise ValueError("need at least 2 points")
    return DistanceMatrix(_distance_values(pts, alpha), alpha)


def _center_values(d: np.ndarray) -> np.ndarray:
    return d - d.mean(axis=0) - d.mean(axis=1)[:, None] + d.mean()


def double_center(d: DistanceMatrix) -> CenteredDistanceMatrix:
    """Subtract row, column, and grand means; all row/column sums become 0."""
    return CenteredDistanceMatrix(_center_values(d.d))


def _centered_pair(sample: Sample, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    a = _distance_values(sample.x, alpha)
    b = _distance_values(sample.y, alpha)
    return _center_values(a), _center_values(b)


def dcov2(sample: Sample, alpha: float = 1.0) -> float:
    """Squared distance covariance (V-statistic form)."""
    alpha = _check_alpha(alpha)
    A, B = _centered_pair(sample, alpha)
    return clamp_nonnegative(float((A * B).mean()))


@dataclass(frozen=True)
class TermDecomposition:
    """The three raw-distance sums whose combination t1 + t2 - 2*t3 is dcov2."""

    t1: float
    t2: float
    t3: float

    @property
    def statistic(self) -> float:
        return clamp_nonnegative(self.t1 + self.t2 - 2.0 * self.t3)


def dcov2_terms(sample: Sample, alpha: float = 1.0) -> TermDecomposition:
    """Decompose dcov2 over the raw (uncentered) distance matrices.

    t1 = (1/n^2) sum_kl a_kl b_kl
    t2 = [(1/n^2) sum a] * [(1/n^2) sum b]
    t3 = (1/n^3) sum_klm a_kl b_km, evaluated via row sums in O(n^2)
    """
    alpha = _check_alpha(alpha)
    a = _distance_values(sample.x, alpha)
    b = _distance_values(sample.y, alpha)
    n = a.shape[0]
    t1 = float((a * b).mean())
    t2 = float(a.mean()) * float(b.mean())
    t3 = float(a.sum(axis=1) @ b.sum(axis=1)) / n**3
    return TermDecomposition(t1, t2, t3)


def dvar2(points, alpha: float = 1.0) -> float:
    """dcov2 of a block paired with itself; 0 iff all rows coincide."""
    alpha = _check_alpha(alpha)
    A = _center_values(_distance_values(_as_points(points), alpha))
    return clamp_nonnegative(float((A * A).mean()))


def dcor(sample: Sample, alpha: float = 1.0) -> float:
    """Normalized companion: dcov2 / sqrt(dvar2_x * dvar2_y), in [0, 1].

    Either margin being constant makes the normalization meaningless; a
    constant is independent of anything, so the degenerate value is 0.
    """
    alpha = _check_alpha(alpha)
    A, B = _centered_pair(sample, alpha)
    vx = float((A * A).mean())
    vy = float((B * B).mean())
    if vx <= 0.0 or vy <= 0.0:
        return 0.0
    # Cauchy-Schwarz bounds the ratio by 1; excursions are floating residue.
    r = float((A * B).mean()) / np.sqrt(vx * vy)
    return min(clamp_nonnegative(r), 1.0)
