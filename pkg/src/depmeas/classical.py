"""Classical baseline dependence measures.

These are the coefficients the integral/distance statistics are meant to
outperform: the monotone-type correlations (Pearson, Spearman, Kendall,
Fisher-Yates normal-scores) all sit near zero for nonmonotone or
shared-scaling dependence, while the EDF-based BKR statistic is the
transparent plug-in form of the empirical-process lineage.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateColumn
from .scores import midranks, normal_scores

__all__ = ["pearson", "spearman", "kendall", "fisher_yates", "bkr_statistic"]


def _as_vector(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=np.float64)
    if a.ndim == 2 and a.shape[1] == 1:
        a = a[:, 0]
    if a.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector")
    return a


def _paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    xv, yv = _as_vector(x, "x"), _as_vector(y, "y")
    if xv.size != yv.size:
        raise ValueError(f"length mismatch: {xv.size} vs {yv.size}")
    if xv.size < 2:
        raise ValueError("need at least 2 observations")
    return xv, yv


def pearson(x, y) -> float:
    """Sample product-moment correlation, in [-1, 1]."""
    xv, yv = _paired(x, y)
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateColumn("correlation undefined for a constant column")
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def spearman(x, y) -> float:
    """Pearson correlation of the midranks."""
    xv, yv = _paired(x, y)
    return pearson(midranks(xv), midranks(yv))


def kendall(x, y) -> float:
    """Tie-corrected tau-b via an O(n^2) pair scan."""
    xv, yv = _paired(x, y)
    n = xv.size
    sx = np.sign(xv[:, None] - xv[None, :])
    sy = np.sign(yv[:, None] - yv[None, :])
    # Sum over unordered pairs of sign products: concordant minus discordant.
    s = float((sx * sy).sum()) / 2.0

    n0 = n * (n - 1) // 2
    tie_x = _tie_pair_count(xv)
    tie_y = _tie_pair_count(yv)
    denom_x = n0 - tie_x
    denom_y = n0 - tie_y
    if denom_x == 0 or denom_y == 0:
        raise DegenerateColumn("tau-b undefined when a column is fully tied")
    return s / float(np.sqrt(float(denom_x) * float(denom_y)))


def _tie_pair_count(v: np.ndarray) -> int:
    _, counts = np.unique(v, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def fisher_yates(x, y) -> float:
    """Pearson correlation of the normal scores of x and y."""
    xv, yv = _paired(x, y)
    return pearson(normal_scores(xv), normal_scores(yv))


def bkr_statistic(x, y) -> float:
    """Mean squared gap between the joint EDF and the product of marginal EDFs.

    B = (1/n) sum_i [F_xy(x_i, y_i) - F_x(x_i) F_y(y_i)]^2 with right-closed
    (<=) empirical CDFs evaluated at the sample points; B in [0, 1/4].
    """
    xv, yv = _paired(x, y)
    n = xv.size
    x_le = xv[None, :] <= xv[:, None]  # (i, j): x_j <= x_i
    y_le = yv[None, :] <= yv[:, None]
    f_joint = (x_le & y_le).sum(axis=1) / n
    f_x = x_le.sum(axis=1) / n
    f_y = y_le.sum(axis=1) / n
    return float(((f_joint - f_x * f_y) ** 2).mean())
