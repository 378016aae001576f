"""Permutation tests and precomputed null tables.

Under independence the pairing of y rows to x rows is exchangeable, so
permuting the y block generates the exact null. Every permutation comes from
its own keyed stream (seed, permutation index), statistics are written into
the result array by index, and partial work is combined in index order —
results are therefore byte-identical for any number of worker threads.

For rank-based transforms the null depends only on (n, method): the statistic
on the fixed score vector paired with random permutations of itself simulates
it once, and the resulting quantile table serves any continuous data of the
same size. The engines cache the fixed marginal structures (centered distance
matrix of the scores, phase matrices) once per table or test, so each
replication is a cheap gather rather than a recomputation.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import classical
from ._rng import NULL_TABLE_STREAM_BASE, PERMUTATION_STREAM_BASE, permutation
from .core import (
    DependenceResult,
    Method,
    Sample,
    Transform,
    clamp_nonnegative,
    validate,
)
from .distcov import _center_values, _distance_values, _check_alpha
from .ecf import QuadratureSpec, WeightSpec, _F93Plan
from .errors import (
    DegenerateColumn,
    InsufficientPermutations,
    TableMismatch,
    UnsupportedDimension,
    UnsupportedTransform,
)
from .scores import apply_transform, midranks, normal_scores

__all__ = [
    "MethodSpec",
    "evaluate",
    "PermutationTestResult",
    "permutation_test",
    "NullTable",
    "TABLE_LEVELS",
    "build_null_table",
    "save_null_table",
    "load_null_table",
    "TableDecision",
    "test_with_table",
]

TABLE_LEVELS = (0.90, 0.95, 0.99)


@dataclass(frozen=True)
class MethodSpec:
    """Everything needed to evaluate one statistic reproducibly."""

    method: Method
    alpha: float = 1.0
    transform: Transform = Transform.RAW
    weight: WeightSpec = field(default_factory=WeightSpec)
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)


# ---------------------------------------------------------------------------
# Permutation engines: statistic precomputed once, re-evaluated per permutation
# ---------------------------------------------------------------------------


class _DistanceEngine:
    """dcov2 / dcor: centered distance matrices built once, y side gathered."""

    def __init__(self, sample: Sample, spec: MethodSpec):
        alpha = _check_alpha(spec.alpha)
        self.a = _center_values(_distance_values(sample.x, alpha))
        self.b = _center_values(_distance_values(sample.y, alpha))
        self.normalized = spec.method is Method.DCOR
        if self.normalized:
            vx = float((self.a * self.a).mean())
            # dvar2 of y is invariant under row permutation: same matrix, reordered.
            vy = float((self.b * self.b).mean())
            self.denom = np.sqrt(vx * vy) if vx > 0.0 and vy > 0.0 else 0.0

    def stat(self, perm: np.ndarray | None) -> float:
        b = self.b if perm is None else self.b[np.ix_(perm, perm)]
        v = float((self.a * b).mean())
        if not self.normalized:
            return clamp_nonnegative(v)
        if self.denom == 0.0:
            return 0.0
        return min(clamp_nonnegative(v / self.denom), 1.0)


class _F93Engine:
    def __init__(self, sample: Sample, spec: MethodSpec):
        self.plan = _F93Plan(sample, spec.weight, spec.quad, standardize=True)

    def stat(self, perm: np.ndarray | None) -> float:
        return self.plan.value(perm)


class _CorrelationEngine:
    """pearson / spearman / fisherYates: one dot product per permutation."""

    def __init__(self, sample: Sample, spec: MethodSpec):
        x, y = _univariate_columns(sample)
        if spec.method is Method.SPEARMAN:
            x, y = midranks(x), midranks(y)
        elif spec.method is Method.FISHER_YATES:
            x, y = normal_scores(x), normal_scores(y)
        dx = x - x.mean()
        dy = y - y.mean()
        sxx = float(dx @ dx)
        syy = float(dy @ dy)
        if sxx == 0.0 or syy == 0.0:
            raise DegenerateColumn("correlation undefined for a constant column")
        self.dx, self.dy = dx, dy
        self.denom = np.sqrt(sxx * syy)

    def stat(self, perm: np.ndarray | None) -> float:
        dy = self.dy if perm is None else self.dy[perm]
        r = float(self.dx @ dy) / self.denom
        return float(np.clip(r, -1.0, 1.0))


class _KendallEngine:
    def __init__(self, sample: Sample, spec: MethodSpec):
        x, y = _univariate_columns(sample)
        n = x.size
        self.sx = np.sign(x[:, None] - x[None, :])
        self.sy = np.sign(y[:, None] - y[None, :])
        n0 = n * (n - 1) // 2
        denom_x = n0 - classical._tie_pair_count(x)
        denom_y = n0 - classical._tie_pair_count(y)
        if denom_x == 0 or denom_y == 0:
            raise DegenerateColumn("tau-b undefined when a column is fully tied")
        self.denom = float(np.sqrt(float(denom_x) * float(denom_y)))

    def stat(self, perm: np.ndarray | None) -> float:
        sy = self.sy if perm is None else self.sy[np.ix_(perm, perm)]
        s = float((self.sx * sy).sum()) / 2.0
        return s / self.denom


class _BkrEngine:
    def __init__(self, sample: Sample, spec: MethodSpec):
        x, y = _univariate_columns(sample)
        n = x.size
        self.x_le = x[None, :] <= x[:, None]
        self.y_le = y[None, :] <= y[:, None]
        self.f_x = self.x_le.sum(axis=1) / n
        self.f_y = self.y_le.sum(axis=1) / n

    def stat(self, perm: np.ndarray | None) -> float:
        if perm is None:
            y_le, f_y = self.y_le, self.f_y
        else:
            y_le, f_y = self.y_le[np.ix_(perm, perm)], self.f_y[perm]
        n = self.f_x.size
        f_joint = (self.x_le & y_le).sum(axis=1) / n
        return float(((f_joint - self.f_x * f_y) ** 2).mean())


def _univariate_columns(sample: Sample) -> tuple[np.ndarray, np.ndarray]:
    if sample.p != 1 or sample.q != 1:
        raise UnsupportedDimension(
            f"method requires univariate x and y; got p={sample.p}, q={sample.q}"
        )
    return sample.x[:, 0], sample.y[:, 0]


_ENGINES = {
    Method.DCOV2: _DistanceEngine,
    Method.DCOR: _DistanceEngine,
    Method.F93: _F93Engine,
    Method.PEARSON: _CorrelationEngine,
    Method.SPEARMAN: _CorrelationEngine,
    Method.FISHER_YATES: _CorrelationEngine,
    Method.KENDALL: _KendallEngine,
    Method.BKR: _BkrEngine,
}


def _build_engine(sample: Sample, spec: MethodSpec):
    transformed = apply_transform(validate(sample), spec.transform)
    return _ENGINES[spec.method](transformed, spec)


def evaluate(sample: Sample, spec: MethodSpec) -> DependenceResult:
    """Compute one statistic with its transform; returns value plus metadata."""
    value = _build_engine(sample, spec).stat(None)
    return DependenceResult(
        method=spec.method,
        value=value,
        alpha=spec.alpha,
        transform=spec.transform,
        n=sample.n,
    )


# ---------------------------------------------------------------------------
# Permutation test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermutationTestResult:
    observed: float
    permutation_stats: np.ndarray
    p_value: float
    seed: int
    method: MethodSpec
    n: int

    def __post_init__(self):
        stats = np.asarray(self.permutation_stats, dtype=np.float64)
        stats.setflags(write=False)
        object.__setattr__(self, "permutation_stats", stats)

    @property
    def B(self) -> int:
        return int(self.permutation_stats.size)


def _indexed_stats(engine, n, count, seed, stream_base, threads) -> np.ndarray:
    """stats[i] for i in range(count), each from its own keyed stream.

    Work is split into contiguous index chunks; every entry lands at its own
    index, so the array is identical for any worker count.
    """
    stats = np.empty(count)

    def run(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            stats[i] = engine.stat(permutation(n, seed, stream_base + i))

    workers = max(1, int(threads))
    if workers == 1:
        run(0, count)
    else:
        bounds = np.linspace(0, count, workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for f in futures:
                f.result()
    return stats


def permutation_test(
    sample: Sample,
    spec: MethodSpec,
    B: int = 999,
    seed: int = 0,
    threads: int = 1,
) -> PermutationTestResult:
    """Exact-style independence test: permute the y block B times.

    The p-value uses the add-one estimator (1 + #{perm >= observed})/(B + 1),
    never zero. Observed and permuted statistics go through the same engine,
    so a degenerate (constant) statistic ties with every permutation and the
    p-value is 1.
    """
    if B < 99:
        raise InsufficientPermutations(f"need at least 99 permutations, got {B}")
    engine = _build_engine(sample, spec)
    observed = engine.stat(None)
    stats = _indexed_stats(
        engine, sample.n, B, seed, PERMUTATION_STREAM_BASE, threads
    )
    p_value = (1.0 + int((stats >= observed).sum())) / (B + 1.0)
    return PermutationTestResult(
        observed=observed,
        permutation_stats=stats,
        p_value=p_value,
        seed=seed,
        method=spec,
        n=sample.n,
    )


# ---------------------------------------------------------------------------
# Null tables for rank-based (distribution-free) statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullTable:
    n: int
    method: Method
    alpha: float
    transform: Transform
    replications: int
    seed: int
    quantiles: dict
    version: int = 1


def _level_key(level: float) -> str:
    return format(level, ".2f")


def _score_vector(n: int, transform: Transform) -> np.ndarray:
    base = np.arange(1.0, n + 1.0)
    if transform is Transform.RANK:
        return base
    return normal_scores(base)


def build_null_table(
    n: int,
    spec: MethodSpec,
    replications: int = 20000,
    seed: int = 0,
    threads: int = 1,
) -> NullTable:
    """Simulate the exact null of a rank-based statistic for sample size n.

    Under independence with continuous margins the rank pattern of y against
    x is a uniform random permutation, so pairing the fixed score vector with
    permutations of itself reproduces the null law of the transformed
    statistic — no data distribution enters. Raw-data statistics have no such
    fixed null and are rejected.
    """
    if spec.transform is Transform.RAW:
        raise UnsupportedTransform(
            "null tables require the rank or normalScores transform"
        )
    if n < 5:
        raise ValueError(f"null tables need n >= 5, got {n}")
    if replications < 10000:
        raise ValueError(f"need at least 10000 replications, got {replications}")

    v = _score_vector(n, spec.transform)
    engine = _build_engine(Sample(v, v), spec)
    stats = _indexed_stats(engine, n, replications, seed, NULL_TABLE_STREAM_BASE, threads)
    stats.sort()

    quantiles = {}
    for level in TABLE_LEVELS:
        k = min(int(np.ceil(level * (replications + 1))), replications)
        quantiles[_level_key(level)] = float(stats[k - 1])

    return NullTable(
        n=n,
        method=spec.method,
        alpha=spec.alpha,
        transform=spec.transform,
        replications=replications,
        seed=seed,
        quantiles=quantiles,
    )


def save_null_table(table: NullTable, path: str) -> None:
    payload = {
        "version": table.version,
        "n": table.n,
        "method": table.method.value,
        "alpha": table.alpha,
        "transform": table.transform.value,
        "replications": table.replications,
        "seed": table.seed,
        "quantiles": table.quantiles,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_null_table(path: str) -> NullTable:
    with open(path) as fh:
        payload = json.load(fh)
    return NullTable(
        n=int(payload["n"]),
        method=Method(payload["method"]),
        alpha=float(payload["alpha"]),
        transform=Transform(payload["transform"]),
        replications=int(payload["replications"]),
        seed=int(payload["seed"]),
        quantiles={k: float(v) for k, v in payload["quantiles"].items()},
        version=int(payload["version"]),
    )


@dataclass(frozen=True)
class TableDecision:
    reject: bool
    statistic: float
    critical_value: float
    level: float
    method: Method
    alpha: float
    transform: Transform
    n: int


def test_with_table(sample: Sample, table: NullTable, level: float) -> TableDecision:
    """Reject independence iff the statistic exceeds the tabulated quantile.

    ``level`` is the quantile level (0.90 / 0.95 / 0.99); the significance of
    the test is 1 - level.
    """
    validate(sample)
    if sample.p != 1 or sample.q != 1:
        raise UnsupportedDimension("table tests are defined for univariate samples")
    if sample.n != table.n:
        raise TableMismatch(f"sample has n={sample.n} but table was built for n={table.n}")
    key = _level_key(level)
    if key not in table.quantiles:
        raise TableMismatch(
            f"level {key} not tabulated; available: {sorted(table.quantiles)}"
        )
    spec = MethodSpec(method=table.method, alpha=table.alpha, transform=table.transform)
    stat = evaluate(sample, spec).value
    critical = table.quantiles[key]
    return TableDecision(
        reject=stat > critical,
        statistic=stat,
        critical_value=critical,
        level=level,
        method=table.method,
        alpha=table.alpha,
        transform=table.transform,
        n=table.n,
    )


# Not a test case, despite the name pytest would otherwise collect.
test_with_table.__test__ = False
