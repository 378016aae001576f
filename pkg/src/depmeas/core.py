"""Shared data model: samples, distance matrices, result records, CSV I/O."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    ColumnOverlap,
    DataError,
    DegenerateSample,
    NonFiniteEntry,
    ParseError,
    RowCountMismatch,
)


class Method(str, enum.Enum):
    DCOV2 = "dcov2"
    DCOR = "dcor"
    F93 = "f93"
    BKR = "bkr"
    PEARSON = "pearson"
    SPEARMAN = "spearman"
    KENDALL = "kendall"
    FISHER_YATES = "fisherYates"


class Transform(str, enum.Enum):
    RAW = "raw"
    RANK = "rank"
    NORMAL_SCORES = "normalScores"


def _as_column_matrix(a, name: str) -> np.ndarray:
    m = np.asarray(a, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"{name} must be a vector or a 2-D matrix, got ndim={m.ndim}")
    m = np.ascontiguousarray(m)
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class Sample:
    """Paired observations: n rows of an x block (width p) and a y block (width q).

    Immutable after construction; the arrays are marked read-only so a sample
    can be shared freely across threads.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _as_column_matrix(self.x, "x"))
        object.__setattr__(self, "y", _as_column_matrix(self.y, "y"))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    @property
    def q(self) -> int:
        return self.y.shape[1]


def validate(sample: Sample) -> Sample:
    """Check the sample invariants; return the sample unchanged if they hold."""
    if sample.x.shape[0] != sample.y.shape[0]:
        raise RowCountMismatch(
            f"x has {sample.x.shape[0]} rows but y has {sample.y.shape[0]}"
        )
    for block_name, block in (("x", sample.x), ("y", sample.y)):
        finite = np.isfinite(block)
        if not finite.all():
            row, col = np.argwhere(~finite)[0]
            raise NonFiniteEntry(block_name, int(row), int(col))
    if sample.n < 2:
        raise DegenerateSample(f"need at least 2 observations, got {sample.n}")
    return sample


@dataclass(frozen=True)
class DistanceMatrix:
    """Pairwise alpha-power Euclidean distances: symmetric, zero diagonal."""

    d: np.ndarray
    alpha: float

    def __post_init__(self):
        d = np.ascontiguousarray(np.asarray(self.d, dtype=np.float64))
        d.setflags(write=False)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class CenteredDistanceMatrix:
    """Double-centered distance matrix: all row and column sums are zero."""

    a: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(np.asarray(self.a, dtype=np.float64))
        a.setflags(write=False)
        object.__setattr__(self, "a", a)


#: Methods whose values are nonnegative by construction (clamped within slack).
NONNEGATIVE_METHODS = frozenset({Method.DCOV2, Method.DCOR, Method.F93, Method.BKR})

_CLAMP_SLACK = 1e-12


def clamp_nonnegative(value: float, slack: float = _CLAMP_SLACK) -> float:
    """Snap tiny negative floating residue (within ``slack``) to exactly 0."""
    if -slack <= value < 0.0:
        return 0.0
    return value


@dataclass(frozen=True)
class DependenceResult:
    """A statistic value plus the metadata needed to reproduce it."""

    method: Method
    value: float
    alpha: float
    transform: Transform
    n: int

    def __post_init__(self):
        v = float(self.value)
        if self.method in NONNEGATIVE_METHODS:
            v = clamp_nonnegative(v)
        if self.method is Method.DCOR and 1.0 < v <= 1.0 + _CLAMP_SLACK:
            v = 1.0
        object.__setattr__(self, "value", v)


# ---------------------------------------------------------------------------
# CSV ingestion / serialization
# ---------------------------------------------------------------------------


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _read_rows(path: str) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DegenerateSample(f"{path}: empty file")
    return rows


def _resolve_selector(sel, header: list[str] | None, width: int, flag: str) -> int:
    """Map one column selector (index or header name) to a column index."""
    if isinstance(sel, str):
        if header is not None and sel in header:
            return header.index(sel)
        try:
            sel = int(sel)
        except ValueError:
            raise DataError(f"{flag}: unknown column {sel!r}") from None
    idx = int(sel)
    if not 0 <= idx < width:
        raise DataError(f"{flag}: column index {idx} out of range (file has {width} columns)")
    return idx


def _selector_list(cols) -> list:
    if isinstance(cols, str):
        return [c.strip() for c in cols.split(",") if c.strip()]
    if isinstance(cols, int):
        return [cols]
    return list(cols)


def load_csv(path: str, x_cols, y_cols) -> Sample:
    """Read a comma-separated file into a Sample.

    The first row is treated as a header when any of its cells is non-numeric.
    ``x_cols``/``y_cols`` are 0-based column indices or header names, given as
    a list or a comma-separated string.
    """
    rows = _read_rows(path)
    width = len(rows[0])
    header = rows[0] if any(not _is_number(c) for c in rows[0]) else None
    data_rows = rows[1:] if header is not None else rows

    xi = [_resolve_selector(s, header, width, "x_cols") for s in _selector_list(x_cols)]
    yi = [_resolve_selector(s, header, width, "y_cols") for s in _selector_list(y_cols)]
    if set(xi) & set(yi):
        shared = sorted(set(xi) & set(yi))
        raise ColumnOverlap(f"x and y selections share column(s) {shared}")

    if len(data_rows) < 2:
        raise DegenerateSample(f"{path}: need at least 2 data rows, got {len(data_rows)}")

    start = 1 if header is not None else 0
    parsed = np.empty((len(data_rows), len(xi) + len(yi)))
    for i, row in enumerate(data_rows):
        for j, col in enumerate(xi + yi):
            if col >= len(row) or not _is_number(row[col]):
                cell = row[col] if col < len(row) else ""
                raise ParseError(start + i, col, cell)
            parsed[i, j] = float(row[col])
    sample = Sample(parsed[:, : len(xi)], parsed[:, len(xi):])
    return validate(sample)


def save_csv(sample: Sample, path: str) -> None:
    """Write a Sample with a header; 17 significant digits so values round-trip."""
    if sample.p == 1 and sample.q == 1:
        names = ["x", "y"]
    else:
        names = [f"x{i + 1}" for i in range(sample.p)] + [
            f"y{i + 1}" for i in range(sample.q)
        ]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for xr, yr in zip(sample.x, sample.y):
            writer.writerow([format(v, ".17g") for v in (*xr, *yr)])
