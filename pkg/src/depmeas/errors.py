"""Exception taxonomy.

Two families matter to callers (and to the CLI's exit codes): problems with
the data as given (missing/garbled input, shape mismatches) and problems with
the requested computation (parameters outside the supported domain).
"""


class DepmeasError(Exception):
    """Base class for all library errors."""


class DataError(DepmeasError):
    """The input data cannot be used as given."""


class NumericDomainError(DepmeasError):
    """The requested computation is outside the supported parameter domain."""


class ParseError(DataError):
    def __init__(self, row: int, col: int, cell: str):
        self.row = row
        self.col = col
        self.cell = cell
        super().__init__(f"cell at row {row}, column {col} is not numeric: {cell!r}")


class DegenerateSample(DataError):
    """Fewer than two observations."""


class ColumnOverlap(DataError):
    """The x and y column selections share a column."""


class NonFiniteEntry(DataError):
    def __init__(self, block: str, row: int, col: int):
        self.block = block
        self.row = row
        self.col = col
        super().__init__(f"non-finite value in {block} at row {row}, column {col}")


class RowCountMismatch(DataError):
    """x and y blocks have different numbers of rows."""


class AlphaOutOfRange(NumericDomainError):
    """The distance exponent must lie strictly inside (0, 2)."""

    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(f"alpha must satisfy 0 < alpha < 2, got {alpha}")


class DimensionMismatch(NumericDomainError):
    """Argument vector dimension does not match the data dimension."""


class UnsupportedDimension(NumericDomainError):
    """Operation defined for univariate x and y only."""


class QuadratureUnderflow(NumericDomainError):
    """Quadrature grid too small to be meaningful (fewer than 16x16 points)."""


class DegenerateColumn(NumericDomainError):
    """A correlation denominator is zero (constant or fully tied column)."""


class InsufficientPermutations(NumericDomainError):
    """Permutation count below the minimum for a meaningful p-value."""


class UnsupportedTransform(NumericDomainError):
    """Null tables require a rank-based transform; raw data are not distribution-free."""


class TableMismatch(NumericDomainError):
    """Sample or request incompatible with the null table's metadata."""
