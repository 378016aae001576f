"""Dependence measurement between random vectors.

Two routes to the same population quantity: a weighted integral of the
squared difference between joint and marginal empirical characteristic
functions, and a closed form built from pairwise distances.  Either one
feeds a permutation test; rank and normal-score variants admit
precomputed, distribution-free null tables.
"""

from .core import (
    DependenceResult,
    Method,
    Sample,
    Transform,
    load_csv,
    save_csv,
    validate,
)
from .datagen import (
    GenKind,
    GenSpec,
    gen_heavy_tail_monotone,
    gen_independent_normal,
    gen_nonmonotone,
    gen_stochastic_volatility,
    generate,
)
from .distcov import (
    TermDecomposition,
    dcor,
    dcov2,
    dcov2_terms,
    double_center,
    dvar2,
    pairwise_distances,
)
from .ecf import (
    QuadratureRule,
    QuadratureSpec,
    WeightKind,
    WeightSpec,
    delta_joint,
    ecf_marginal,
    f93_statistic,
    integrand,
)
from .classical import bkr_statistic, fisher_yates, kendall, pearson, spearman
from .errors import (
    AlphaOutOfRange,
    ColumnOverlap,
    DataError,
    DegenerateColumn,
    DegenerateSample,
    DepmeasError,
    DimensionMismatch,
    InsufficientPermutations,
    NonFiniteEntry,
    NumericDomainError,
    ParseError,
    QuadratureUnderflow,
    RowCountMismatch,
    TableMismatch,
    UnsupportedDimension,
    UnsupportedTransform,
)
from .inference import (
    MethodSpec,
    NullTable,
    PermutationTestResult,
    TableDecision,
    build_null_table,
    evaluate,
    load_null_table,
    permutation_test,
    save_null_table,
    test_with_table,
)
from .scores import apply_transform, midranks, normal_quantile, normal_scores

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRange",
    "ColumnOverlap",
    "DataError",
    "DegenerateColumn",
    "DegenerateSample",
    "DependenceResult",
    "DepmeasError",
    "DimensionMismatch",
    "GenKind",
    "GenSpec",
    "InsufficientPermutations",
    "Method",
    "MethodSpec",
    "NonFiniteEntry",
    "NullTable",
    "NumericDomainError",
    "ParseError",
    "PermutationTestResult",
    "QuadratureRule",
    "QuadratureSpec",
    "RowCountMismatch",
    "Sample",
    "TableDecision",
    "TableMismatch",
    "TermDecomposition",
    "Transform",
    "UnsupportedDimension",
    "UnsupportedTransform",
    "WeightKind",
    "WeightSpec",
    "apply_transform",
    "bkr_statistic",
    "build_null_table",
    "dcor",
    "dcov2",
    "dcov2_terms",
    "delta_joint",
    "double_center",
    "dvar2",
    "ecf_marginal",
    "evaluate",
    "f93_statistic",
    "fisher_yates",
    "gen_heavy_tail_monotone",
    "gen_independent_normal",
    "gen_nonmonotone",
    "gen_stochastic_volatility",
    "generate",
    "integrand",
    "kendall",
    "load_csv",
    "load_null_table",
    "midranks",
    "normal_quantile",
    "normal_scores",
    "pairwise_distances",
    "pearson",
    "permutation_test",
    "save_csv",
    "save_null_table",
    "spearman",
    "test_with_table",
    "validate",
]
