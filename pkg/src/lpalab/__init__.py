"""Symbolic workbench for path algebras of finite directed graphs: exact
construction, Lie/Jordan structure under the standard involution, series
computation, and the graph-pattern solvability classifier."""

from .algebra import (
    AlgebraError,
    Element,
    LeavittAlgebra,
    forbidden_embedding_units,
    verify_matrix_units,
)
from .classify import CrossReport, Verdict, classify, cross_validate
from .exprs import ExprError, format_element, parse_element
from .graphs import (
    Card,
    ForbiddenWitness,
    Graph,
    GraphError,
    PatternClass,
    decompose_components,
    find_cycle_with_exit,
    find_forbidden_subgraph,
    graph_from_lists,
    is_acyclic,
    match_pattern,
    regular_vertices,
    sinks,
    validate_graph,
)
from .matrices import (
    MatrixLabError,
    MatrixRingCtx,
    MatrixReport,
    char2_laurent_index3_check,
    corollary_field_check,
    corollary_laurent_check,
    mat_involution,
    skew_matrix_basis,
    witness_laurent_nonsolvable,
    witness_nge3,
    witness_nilpotent_char2,
)
from .scalars import (
    LaurentRing,
    PrimeField,
    RationalField,
    ScalarError,
    field_arith,
    field_from_spec,
    field_of_characteristic,
    laurent_arith,
)
from .series import (
    SeriesError,
    SeriesReport,
    Subspace,
    derived_series,
    element_pair_op,
    element_subspace,
    lower_central_series,
    product_span,
    solvability_probe,
    span,
)

__version__ = "0.1.0"
