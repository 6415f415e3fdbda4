"""Binary matroid toolkit: uniformity testing, a catalog of named matroids,
and isomorph-free exhaustive search over GF(2) point configurations."""

from . import catalog
from .gf import GFError, GFMatrix, field, format_matrix, parse_matrix
from .iso import (
    BudgetExhausted,
    are_isomorphic,
    binary_canonical_form,
    binary_representation,
    has_minor,
    is_binary,
    iso_key,
)
from .matroid import (
    Matroid,
    MatroidError,
    binary_three_sum,
    direct_sum,
    format_graph_text,
    from_graph,
    from_matrix,
    graft_matroid,
    is_binary_affine,
    parallel_connection,
    parse_graph_text,
)
from .search import (
    SearchConfig,
    SearchReport,
    coextensions,
    compute_f,
    enumerate_kl_uniform,
    extensions,
    kl_uniform_points,
    three_connected_census_22,
)
from .uniformity import (
    FlatWitness,
    MinorWitness,
    StructureClass,
    classify_connected_not3_22,
    classify_disconnected_22,
    is_22_uniform_circuits,
    is_kl_uniform_flats,
    is_kl_uniform_minor,
    is_paving,
    is_sparse_paving,
)
from .verify import CheckResult, check_info, run_checks

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "CheckResult",
    "FlatWitness",
    "GFError",
    "GFMatrix",
    "Matroid",
    "MatroidError",
    "MinorWitness",
    "SearchConfig",
    "SearchReport",
    "StructureClass",
    "are_isomorphic",
    "binary_canonical_form",
    "binary_representation",
    "binary_three_sum",
    "catalog",
    "check_info",
    "classify_connected_not3_22",
    "classify_disconnected_22",
    "coextensions",
    "compute_f",
    "direct_sum",
    "enumerate_kl_uniform",
    "extensions",
    "field",
    "format_graph_text",
    "format_matrix",
    "from_graph",
    "from_matrix",
    "graft_matroid",
    "has_minor",
    "is_22_uniform_circuits",
    "is_binary",
    "is_binary_affine",
    "is_kl_uniform_flats",
    "is_kl_uniform_minor",
    "is_paving",
    "is_sparse_paving",
    "iso_key",
    "kl_uniform_points",
    "parallel_connection",
    "parse_graph_text",
    "parse_matrix",
    "three_connected_census_22",
    "run_checks",
]
