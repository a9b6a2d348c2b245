"""Exact-arithmetic leakage analysis for zero-error source coding over confusion graphs."""

from .budget import DEFAULT_ENUMERATION_BUDGET, WorkMeter, enumeration_budget
from .errors import DomainError, OracleCheckError, ResourceBudgetError, ZeroleakError
from .fixtures import fixture_corpus, resolve_fixture
from .graphs import (
    Graph,
    Hypergraph,
    SequenceVertex,
    VertexSetFamily,
    adjacency,
    and_power,
    and_product,
    associated_hypergraph,
    closed_neighborhood,
    decode_index,
    encode_symbols,
    independence_number,
    is_vertex_transitive,
    make_family,
    make_graph,
    make_hypergraph,
    maximal_independent_sets,
    mis_of_or_power,
    or_power,
    or_product,
)
from .leakage import (
    BoundsReport,
    FoldedColoring,
    GuessBudget,
    LeakageValue,
    OptimalLeakage,
    StochasticMapping,
    ValidationReport,
    approx_guess_bounds,
    b_fold_coloring_from_weights,
    leakage_rate,
    make_mapping,
    maximal_leakage,
    merge_codewords,
    multi_approx_guess_bounds,
    multi_guess_bounds,
    optimal_leakage_t,
    optimal_scalar_mapping,
    validate_mapping,
)
from .oracle import (
    DistributionGrid,
    GuessFamily,
    distribution_grid,
    generate_valid_mapping,
    rho_fixed_px,
    verify_eta_duality,
    verify_mergeability_closure,
    verify_multi_guess_floor,
    verify_packing_reciprocity,
    worst_case_rho,
)
from .programs import (
    covering_number,
    fractional_chromatic,
    fractional_covering,
    fractional_packing,
    maximin_eta,
)
from .rationals import bits_display, format_ratio, parse_ratio

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "DEFAULT_ENUMERATION_BUDGET",
    "DistributionGrid",
    "DomainError",
    "FoldedColoring",
    "Graph",
    "GuessBudget",
    "GuessFamily",
    "Hypergraph",
    "LeakageValue",
    "OptimalLeakage",
    "OracleCheckError",
    "ResourceBudgetError",
    "SequenceVertex",
    "StochasticMapping",
    "ValidationReport",
    "VertexSetFamily",
    "WorkMeter",
    "ZeroleakError",
    "adjacency",
    "and_power",
    "and_product",
    "approx_guess_bounds",
    "associated_hypergraph",
    "b_fold_coloring_from_weights",
    "bits_display",
    "closed_neighborhood",
    "covering_number",
    "decode_index",
    "distribution_grid",
    "encode_symbols",
    "enumeration_budget",
    "fixture_corpus",
    "format_ratio",
    "fractional_chromatic",
    "fractional_covering",
    "fractional_packing",
    "generate_valid_mapping",
    "independence_number",
    "is_vertex_transitive",
    "leakage_rate",
    "make_family",
    "make_graph",
    "make_hypergraph",
    "make_mapping",
    "maximal_independent_sets",
    "maximal_leakage",
    "maximin_eta",
    "merge_codewords",
    "mis_of_or_power",
    "multi_approx_guess_bounds",
    "multi_guess_bounds",
    "optimal_leakage_t",
    "optimal_scalar_mapping",
    "or_power",
    "or_product",
    "parse_ratio",
    "resolve_fixture",
    "rho_fixed_px",
    "validate_mapping",
    "verify_eta_duality",
    "verify_mergeability_closure",
    "verify_multi_guess_floor",
    "verify_packing_reciprocity",
    "worst_case_rho",
]
