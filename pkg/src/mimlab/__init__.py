"""Induced-matching width parameters, OBDD compilation of monotone
2-CNFs, and exact verification suites."""

from .errors import BudgetExceededError
from .generators import (
    HorizontalSubgraph,
    SkewGridMeta,
    clique_corona,
    clique_thread,
    fixtures,
    grid,
    grid_rows_for,
    horizontal_subgraph,
    perfect_matching_graph,
    random_graph,
    skew,
    skew_grid,
    skew_path,
    two_rows,
)
from .graph import (
    Graph,
    cut_graph,
    induced_subgraph,
    is_independent,
    is_induced_cut_matching,
    max_induced_cut_matching,
    neighborhood,
    read_edge_list,
    upper_subgraph,
    write_edge_list,
)
from .harness import ExperimentSpec, ReportRow, export, verify
from .obdd import (
    MonotoneCnf,
    Obdd,
    build_obdd,
    cnf_of_graph,
    count_accepting,
    count_satisfying,
    eval_obdd,
    exhaustive_equiv_check,
    min_obdd_size_exact,
    obdd_bounds_report,
    subfunction_count,
    write_dimacs,
)
from .traces import (
    ShrinkResult,
    TraceSet,
    enables_induced_matching,
    enum_independent_sets,
    shrink_to_enabler,
    trace_count_bound_check,
    traces,
    vc_dimension,
)
from .width import (
    WidthReport,
    WidthVariant,
    exact_width,
    heuristic_width_upper,
    prefix_width,
    width_of_ordering,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ExperimentSpec",
    "Graph",
    "HorizontalSubgraph",
    "MonotoneCnf",
    "Obdd",
    "ReportRow",
    "ShrinkResult",
    "SkewGridMeta",
    "TraceSet",
    "WidthReport",
    "WidthVariant",
    "build_obdd",
    "clique_corona",
    "clique_thread",
    "cnf_of_graph",
    "count_accepting",
    "count_satisfying",
    "cut_graph",
    "enables_induced_matching",
    "enum_independent_sets",
    "eval_obdd",
    "exact_width",
    "exhaustive_equiv_check",
    "export",
    "fixtures",
    "grid",
    "grid_rows_for",
    "heuristic_width_upper",
    "horizontal_subgraph",
    "induced_subgraph",
    "is_independent",
    "is_induced_cut_matching",
    "max_induced_cut_matching",
    "min_obdd_size_exact",
    "neighborhood",
    "obdd_bounds_report",
    "perfect_matching_graph",
    "prefix_width",
    "random_graph",
    "read_edge_list",
    "shrink_to_enabler",
    "skew",
    "skew_grid",
    "skew_path",
    "subfunction_count",
    "trace_count_bound_check",
    "traces",
    "two_rows",
    "upper_subgraph",
    "vc_dimension",
    "verify",
    "width_of_ordering",
    "write_dimacs",
    "write_edge_list",
]
