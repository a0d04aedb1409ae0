"""Greedy minimum-degree elimination orderings for sparse symmetric
non-zero structures: exact, degree-capped, output-sensitive, and
(1 + eps)-approximate variants, with brute-force oracles to check them."""

from .buckets import ApproxDegreeDS, approx_ds_new
from .decay import (ApproxOrderingConfig, approx_min_degree_sequence,
                    exp_decayed_candidates, sample_decreasing_exponentials)
from .estimate import (ComponentNeighborhoodMatrix, DenseMatrix, approx_column_sum,
                       count_nonzero_columns, count_nonzero_columns_slow,
                       estimate_degree, estimate_mean)
from .exact import delta_capped_min_degree, output_sensitive_min_degree
from .graph_io import dump_edge_list, dump_matrix_market, load_graph, load_permutation
from .graphs import (ComponentGraph, Graph, GraphError, OrderingResult,
                     fill_degree_bruteforce, fill_graph_bruteforce,
                     mindeg_ordering_bruteforce, total_fill, verify_ordering)
from .instances import (adversarial_correlation_demo, covering_set_system, erdos_renyi,
                        generate, grid, ov_bruteforce, ov_decide_via_ordering,
                        ov_reduction_graph, verify_covering_system)
from .sketch import SketchCopy, SketchKey

__version__ = "0.1.0"

__all__ = [
    "ApproxDegreeDS", "ApproxOrderingConfig", "ComponentGraph",
    "ComponentNeighborhoodMatrix", "DenseMatrix", "Graph", "GraphError",
    "OrderingResult", "SketchCopy", "SketchKey",
    "adversarial_correlation_demo", "approx_column_sum", "approx_ds_new",
    "approx_min_degree_sequence", "count_nonzero_columns",
    "count_nonzero_columns_slow", "covering_set_system",
    "delta_capped_min_degree", "dump_edge_list", "dump_matrix_market",
    "erdos_renyi", "estimate_degree", "estimate_mean", "exp_decayed_candidates",
    "fill_degree_bruteforce", "fill_graph_bruteforce", "generate", "grid",
    "load_graph", "load_permutation", "mindeg_ordering_bruteforce",
    "output_sensitive_min_degree", "ov_bruteforce", "ov_decide_via_ordering",
    "ov_reduction_graph", "sample_decreasing_exponentials", "total_fill",
    "verify_covering_system", "verify_ordering",
]
