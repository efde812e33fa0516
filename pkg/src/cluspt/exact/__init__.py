"""Exact solvers and brute-force oracles."""

from .clusp import clusp_exact_dp
from .common import ExactResult
from .convolution import subset_convolution_fast, subset_convolution_minsum
from .fpt1 import DpTable, dump_trace, fpt1_solve, fpt1_tables
from .fpt2 import candidate_roots, fpt2_solve
from .oracles import clusp_oracle_paths, consecutive_clusters, oracle_spanning_trees
from .tables import ClusterTables, cluster_tables

__all__ = [
    "ClusterTables",
    "DpTable",
    "ExactResult",
    "candidate_roots",
    "cluster_tables",
    "clusp_exact_dp",
    "clusp_oracle_paths",
    "consecutive_clusters",
    "dump_trace",
    "fpt1_solve",
    "fpt1_tables",
    "fpt2_solve",
    "oracle_spanning_trees",
    "subset_convolution_fast",
    "subset_convolution_minsum",
]
