"""Local antimagic 3-colorings of odd-size graph families: constructions,
certification, equal-sum partitions, and an exact desk-scale solver."""

from .graph import (
    Certificate,
    EdgeLabeling,
    Graph,
    InducedColoring,
    V,
    VertexId,
    certify,
    degree_census,
    edge,
    induce_coloring,
    merge_vertices,
    split_vertex,
    split_vertices,
)
from .families import FamilyInstance, build_family, sweep_family, verify_instance
from .partition import ApSpec, EqualSumPartition, partition_ap
from .solver import SearchConfig, SolveResult, solve_chi_la, verify_lower_bound
from .tables import (
    LabelTable,
    TracedSequences,
    check_m1_observations,
    check_m3_observations,
    table_m1,
    table_m3,
    table_pt,
    trace_sequences,
)

__version__ = "0.1.0"

__all__ = [
    "ApSpec",
    "Certificate",
    "EdgeLabeling",
    "EqualSumPartition",
    "FamilyInstance",
    "Graph",
    "InducedColoring",
    "LabelTable",
    "SearchConfig",
    "SolveResult",
    "TracedSequences",
    "V",
    "VertexId",
    "build_family",
    "certify",
    "check_m1_observations",
    "check_m3_observations",
    "degree_census",
    "edge",
    "induce_coloring",
    "merge_vertices",
    "partition_ap",
    "solve_chi_la",
    "split_vertex",
    "split_vertices",
    "sweep_family",
    "table_m1",
    "table_m3",
    "table_pt",
    "trace_sequences",
    "verify_instance",
    "verify_lower_bound",
]
