"""Exact counting and enumeration of detours (longest paths) in graphs."""

from .engine import (
    DetourReport,
    count_detours,
    count_detours_dfs,
    count_detours_dp,
    detour_edge_counts,
    detour_order,
    detours_through_edge,
    enumerate_detours,
    omega,
)
from .errors import (
    CapacityError,
    CountOverflowError,
    DetourError,
    DomainError,
    EmissionLimitExceeded,
    EngineMismatchError,
    GraphFormatError,
)
from .graph import Edge, Graph, add_edge, is_connected, min_degree, subdivide, vertex_connectivity
from .graph6 import g6_decode, g6_encode

__all__ = [
    "CapacityError",
    "CountOverflowError",
    "DetourError",
    "DetourReport",
    "DomainError",
    "Edge",
    "EmissionLimitExceeded",
    "EngineMismatchError",
    "Graph",
    "GraphFormatError",
    "add_edge",
    "count_detours",
    "count_detours_dfs",
    "count_detours_dp",
    "detour_edge_counts",
    "detour_order",
    "detours_through_edge",
    "enumerate_detours",
    "g6_decode",
    "g6_encode",
    "is_connected",
    "min_degree",
    "omega",
    "subdivide",
    "vertex_connectivity",
]
