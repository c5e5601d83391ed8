"""Conflict colouring of multigraphs: models, reductions, bounds, solvers and oracles."""

from conflictcol.model import (
    ConflictInstance,
    GraphStats,
    InstanceError,
    Multigraph,
    Violations,
    build_instance,
    colouring_from_orientation,
    graph_stats,
    orientation_from_colouring,
    validate_colouring,
    validate_orientation,
)
from conflictcol.solvers.result import SearchLimits, SolveResult, Status

__all__ = [
    "ConflictInstance",
    "GraphStats",
    "InstanceError",
    "Multigraph",
    "SearchLimits",
    "SolveResult",
    "Status",
    "Violations",
    "build_instance",
    "colouring_from_orientation",
    "graph_stats",
    "orientation_from_colouring",
    "validate_colouring",
    "validate_orientation",
]

__version__ = "0.1.0"
