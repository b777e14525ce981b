"""Python bindings for the multicat library."""

from ._multicat import (
    DomainError,
    check,
    finset,
    graph_circle,
    group,
    knot_bounds,
    knot_pair,
    module,
    run_cli,
)

__all__ = [
    "DomainError",
    "check",
    "finset",
    "graph_circle",
    "group",
    "knot_bounds",
    "knot_pair",
    "module",
    "run_cli",
]
