"""Sparse label propagation: recover a graph signal from a few labels by
minimizing its total variation."""

from ._core import (
    BoundViolation,
    Graph,
    GraphError,
    LabelError,
    NonFiniteIterate,
    ParseError,
    ValidationError,
    apply_incidence,
    apply_incidence_adjoint,
    duality_gap,
    kappa_estimate,
    lp_solve,
    make_chain,
    message_passing,
    read_graph,
    run_rate_experiment,
    solve,
    tv_norm,
)

__version__ = "0.1.0"

__all__ = [
    "BoundViolation",
    "Graph",
    "GraphError",
    "LabelError",
    "NonFiniteIterate",
    "ParseError",
    "ValidationError",
    "apply_incidence",
    "apply_incidence_adjoint",
    "duality_gap",
    "kappa_estimate",
    "lp_solve",
    "make_chain",
    "message_passing",
    "read_graph",
    "run_rate_experiment",
    "solve",
    "tv_norm",
]
