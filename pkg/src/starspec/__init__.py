"""Spectral star operation toolkit."""

from ._kernels import BACKEND
from .errors import Graph6Error, InvalidArgument, NumericalFailure, PreconditionFailure, UnsupportedOrder
from .graphcore import (
    Graph,
    canonical_form,
    complement,
    enumerate_nonisomorphic,
    is_isomorphic,
    parse_graph6,
    write_graph6,
)
from .eigen import decompose, graph_decomposition, last_two_sum, ratios
from .starop import PlanePair, apply_star, apply_star_k, fixpoint_iterate, pair_of

__all__ = [
    "BACKEND",
    "Graph",
    "Graph6Error",
    "InvalidArgument",
    "NumericalFailure",
    "PlanePair",
    "PreconditionFailure",
    "UnsupportedOrder",
    "apply_star",
    "apply_star_k",
    "canonical_form",
    "complement",
    "decompose",
    "enumerate_nonisomorphic",
    "fixpoint_iterate",
    "graph_decomposition",
    "is_isomorphic",
    "last_two_sum",
    "pair_of",
    "parse_graph6",
    "ratios",
    "write_graph6",
]
