"""Exact packing of internally disjoint Steiner trees on small graphs."""

from .canon import are_isomorphic, canonical_form
from .enumerate import GraphClassQuery, enumerate_all, enumerate_matching
from .graph import Graph
from .graph6 import decode, encode
from .steiner import kappa_bar_k, kappa_k, kappa_set, max_packing, menger_local_connectivity, verify_packing

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphClassQuery",
    "are_isomorphic",
    "canonical_form",
    "decode",
    "encode",
    "enumerate_all",
    "enumerate_matching",
    "kappa_bar_k",
    "kappa_k",
    "kappa_set",
    "max_packing",
    "menger_local_connectivity",
    "verify_packing",
]
