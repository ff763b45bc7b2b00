"""Cayley graphs of finite commutative rings and exact checks of their structure."""
from .dsl import parse_ring_spec, ring_from_spec, ring_to_spec
from .graph import (
    Graph,
    are_isomorphic,
    build_cay,
    build_gcd_graph,
    build_reg,
    build_total_graph,
    build_unitary_cayley,
    quotient_graph,
)
from .ring import GF, TABLE, TRUNC, ZPK, FiniteRing, compute_strata, crt_decompose, make_ring

__version__ = "0.1.0"
