"""Ring and graph invariants over randomly drawn small rings."""
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cayring.dsl import ring_from_spec
from cayring.graph import (
    are_isomorphic,
    build_cay,
    build_unitary_cayley,
    complement,
    complete_graph,
    induced_subgraph,
    quotient_graph,
    translation_is_automorphism,
)
from cayring.invariants import components, diameter, distance
from cayring.ring import crt_decompose, ideal_closure, is_local, min_unit_sum_length, quotient_by_ideal
from cayring.verifier import local_pool

POOL = local_pool(16)


@st.composite
def rings(draw, max_order=64):
    k = draw(st.integers(1, 3))
    factors, order = [], 1
    for _ in range(k):
        choices = [s for s in POOL if order * ring_from_spec(s).order <= max_order]
        if not choices:
            break
        s = draw(st.sampled_from(choices))
        factors.append(s)
        order *= ring_from_spec(s).order
    return ring_from_spec(" x ".join(factors))


@given(rings())
@settings(max_examples=80, deadline=None)
def test_units_and_zero_divisors_partition(R):
    S = R.strata
    assert not S.units & S.zero_divisors
    assert S.units | S.zero_divisors == set(range(R.order))
    assert S.nilradical == S.jacobson
    assert 0 in S.nilradical and S.nilradical <= S.zero_divisors


@given(rings())
@settings(max_examples=80, deadline=None)
def test_nilpotent_shift_preserves_zero_divisors(R):
    z = R.strata.zero_divisors_mask
    for a in R.strata.nilradical:
        assert np.array_equal(z[R.add_table[:, a]], z)


@given(rings())
@settings(max_examples=60, deadline=None)
def test_zero_divisors_pull_back_from_reduced_quotient(R):
    q = quotient_by_ideal(R, R.strata.nilradical)
    assert np.array_equal(q.ring.strata.zero_divisors_mask[q.projection], R.strata.zero_divisors_mask)


@given(st.integers(2, 200))
@settings(max_examples=100, deadline=None)
def test_crt_reproduces_modular_arithmetic(n):
    R, b = crt_decompose(n)
    x = np.arange(n)
    assert sorted(b.tolist()) == list(range(n))
    assert np.array_equal(R.add_table[np.ix_(b, b)], b[(x[:, None] + x[None, :]) % n])
    assert np.array_equal(R.mul_table[np.ix_(b, b)], b[(x[:, None] * x[None, :]) % n])


@given(rings())
@settings(max_examples=60, deadline=None)
def test_unit_sum_length_finite_iff_zero_divisors_generate(R):
    finite = math.isfinite(min_unit_sum_length(R))
    assert finite == bool(ideal_closure(R, R.strata.zero_divisors_mask).all())


@given(rings())
@settings(max_examples=60, deadline=None)
def test_complement_of_cay_is_unitary_cayley(R):
    assert complement(build_cay(R)) == build_unitary_cayley(R)


@given(rings())
@settings(max_examples=40, deadline=None)
def test_translations_are_automorphisms(R):
    G = build_cay(R)
    assert all(translation_is_automorphism(G, R, g) for g in range(R.order))


@given(rings())
@settings(max_examples=40, deadline=None)
def test_components_pairwise_isomorphic(R):
    G = build_cay(R)
    comps = components(G)
    first = induced_subgraph(G, comps[0])
    assert all(are_isomorphic(first, induced_subgraph(G, c))[0] for c in comps[1:])


@given(rings())
@settings(max_examples=40, deadline=None)
def test_ideal_zero_divisors_give_disjoint_cliques(R):
    if not is_local(R):
        return
    G = build_cay(R)
    nz = len(R.strata.zero_divisors)
    comps = components(G)
    assert len(comps) == R.order // nz
    assert all(are_isomorphic(induced_subgraph(G, c), complete_graph(nz))[0] for c in comps)


@given(rings())
@settings(max_examples=40, deadline=None)
def test_diameter_equals_unit_sum_length(R):
    G = build_cay(R)
    msl = min_unit_sum_length(R)
    assert diameter(G) == msl == distance(G, 0, R.one)


@given(rings())
@settings(max_examples=40, deadline=None)
def test_closed_neighbourhood_classes_are_nil_cosets(R):
    _, cert = quotient_graph(build_cay(R))
    nil = sorted(R.strata.nilradical)
    cosets = sorted({tuple(sorted(R.add(x, a) for a in nil)) for x in range(R.order)})
    assert sorted(tuple(sorted(c)) for c in cert.classes) == cosets
