import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayring.dsl import ring_from_spec
from cayring.errors import BadFieldOrder, FactorsNotOrdered, SizeMismatch
from cayring.graph import build_cay, build_reg
from cayring.invariants import (
    LatinRectangle,
    build_latin_rectangle,
    chromatic_number,
    color_regular_product,
    disjoint_paths_flow,
    lemma27_path_family,
    max_clique,
    regular_clique_chromatic_formula,
)


def _field_ring(fields):
    return ring_from_spec(" x ".join(f"GF({q})" for q in fields))


def test_family_two_by_two():
    fam = lemma27_path_family([2, 2], (1, 1), (0, 0))
    assert len(fam) == 2
    assert fam.is_valid(build_cay(_field_ring([2, 2])))


def test_family_with_shared_coordinate_uses_direct_edge():
    fam = lemma27_path_family([2, 3], (0, 0), (0, 1))
    assert len(fam) == 3
    assert [fam.source, fam.target] in fam.paths
    assert fam.is_valid(build_cay(_field_ring([2, 3])))


def test_family_three_by_three():
    fam = lemma27_path_family([3, 3], (1, 1), (2, 2))
    G = build_cay(_field_ring([3, 3]))
    assert len(fam) == 4 and fam.is_valid(G)
    assert len(disjoint_paths_flow(G, fam.source, fam.target)) >= 4


def test_family_rejects_bad_input():
    with pytest.raises(BadFieldOrder):
        lemma27_path_family([6, 2], 0, 1)
    with pytest.raises(BadFieldOrder):
        lemma27_path_family([5], 0, 1)
    with pytest.raises(ValueError):
        lemma27_path_family([2, 3], 1, 1)


SIGNATURES = [[2, 2], [2, 3], [3, 3], [2, 2, 2], [2, 5], [4, 4], [3, 4], [2, 2, 3], [2, 3, 3], [3, 3, 3], [2, 2, 2, 2]]


@given(st.sampled_from(SIGNATURES), st.data())
@settings(max_examples=150, deadline=None)
def test_family_valid_and_large_enough(fields, data):
    R = _field_ring(fields)
    G = build_cay(R)
    x = data.draw(st.integers(0, R.order - 1))
    y = data.draw(st.integers(0, R.order - 1).filter(lambda v: v != x))
    fam = lemma27_path_family(fields, x, y)
    assert fam.validate(G) == []
    bound = len(R.strata.zero_divisors) - 1
    assert bound <= len(fam) <= len(disjoint_paths_flow(G, x, y))


def test_latin_rectangle_examples():
    assert build_latin_rectangle(1, 3, "abc").rows == [list("abc")]
    assert build_latin_rectangle(2, 2, "ab").rows == [list("ab"), list("ba")]
    L = build_latin_rectangle(2, 4, "abcd")
    assert L.rows == [list("abcd"), list("bcda")]
    assert L.is_valid("abcd") and L.shape == (2, 4)
    with pytest.raises(SizeMismatch):
        build_latin_rectangle(3, 2, "ab")
    assert not LatinRectangle([list("ab"), list("ab")]).is_valid()


@given(st.integers(1, 9), st.integers(1, 9))
def test_latin_rectangle_always_valid(h, w):
    if h > w:
        return
    assert build_latin_rectangle(h, w, list(range(w))).is_valid(range(w))


@pytest.mark.parametrize("spec,expect", [
    ("Z2 x Z3", 2),
    ("Z4 x Z3", 4),
    ("Z2 x Z2", 1),
    ("Z4 x GF(4) x Z5", 2 * 3 * 4),
    ("GF(2)[t]/(t^2) x GF(9)", 2 * 8),
])
def test_regular_colouring_examples(spec, expect):
    R = ring_from_spec(spec)
    assert regular_clique_chromatic_formula(R) == expect
    vertices, col = color_regular_product(R)
    Greg = build_reg(R)
    assert vertices == sorted(R.strata.regular)
    assert col.is_proper(Greg) and col.palette_size == expect
    assert max_clique(Greg)[0] == expect
    assert chromatic_number(Greg)[0] == expect


def test_colouring_requires_ordered_factors():
    with pytest.raises(FactorsNotOrdered):
        color_regular_product(ring_from_spec("Z3 x Z2"))


def _ordered_signatures(max_order):
    fields = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    out = set()
    for k in (2, 3, 4):
        for combo in itertools.combinations_with_replacement(fields, k):
            if math.prod(combo) <= max_order:
                out.update(itertools.permutations(combo))
    return sorted(out)


@pytest.mark.parametrize("fields", _ordered_signatures(36), ids=str)
def test_family_every_factor_ordering_all_pairs(fields):
    from cayring.verifier import verify
    r = verify("lemma_2_7", " x ".join(f"GF({q})" for q in fields))
    assert r.status == "pass", (r.oracle, r.witness)
