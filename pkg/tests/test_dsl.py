import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayring.dsl import (
    GFq,
    GFTrunc,
    RingSpecAst,
    Zn,
    parse_descriptors,
    parse_ring_spec,
    render_descriptors,
    ring_from_spec,
    ring_to_spec,
)
from cayring.errors import CapExceeded, NotPrimePower, RingSpecError, RingSpecSyntaxError
from cayring.ring import GF, TRUNC, ZPK, make_ring

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49]


def test_composite_zn_expands_to_local_factors():
    assert parse_descriptors("Z6") == [ZPK(2, 1), ZPK(3, 1)]
    assert parse_descriptors("Z12") == [ZPK(2, 2), ZPK(3, 1)]


def test_direct_mapping():
    assert parse_descriptors("Z4 x GF(9)") == [ZPK(2, 2), GF(3, 2)]
    assert parse_descriptors("GF(4)[t]/(t^2)") == [TRUNC(4, 2)]


def test_gf_of_non_prime_power():
    with pytest.raises(NotPrimePower) as exc:
        parse_ring_spec("GF(6)")
    assert exc.value.offset == 3


def test_trailing_operator_offset_stays_inside_input():
    with pytest.raises(RingSpecSyntaxError) as exc:
        parse_ring_spec("Z6 x")
    assert 0 <= exc.value.offset < len("Z6 x")


def test_whitespace_insensitive():
    assert parse_ring_spec(" Z 4  x  G F ( 9 ) ") == parse_ring_spec("Z4 x GF(9)")


def test_factor_order_preserved():
    assert [f.q for f in parse_ring_spec("GF(9) x GF(4)").factors] == [9, 4]


@pytest.mark.parametrize("bad", ["", "Z", "Z1", "Z0", "GF(9", "Q5", "Z4 x x Z3", "GF(4)[t]/(t^0)", "Z4 Z3"])
def test_syntax_errors(bad):
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec(bad)
    assert 0 <= exc.value.offset < max(len(bad), 1)


def test_order_cap():
    with pytest.raises(CapExceeded):
        parse_ring_spec("Z64 x Z64 x Z2")


def test_ring_to_spec_round_trip():
    R = ring_from_spec("Z4 x GF(9) x GF(2)[t]/(t^3)")
    assert ring_to_spec(R) == "Z4 x GF(9) x GF(2)[t]/(t^3)"
    assert render_descriptors([GF(2, 3, (1, 0, 1, 1))]) is None
    assert render_descriptors([GF(2, 3)]) == "GF(8)"


def test_non_default_modulus_has_no_dsl_form():
    R = make_ring([GF(2, 3, (1, 0, 1, 1))])
    assert ring_to_spec(R) is None


terms = st.one_of(
    st.builds(Zn, st.sampled_from(PRIME_POWERS)),
    st.builds(GFq, st.sampled_from(PRIME_POWERS)),
    st.builds(GFTrunc, st.sampled_from([2, 3, 4, 5]), st.integers(1, 3)),
)


@given(st.lists(terms, min_size=1, max_size=4))
@settings(max_examples=300)
def test_parse_render_round_trip(factors):
    ast = RingSpecAst(tuple(factors))
    assert parse_ring_spec(ast.render(), order_cap=10**12) == ast


@given(st.text(alphabet="ZGF()[]t/^x 0123456789", max_size=20))
@settings(max_examples=500)
def test_errors_point_inside_input(text):
    try:
        parse_ring_spec(text, order_cap=10**12)
    except RingSpecError as exc:
        assert 0 <= exc.offset < max(len(text), 1)
