import itertools
import math

import numpy as np
import pytest

from cayring.errors import BadModulus, CapExceeded, IndexOutOfRange, NotAnIdeal, NotARing, NotLocal
from cayring.ring import (
    GF,
    TABLE,
    TRUNC,
    ZPK,
    compute_strata,
    crt_decompose,
    factor_tables,
    ideal_closure,
    is_field,
    is_irreducible,
    is_local,
    local_factor_data,
    make_ring,
    min_unit_sum_length,
    quotient_by_ideal,
    ring_add,
    ring_from_json,
    ring_mul,
    ring_neg,
    ring_to_json,
    smallest_irreducible,
    table_ring,
)

from conftest import residues


def _mod_n_strata(n):
    """Brute-force oracle on plain integers mod n."""
    units = {x for x in range(n) if any(x * y % n == 1 for y in range(n))}
    zd = {x for x in range(n) if any(x * y % n == 0 for y in range(1, n))}
    nil = {x for x in range(n) if pow(x, n, n) == 0}
    return units, zd, nil


def test_make_ring_prime_field():
    R = make_ring([ZPK(2, 1)])
    assert R.order == 2 and is_field(R)


def test_make_ring_product_is_z6():
    R = make_ring([ZPK(2, 1), ZPK(3, 1)])
    assert R.order == 6
    Z6, b = residues(6)
    for x, y in itertools.product(range(6), repeat=2):
        assert R.add(b[x], b[y]) == b[(x + y) % 6]
        assert R.mul(b[x], b[y]) == b[x * y % 6]


def test_non_associative_table_rejected():
    add = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    mul = [[(i * j) % 3 for j in range(3)] for i in range(3)]
    mul[1][2] = mul[2][1] = 1  # breaks associativity / distributivity
    with pytest.raises(NotARing):
        table_ring(add, mul)


def test_z6_arithmetic_examples():
    R, b = residues(6)
    assert ring_add(R, b[3], b[4]) == b[1]
    assert ring_mul(R, b[3], b[4]) == b[0]
    assert ring_neg(R, b[1]) == b[5]


def test_gf4_t_squared_is_t_plus_one():
    R = make_ring([GF(2, 2)])
    # encoding: a0 + a1*t  ->  a0 + 2*a1 (low coefficient first)
    t, one = 2, 1
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert R.mul(t, t) == R.add(t, one) == 3


def _poly_mul_mod(a, b, f, p):
    """Schoolbook product of coefficient lists modulo the monic f, low degree first."""
    k = len(f) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * k - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * f[i]) % p
    return prod[:k]


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_gf_multiplication_matches_polynomial_oracle(p, k):
    R = make_ring([GF(p, k)])
    f = smallest_irreducible(p, k)
    assert is_irreducible(f, p)
    coeffs = lambda x: [(x // p**i) % p for i in range(k)]
    for x, y in itertools.product(range(R.order), repeat=2):
        expect = _poly_mul_mod(coeffs(x), coeffs(y), f, p)
        assert R.mul(x, y) == sum(c * p**i for i, c in enumerate(expect))
    assert is_field(R)


def test_default_modulus_is_lex_smallest():
    # lexicographic from the leading coefficient: t^3 + t + 1 before t^3 + t^2 + 1
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(BadModulus):
        make_ring([GF(2, 2, (1, 0, 1))])  # t^2 + 1 = (t + 1)^2


@pytest.mark.parametrize("n", [6, 12, 8, 30, 49])
def test_strata_match_integer_oracle(n):
    R, b = residues(n)
    units, zd, nil = _mod_n_strata(n)
    S = R.strata
    assert S.units == {b[x] for x in units}
    assert S.zero_divisors == {b[x] for x in zd}
    assert S.nilradical == {b[x] for x in nil}
    assert S.jacobson == S.nilradical
    assert S.regular == S.units


def test_strata_examples():
    R, b = residues(6)
    S = compute_strata(R)
    assert S.zero_divisors == {b[x] for x in (0, 2, 3, 4)}
    assert S.units == {b[1], b[5]}
    assert S.nilradical == {0}
    R12, b12 = residues(12)
    assert len(R12.strata.zero_divisors) == 8
    assert R12.strata.nilradical == {0, b12[6]}
    R8 = make_ring([ZPK(2)] * 3)
    assert R8.strata.units == {7} and len(R8.strata.zero_divisors) == 7


def test_is_local_examples():
    assert is_local(make_ring([ZPK(2, 2)]))
    assert not is_local(make_ring([ZPK(2), ZPK(3)]))
    R = make_ring([TRUNC(4, 2)])
    assert is_local(R) and R.order == 16
    assert len(R.strata.nilradical) == 4


def test_non_local_table_rejected_as_factor():
    R6, _ = crt_decompose(6)
    with pytest.raises(NotLocal):
        make_ring([TABLE(R6.add_table, R6.mul_table, one=R6.one)])


def test_crt_decompose_examples():
    assert [f for f in crt_decompose(6).ring.factors] == [ZPK(2), ZPK(3)]
    assert [f for f in crt_decompose(12).ring.factors] == [ZPK(2, 2), ZPK(3)]
    assert [f for f in crt_decompose(7).ring.factors] == [ZPK(7)]


def test_quotient_examples():
    R12, b = residues(12)
    q = quotient_by_ideal(R12, {0, b[6]})
    assert q.ring.order == 6
    assert not is_local(q.ring)
    R4 = make_ring([ZPK(2, 2)])
    q4 = quotient_by_ideal(R4, {0, 2})
    assert q4.ring.order == 2 and is_field(q4.ring)
    R6, _ = residues(6)
    assert quotient_by_ideal(R6, {0}).ring.order == 6


def test_quotient_projection_is_a_homomorphism():
    R, b = residues(24)
    q = quotient_by_ideal(R, R.strata.nilradical)
    pi = q.projection
    for x, y in itertools.product(range(R.order), repeat=2):
        assert pi[R.add(x, y)] == q.ring.add(pi[x], pi[y])
        assert pi[R.mul(x, y)] == q.ring.mul(pi[x], pi[y])


def test_quotient_rejects_non_ideal():
    R, b = residues(6)
    with pytest.raises(NotAnIdeal):
        quotient_by_ideal(R, {0, b[1]})


def test_min_unit_sum_length_examples():
    assert min_unit_sum_length(crt_decompose(6).ring) == 2
    assert min_unit_sum_length(make_ring([ZPK(2, 2)])) == math.inf
    assert min_unit_sum_length(make_ring([GF(3, 2)])) == math.inf
    assert min_unit_sum_length(make_ring([ZPK(5)])) == math.inf


def test_ideal_closure_of_zero_divisors():
    R, _ = residues(12)
    assert ideal_closure(R, R.strata.zero_divisors_mask).all()
    R9 = make_ring([ZPK(3, 2)])
    closure = ideal_closure(R9, R9.strata.zero_divisors_mask)
    assert set(np.flatnonzero(closure)) == {0, 3, 6}


def test_local_factor_data():
    R = make_ring([ZPK(2, 2), GF(3, 2), TRUNC(2, 3)])
    data = local_factor_data(R)
    assert [(d.order, d.maximal_ideal_size, d.residue_field_size) for d in data] == [
        (4, 2, 2), (9, 1, 9), (8, 4, 2)]


def test_index_out_of_range():
    R = make_ring([ZPK(5)])
    with pytest.raises(IndexOutOfRange):
        R.add(0, 5)


def test_order_cap():
    with pytest.raises(CapExceeded):
        make_ring([ZPK(2)] * 13)
    assert make_ring([ZPK(2)] * 13, order_cap=8192).order == 8192


def test_json_round_trip():
    R = make_ring([ZPK(2, 2), GF(3, 2)])
    doc = ring_to_json(R, include_strata=True)
    R2 = ring_from_json(doc)
    assert R2.order == R.order
    assert np.array_equal(R2.mul_table, R.mul_table)
    assert doc["order"] == 36


def test_factor_tables_zpk():
    t = factor_tables(ZPK(3, 2))
    assert t.order == 9
    assert t.mul[4, 7] == 28 % 9
