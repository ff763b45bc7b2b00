"""Finite commutative rings with unity, presented as products of local factors.

Elements of a product ring are encoded as mixed-radix integers in
``[0, order)``: the first declared factor is the most significant digit, so
integer order agrees with lexicographic order of coordinate tuples.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    BadModulus,
    CapExceeded,
    IndexOutOfRange,
    NotAnIdeal,
    NotARing,
    NotLocal,
)

DEFAULT_ORDER_CAP = 4096
EXHAUSTIVE_AXIOM_LIMIT = 256
SAMPLED_TRIPLES = 10_000


# ---------------------------------------------------------------------------
# small number theory


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 2`` as ascending ``(p, e)`` pairs."""
    if n < 2:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None."""
    if q < 2:
        return None
    f = factorize(q)
    return f[0] if len(f) == 1 else None


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class ZPK:
    """The ring of integers modulo ``p**k``."""

    p: int
    k: int = 1

    @property
    def order(self) -> int:
        return self.p**self.k


@dataclass(frozen=True)
class GF:
    """The field with ``p**k`` elements, ``Z_p[t]/(modulus)``.

    ``modulus`` lists coefficients from the constant term up, ending with the
    leading 1.  When omitted the smallest monic irreducible is used.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return self.p**self.k


@dataclass(frozen=True)
class TRUNC:
    """Truncated polynomial ring ``GF(q)[t]/(t**m)``."""

    q: int
    m: int

    @property
    def order(self) -> int:
        return self.q**self.m


@dataclass(frozen=True, eq=False)
class TABLE:
    """A ring given by explicit addition and multiplication tables."""

    add: np.ndarray
    mul: np.ndarray
    zero: int = 0
    one: int = 1

    def __post_init__(self):
        object.__setattr__(self, "add", np.asarray(self.add, dtype=np.int64))
        object.__setattr__(self, "mul", np.asarray(self.mul, dtype=np.int64))

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    def __eq__(self, other):
        return (
            isinstance(other, TABLE)
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self):
        return hash((self.order, self.zero, self.one, self.add.tobytes(), self.mul.tobytes()))


LocalRingDesc = Union[ZPK, GF, TRUNC, TABLE]


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p (coefficient lists, constant term first)


def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Brute-force irreducibility of a monic polynomial over Z_p."""
    f = [c % p for c in modulus]
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = _poly_mod_p(f, g, p)
            if not any(r):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``k``, comparing coefficients from
    degree ``k-1`` down to the constant term."""
    if k == 1:
        return (0, 1)
    for value in range(p**k):
        coeffs = [(value // p**i) % p for i in range(k)]
        if coeffs[0] == 0:
            continue
        f = tuple(coeffs) + (1,)
        if is_irreducible(f, p):
            return f
    raise BadModulus(f"no irreducible polynomial of degree {k} over Z_{p}")


# ---------------------------------------------------------------------------
# factor tables


@dataclass(frozen=True, eq=False)
class FactorTables:
    order: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    one: int


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _finish(add, mul, one) -> FactorTables:
    neg = np.argmax(add == 0, axis=1).astype(np.int64)
    return FactorTables(add.shape[0], _readonly(add), _readonly(mul), _readonly(neg), one)


def _extension_tables(base: FactorTables, f: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Tables of ``base[t]/(f)`` for monic ``f`` (coefficient indices in base)."""
    b = base.order
    d = len(f) - 1
    n = b**d
    idx = np.arange(n)
    digits = np.stack([(idx // b**i) % b for i in range(d)], axis=1)
    weights = b ** np.arange(d)

    add = (base.add[digits[:, None, :], digits[None, :, :]] * weights).sum(axis=2)

    neg_f = [int(base.neg[c]) for c in f[:-1]]
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        coef = np.zeros((n, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            ai = digits[a, i]
            if ai == 0:
                continue
            prods = base.mul[ai, digits]  # (n, d)
            for j in range(d):
                coef[:, i + j] = base.add[coef[:, i + j], prods[:, j]]
        for deg in range(2 * d - 2, d - 1, -1):
            top = coef[:, deg]
            for i, nc in enumerate(neg_f):
                if nc:
                    coef[:, deg - d + i] = base.add[coef[:, deg - d + i], base.mul[top, nc]]
            coef[:, deg] = 0
        mul[a] = (coef[:, :d] * weights).sum(axis=1)
    return add.astype(np.int64), mul


def _zpk_tables(n: int) -> FactorTables:
    r = np.arange(n, dtype=np.int64)
    add = (r[:, None] + r[None, :]) % n
    mul = (r[:, None] * r[None, :]) % n
    return _finish(add, mul, 1 % n)


def factor_tables(desc: LocalRingDesc) -> FactorTables:
    if isinstance(desc, ZPK):
        if not is_prime(desc.p) or desc.k < 1:
            raise ValueError(f"bad ZPK descriptor {desc}")
        return _zpk_tables(desc.order)
    if isinstance(desc, GF):
        if not is_prime(desc.p) or desc.k < 1:
            raise ValueError(f"bad GF descriptor {desc}")
        modulus = desc.modulus or smallest_irreducible(desc.p, desc.k)
        if len(modulus) - 1 != desc.k:
            raise BadModulus(f"modulus {modulus} has degree {len(modulus) - 1}, expected {desc.k}")
        if not is_irreducible(modulus, desc.p):
            raise BadModulus(f"modulus {modulus} is reducible over Z_{desc.p}")
        if desc.k == 1:
            return _zpk_tables(desc.p)
        add, mul = _extension_tables(_zpk_tables(desc.p), [c % desc.p for c in modulus])
        return _finish(add, mul, 1)
    if isinstance(desc, TRUNC):
        pk = prime_power(desc.q)
        if pk is None or desc.m < 1:
            raise ValueError(f"bad TRUNC descriptor {desc}")
        base = factor_tables(GF(*pk))
        add, mul = _extension_tables(base, [0] * desc.m + [1])
        return _finish(add, mul, 1)
    if isinstance(desc, TABLE):
        return _table_tables(desc)
    raise TypeError(f"unknown descriptor {desc!r}")


def _table_tables(desc: TABLE) -> FactorTables:
    n = desc.order
    add, mul = desc.add, desc.mul
    if add.shape != (n, n) or mul.shape != (n, n):
        raise NotARing("table shape", (add.shape, mul.shape))
    if n < 2:
        raise NotARing("order >= 2", (n,))
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise NotARing("closure", (int(add.max()), int(mul.max())))
    if not (0 <= desc.zero < n and 0 <= desc.one < n):
        raise NotARing("identity indices", (desc.zero, desc.one))
    # relabel so that the additive identity is element 0
    perm = np.arange(n)
    perm[[0, desc.zero]] = perm[[desc.zero, 0]]
    add = perm[add[np.ix_(perm, perm)]]
    mul = perm[mul[np.ix_(perm, perm)]]
    one = int(perm[desc.one])
    _check_axioms(add, mul, one)
    return _finish(add, mul, one)


def _first_bad(mask: np.ndarray):
    return tuple(int(i) for i in np.argwhere(mask)[0])


def _check_axioms(add: np.ndarray, mul: np.ndarray, one: int) -> None:
    n = add.shape[0]
    r = np.arange(n)
    if not np.array_equal(add[0], r):
        raise NotARing("additive identity", (0, _first_bad(add[0] != r)[0]))
    if not (add == 0).any(axis=1).all():
        raise NotARing("additive inverse", _first_bad(~(add == 0).any(axis=1)))
    if not np.array_equal(add, add.T):
        raise NotARing("additive commutativity", _first_bad(add != add.T))
    if not np.array_equal(mul, mul.T):
        raise NotARing("multiplicative commutativity", _first_bad(mul != mul.T))
    if not np.array_equal(mul[one], r):
        raise NotARing("multiplicative identity", (one, _first_bad(mul[one] != r)[0]))

    if n <= EXHAUSTIVE_AXIOM_LIMIT:
        a, b, c = r[:, None, None], r[None, :, None], r[None, None, :]
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))

    def check(name, lhs, rhs):
        bad = lhs != rhs
        if bad.any():
            pos = np.argwhere(bad)[0]
            aa, bb, cc = np.broadcast_arrays(a, b, c)
            raise NotARing(name, (int(aa[tuple(pos)]), int(bb[tuple(pos)]), int(cc[tuple(pos)])))

    check("additive associativity", add[add[a, b], c], add[a, add[b, c]])
    check("multiplicative associativity", mul[mul[a, b], c], mul[a, mul[b, c]])
    check("distributivity", mul[a, add[b, c]], add[mul[a, b], mul[a, c]])


def _nonunits_closed(t: FactorTables) -> bool:
    units = (t.mul == t.one).any(axis=1)
    nu = np.flatnonzero(~units)
    return bool((~units[t.add[np.ix_(nu, nu)]]).all())


# ---------------------------------------------------------------------------
# the ring


def _render_desc(desc: LocalRingDesc) -> str:
    if isinstance(desc, ZPK):
        return f"Z{desc.order}"
    if isinstance(desc, GF):
        return f"GF({desc.order})"
    if isinstance(desc, TRUNC):
        return f"GF({desc.q})[t]/(t^{desc.m})"
    return f"TABLE({desc.order})"


class FiniteRing:
    """Product of finite local rings with componentwise arithmetic.

    Instances are immutable once built.  Pairwise tables are materialised on
    first use and cached.
    """

    def __init__(self, factors: Sequence[LocalRingDesc], tables: Sequence[FactorTables],
                 require_local: bool = True):
        self.factors = tuple(factors)
        self._tables = tuple(tables)
        self.require_local = require_local
        self.radices = tuple(t.order for t in self._tables)
        self.order = math.prod(self.radices)
        w = [1] * len(self.radices)
        for i in range(len(self.radices) - 2, -1, -1):
            w[i] = w[i + 1] * self.radices[i + 1]
        self.weights = np.array(w, dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        self.coords = _readonly(np.stack(
            [(idx // w[i]) % self.radices[i] for i in range(len(w))], axis=1))
        self.one = int(sum(t.one * wi for t, wi in zip(self._tables, w)))

    def __repr__(self):
        return f"FiniteRing({' x '.join(_render_desc(d) for d in self.factors)}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def factor_tables(self) -> tuple[FactorTables, ...]:
        return self._tables

    # -- encoding -------------------------------------------------------
    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.radices):
            raise IndexOutOfRange(f"expected {len(self.radices)} coordinates, got {len(coords)}")
        for c, r in zip(coords, self.radices):
            if not 0 <= c < r:
                raise IndexOutOfRange(f"coordinate {c} outside [0, {r})")
        return int(sum(int(c) * int(w) for c, w in zip(coords, self.weights)))

    def decode(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return tuple(int(c) for c in self.coords[x])

    def label(self, x: int) -> str:
        c = self.decode(x)
        return str(c[0]) if len(c) == 1 else "(" + ",".join(map(str, c)) + ")"

    def labels(self) -> list[str]:
        return [self.label(x) for x in range(self.order)]

    def _check(self, *xs):
        for x in xs:
            if not (isinstance(x, (int, np.integer)) and 0 <= x < self.order):
                raise IndexOutOfRange(f"element {x!r} outside [0, {self.order})")

    # -- vectorised arithmetic -----------------------------------------
    def _combine(self, op, x, y=None):
        x = np.asarray(x)
        cx = self.coords[x]
        out = np.zeros(np.broadcast(x, x if y is None else np.asarray(y)).shape, dtype=np.int64)
        if y is not None:
            cy = self.coords[np.asarray(y)]
        for f, t in enumerate(self._tables):
            table = getattr(t, op)
            v = table[cx[..., f]] if y is None else table[cx[..., f], cy[..., f]]
            out += v * self.weights[f]
        return out

    def add_v(self, x, y):
        return self._combine("add", x, y)

    def mul_v(self, x, y):
        return self._combine("mul", x, y)

    def neg_v(self, x):
        return self._combine("neg", x)

    def sub_v(self, x, y):
        return self.add_v(x, self.neg_v(y))

    @cached_property
    def add_table(self) -> np.ndarray:
        r = np.arange(self.order)
        return _readonly(self.add_v(r[:, None], r[None, :]))

    @cached_property
    def mul_table(self) -> np.ndarray:
        r = np.arange(self.order)
        return _readonly(self.mul_v(r[:, None], r[None, :]))

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _readonly(self.neg_v(np.arange(self.order)))

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[x, y] == x - y``."""
        r = np.arange(self.order)
        return _readonly(self.add_v(r[:, None], self.neg_table[None, :]))

    # -- scalar arithmetic ---------------------------------------------
    def add(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.add_v(x, y))

    def neg(self, x: int) -> int:
        self._check(x)
        return int(self.neg_v(x))

    def sub(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.sub_v(x, y))

    def mul(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.mul_v(x, y))

    def power(self, x: int, e: int) -> int:
        self._check(x)
        return int(_power_v(self, np.array([x]), e)[0])

    @cached_property
    def strata(self) -> "RingStrata":
        return compute_strata(self)


def ring_add(R: FiniteRing, x: int, y: int) -> int:
    return R.add(x, y)


def ring_neg(R: FiniteRing, x: int) -> int:
    return R.neg(x)


def ring_mul(R: FiniteRing, x: int, y: int) -> int:
    return R.mul(x, y)


def make_ring(spec: Iterable[LocalRingDesc], order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Build and validate a product of local rings."""
    spec = list(spec)
    if not spec:
        raise ValueError("a ring needs at least one factor")
    order = math.prod(d.order for d in spec)
    if order > order_cap:
        raise CapExceeded("ring order", order, order_cap)
    tables = []
    for d in spec:
        t = factor_tables(d)
        if not _nonunits_closed(t):
            raise NotLocal(f"non-units of {_render_desc(d)} are not closed under addition")
        tables.append(t)
    return FiniteRing(spec, tables)


def table_ring(add, mul, zero: int = 0, one: int = 1, require_local: bool = False) -> FiniteRing:
    """Single-factor ring from raw tables; locality optional."""
    desc = TABLE(add, mul, zero, one)
    t = factor_tables(desc)
    if require_local and not _nonunits_closed(t):
        raise NotLocal("non-units of the table ring are not closed under addition")
    return FiniteRing([desc], [t], require_local=require_local)


# ---------------------------------------------------------------------------
# strata


def _power_v(R: FiniteRing, base: np.ndarray, e: int) -> np.ndarray:
    mul = R.mul_table
    acc = np.full(base.shape, R.one, dtype=np.int64)
    b = base.astype(np.int64)
    while e:
        if e & 1:
            acc = mul[acc, b]
        b = mul[b, b]
        e >>= 1
    return acc


@dataclass(frozen=True, eq=False)
class RingStrata:
    """Element classes of a finite ring as boolean masks over element indices."""

    units_mask: np.ndarray
    zero_divisors_mask: np.ndarray
    nilradical_mask: np.ndarray
    jacobson_mask: np.ndarray
    regular_mask: np.ndarray = field(repr=False)

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.units_mask).tolist())

    @cached_property
    def zero_divisors(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.zero_divisors_mask).tolist())

    @cached_property
    def nonzero_zero_divisors(self) -> frozenset[int]:
        return self.zero_divisors - {0}

    @cached_property
    def nilradical(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.nilradical_mask).tolist())

    @cached_property
    def jacobson(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.jacobson_mask).tolist())

    @cached_property
    def regular(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.regular_mask).tolist())


def compute_strata(R: FiniteRing) -> RingStrata:
    """Units, zero-divisors, nilradical and Jacobson radical by exhaustive scans."""
    n = R.order
    mul = R.mul_table
    zd = (mul[:, 1:] == 0).any(axis=1)
    units = (mul == R.one).any(axis=1)
    nil = _power_v(R, np.arange(n), n) == 0
    one_minus = R.sub_table[R.one][mul]  # 1 - x*y
    jac = units[one_minus].all(axis=1)
    return RingStrata(
        _readonly(units), _readonly(zd), _readonly(nil), _readonly(jac), _readonly(~zd)
    )


def is_local(R: FiniteRing) -> bool:
    s = R.strata
    nu = np.flatnonzero(~s.units_mask)
    return bool((~s.units_mask[R.add_table[np.ix_(nu, nu)]]).all())


def is_field(R: FiniteRing) -> bool:
    return len(R.strata.units) == R.order - 1


# ---------------------------------------------------------------------------
# CRT, quotients, ideals


@dataclass(frozen=True, eq=False)
class CrtDecomposition:
    ring: FiniteRing
    bijection: np.ndarray  # k in Z_n  ->  element index

    def __iter__(self):
        return iter((self.ring, self.bijection))


def crt_decompose(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> CrtDecomposition:
    if n < 2:
        raise ValueError("n must be >= 2")
    fac = factorize(n)
    R = make_ring([ZPK(p, e) for p, e in fac], order_cap=order_cap)
    k = np.arange(n)
    coords = np.stack([k % (p**e) for p, e in fac], axis=1)
    bij = (coords * R.weights).sum(axis=1)
    return CrtDecomposition(R, _readonly(bij))


@dataclass(frozen=True, eq=False)
class Quotient:
    ring: FiniteRing
    projection: np.ndarray  # element -> coset index
    representatives: np.ndarray  # coset index -> minimal element

    def __iter__(self):
        return iter((self.ring, self.projection))


def _as_mask(R: FiniteRing, I) -> np.ndarray:
    if isinstance(I, np.ndarray) and I.dtype == bool:
        return I
    mask = np.zeros(R.order, dtype=bool)
    mask[list(I)] = True
    return mask


def check_ideal(R: FiniteRing, I) -> np.ndarray:
    mask = _as_mask(R, I)
    members = np.flatnonzero(mask)
    if not mask[0]:
        raise NotAnIdeal("missing zero", (0,))
    diffs = R.sub_table[np.ix_(members, members)]
    if not mask[diffs].all():
        i, j = _first_bad(~mask[diffs])
        raise NotAnIdeal("not closed under subtraction", (int(members[i]), int(members[j])))
    prods = R.mul_table[:, members]
    if not mask[prods].all():
        r, j = _first_bad(~mask[prods])
        raise NotAnIdeal("does not absorb multiplication", (int(r), int(members[j])))
    return mask


def quotient_by_ideal(R: FiniteRing, I) -> Quotient:
    mask = check_ideal(R, I)
    members = np.flatnonzero(mask)
    rep_of = R.add_table[:, members].min(axis=1)
    reps = np.unique(rep_of)
    proj = np.searchsorted(reps, rep_of)
    add = proj[R.add_table[np.ix_(reps, reps)]]
    mul = proj[R.mul_table[np.ix_(reps, reps)]]
    Q = table_ring(add, mul, zero=int(proj[0]), one=int(proj[R.one]))
    return Quotient(Q, _readonly(proj), _readonly(reps))


def ideal_closure(R: FiniteRing, S) -> np.ndarray:
    """Mask of the ideal generated by ``S``: sums of multiples of its elements."""
    gens = np.flatnonzero(_as_mask(R, S))
    mask = np.zeros(R.order, dtype=bool)
    mask[0] = True
    if gens.size:
        mask[np.unique(R.mul_table[:, gens])] = True
    steps = np.flatnonzero(mask)
    frontier = steps
    while frontier.size:
        new = np.unique(R.add_table[np.ix_(frontier, steps)])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def min_unit_sum_length(R: FiniteRing) -> float:
    """Least ``n`` with ``1`` a sum of ``n`` zero-divisors; ``inf`` if none."""
    steps = np.flatnonzero(R.strata.zero_divisors_mask)
    steps = steps[steps != 0]
    if steps.size == 0:
        return math.inf
    seen = np.zeros(R.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    depth = 0
    while frontier.size:
        depth += 1
        nxt = np.unique(R.add_table[np.ix_(frontier, steps)])
        nxt = nxt[~seen[nxt]]
        if (nxt == R.one).any():
            return depth
        seen[nxt] = True
        frontier = nxt
    return math.inf


# ---------------------------------------------------------------------------
# local decomposition data


@dataclass(frozen=True)
class LocalFactorData:
    order: int
    maximal_ideal_size: int

    @property
    def residue_field_size(self) -> int:
        return self.order // self.maximal_ideal_size


def local_factor_data(R: FiniteRing) -> list[LocalFactorData]:
    """Per-factor ``(|R_i|, |m_i|)`` from each local factor on its own."""
    if not R.require_local:
        raise NotLocal("ring is not presented as a product of local rings")
    out = []
    for d, t in zip(R.factors, R.factor_tables):
        units = (t.mul == t.one).any(axis=1)
        out.append(LocalFactorData(t.order, int((~units).sum())))
    return out


def num_maximal_ideals(R: FiniteRing) -> int:
    return len(local_factor_data(R))


def residue_field_sizes(R: FiniteRing) -> list[int]:
    return [f.residue_field_size for f in local_factor_data(R)]


# ---------------------------------------------------------------------------
# JSON


def _bitmap(mask: np.ndarray) -> str:
    return np.packbits(mask.astype(np.uint8), bitorder="little").tobytes().hex()


def bitmap_to_mask(hexstr: str, n: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(bytes.fromhex(hexstr), dtype=np.uint8), bitorder="little")
    return bits[:n].astype(bool)


def desc_to_json(d: LocalRingDesc) -> dict:
    if isinstance(d, ZPK):
        return {"kind": "ZPK", "p": d.p, "k": d.k}
    if isinstance(d, GF):
        mod = d.modulus or smallest_irreducible(d.p, d.k)
        return {"kind": "GF", "p": d.p, "k": d.k, "modulus": list(mod)}
    if isinstance(d, TRUNC):
        return {"kind": "TRUNC", "q": d.q, "m": d.m}
    return {"kind": "TABLE", "n": d.order, "add": d.add.tolist(), "mul": d.mul.tolist(),
            "zero": d.zero, "one": d.one}


def desc_from_json(obj: dict) -> LocalRingDesc:
    kind = obj["kind"]
    if kind == "ZPK":
        return ZPK(obj["p"], obj["k"])
    if kind == "GF":
        mod = obj.get("modulus")
        return GF(obj["p"], obj["k"], tuple(mod) if mod else None)
    if kind == "TRUNC":
        return TRUNC(obj["q"], obj["m"])
    if kind == "TABLE":
        return TABLE(np.array(obj["add"]), np.array(obj["mul"]), obj["zero"], obj["one"])
    raise ValueError(f"unknown factor kind {kind!r}")


def ring_to_json(R: FiniteRing, include_strata: bool = False) -> dict:
    doc = {
        "factors": [desc_to_json(d) for d in R.factors],
        "order": R.order,
        "local_factors": R.require_local,
    }
    if include_strata:
        s = R.strata
        doc["strata"] = {
            "units": _bitmap(s.units_mask),
            "zero_divisors": _bitmap(s.zero_divisors_mask),
            "nilradical": _bitmap(s.nilradical_mask),
            "jacobson": _bitmap(s.jacobson_mask),
            "regular": _bitmap(s.regular_mask),
        }
    return doc


def ring_from_json(doc: dict, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    factors = [desc_from_json(f) for f in doc["factors"]]
    if doc.get("local_factors", True):
        R = make_ring(factors, order_cap=order_cap)
    else:
        (d,) = factors
        R = table_ring(d.add, d.mul, d.zero, d.one)
    if "order" in doc and doc["order"] != R.order:
        raise ValueError(f"order mismatch: document says {doc['order']}, factors give {R.order}")
    return R
