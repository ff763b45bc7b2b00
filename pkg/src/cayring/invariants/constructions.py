"""Explicit constructions: disjoint path families over products of fields,
Latin rectangles, and the optimal colouring of the regular-element graph."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..errors import BadFieldOrder, FactorsNotOrdered, SizeMismatch
from ..ring import FiniteRing, local_factor_data, prime_power
from .cliques import Coloring
from .connectivity import PathFamily

Vertex = tuple[int, ...]


# ---------------------------------------------------------------------------
# disjoint paths in CAY(F_1 x ... x F_n)
#
# For fields, x - y is a zero-divisor iff x and y agree in some coordinate, so
# the graph only depends on the coordinate value sets.  The recursion below
# works on arbitrary value sets because Case 2 restricts one coordinate to
# the two values {x_j, y_j}.


def _drop(v: Vertex, j: int) -> Vertex:
    return v[:j] + v[j + 1:]


def _put(v: Vertex, j: int, b: int) -> Vertex:
    return v[:j] + (b,) + v[j:]


def _lift(sub: list[list[Vertex]], j: int, b: int, X: Vertex, Y: Vertex) -> list[list[Vertex]]:
    """Route each sub-family path through layer ``b`` of coordinate ``j``,
    keeping only its first and last internal vertices."""
    out = []
    for P in sub:
        if len(P) == 2:
            # the sub-family's direct edge: its only "internal" vertex is the target
            out.append([X, _put(P[1], j, b), Y])
            continue
        U, Pt = P[1], P[-2]
        if U == Pt:
            out.append([X, _put(U, j, b), Y])
        else:
            out.append([X, _put(U, j, b), _put(Pt, j, b), Y])
    return out


@lru_cache(maxsize=1 << 17)
def _family(sets: tuple[tuple[int, ...], ...], X: Vertex, Y: Vertex) -> tuple[tuple[Vertex, ...], ...]:
    # memoised: sub-families recur across the many pairs of one product
    return tuple(tuple(p) for p in _build_family(sets, X, Y))


def _build_family(sets: tuple[tuple[int, ...], ...], X: Vertex, Y: Vertex) -> list[list[Vertex]]:
    m = len(sets)
    if m == 1:
        return []
    shared = [j for j in range(m) if X[j] == Y[j]]
    if shared:
        j = shared[0]
        a = X[j]
        rest = sets[:j] + sets[j + 1:]
        Xh, Yh = _drop(X, j), _drop(Y, j)
        sub = _family(rest, Xh, Yh)
        direct = any(len(P) == 2 for P in sub)
        paths = [[X, Y]]
        for A in itertools.product(*rest):
            if A != Xh and A != Yh:
                paths.append([X, _put(A, j, a), Y])
        for b in sets[j]:
            if b == a:
                continue
            paths.extend(_lift(sub, j, b, X, Y))
            if direct:
                # (b, Yh) is already used above, and (b, Xh) ~ Y directly
                paths.append([X, _put(Xh, j, b), Y])
            else:
                paths.append([X, _put(Xh, j, b), _put(Yh, j, b), Y])
        return paths

    wide = [j for j in range(m) if len(sets[j]) >= 3]
    if not wide:
        # every coordinate has two values and X, Y differ everywhere
        return [[X, z, Y] for z in itertools.product(*sets) if z != X and z != Y]
    j = wide[0]
    rest = sets[:j] + sets[j + 1:]
    Xh, Yh = _drop(X, j), _drop(Y, j)
    sub = _family(rest, Xh, Yh)
    paths = []
    for b in sets[j]:
        if b in (X[j], Y[j]):
            continue
        paths.extend(_lift(sub, j, b, X, Y))
        paths.append([X, _put(Xh, j, b), _put(Yh, j, b), Y])
    slab = sets[:j] + (tuple(sorted((X[j], Y[j]))),) + sets[j + 1:]
    paths.extend(_family(slab, X, Y))
    return paths


def lemma27_path_family(fields: Sequence[int], X, Y) -> PathFamily:
    """Internally disjoint ``X``-``Y`` paths in the Cayley graph of a product of
    fields, built constructively (at least ``|Z| - 1`` of them).

    ``X`` and ``Y`` are coordinate tuples or mixed-radix element indices of
    the product of ``GF(q)`` for ``q`` in ``fields``.
    """
    fields = [int(q) for q in fields]
    if len(fields) < 2:
        raise BadFieldOrder("need at least two fields")
    for q in fields:
        if prime_power(q) is None:
            raise BadFieldOrder(f"{q} is not a prime power")
    weights = _weights(tuple(fields))

    def as_tuple(v) -> Vertex:
        if isinstance(v, (int, np.integer)):
            v = int(v)
            if not 0 <= v < math.prod(fields):
                raise ValueError(f"vertex {v} out of range")
            return tuple((v // w) % q for w, q in zip(weights, fields))
        v = tuple(int(c) for c in v)
        if len(v) != len(fields) or any(not 0 <= c < q for c, q in zip(v, fields)):
            raise ValueError(f"vertex {v} out of range")
        return v

    Xt, Yt = as_tuple(X), as_tuple(Y)
    if Xt == Yt:
        raise ValueError("X and Y must differ")
    sets = tuple(tuple(range(q)) for q in fields)
    raw = _family(sets, Xt, Yt)
    code = _codes(tuple(fields))
    return PathFamily(code[Xt], code[Yt], [[code[v] for v in p] for p in raw])


@lru_cache(maxsize=64)
def _weights(fields: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(math.prod(fields[i + 1:]) for i in range(len(fields)))


@lru_cache(maxsize=64)
def _codes(fields: tuple[int, ...]) -> dict[Vertex, int]:
    # itertools.product enumerates coordinate tuples in mixed-radix order
    return {v: i for i, v in enumerate(itertools.product(*(range(q) for q in fields)))}


# ---------------------------------------------------------------------------
# Latin rectangles


@dataclass
class LatinRectangle:
    rows: list[list]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def is_valid(self, symbols: Sequence | None = None) -> bool:
        h, w = self.shape
        if h > w:
            return False
        if any(len(r) != w or len(set(r)) != w for r in self.rows):
            return False
        for c in range(w):
            col = [r[c] for r in self.rows]
            if len(set(col)) != h:
                return False
        if symbols is not None:
            allowed = set(symbols)
            return all(x in allowed for r in self.rows for x in r)
        return True


def build_latin_rectangle(x_size: int, y_size: int, symbols: Sequence) -> LatinRectangle:
    """Row ``i`` is the symbol list cyclically shifted left by ``i``."""
    symbols = list(symbols)
    if x_size > y_size:
        raise SizeMismatch(f"{x_size} rows exceed {y_size} columns")
    if len(symbols) != y_size or len(set(symbols)) != y_size:
        raise SizeMismatch(f"need {y_size} distinct symbols, got {symbols!r}")
    return LatinRectangle([symbols[i:] + symbols[:i] for i in range(x_size)])


# ---------------------------------------------------------------------------
# colouring of Reg(CAY(R))


@dataclass
class _ResidueData:
    maximal: list[int]  # sorted elements of the maximal ideal
    rep: np.ndarray  # element -> minimal representative of its residue class
    nonzero_classes: list[int]  # sorted representatives of non-zero classes


def _residue_data(R: FiniteRing) -> list[_ResidueData]:
    out = []
    for t in R.factor_tables:
        units = (t.mul == t.one).any(axis=1)
        m = np.flatnonzero(~units)
        rep = t.add[:, m].min(axis=1)
        classes = sorted(set(rep.tolist()) - {0})
        out.append(_ResidueData(m.tolist(), rep, classes))
    return out


def regular_clique_chromatic_formula(R: FiniteRing) -> int:
    """``|m_1| * prod_{i>=2} (|R_i| - |m_i|)`` for the declared factor order."""
    data = local_factor_data(R)
    return data[0].maximal_ideal_size * math.prod(
        f.order - f.maximal_ideal_size for f in data[1:]
    )


def color_regular_product(R: FiniteRing) -> tuple[list[int], Coloring]:
    """Colour ``Reg(CAY(R))`` with exactly the optimal number of colours.

    Returns the regular elements (the vertex order of the induced subgraph)
    and the colouring.  Each unit ``x`` gets the tuple made of its
    maximal-ideal offsets ``x_i - pi(x_i)`` and, for ``i >= 2``, the entry of
    a Latin rectangle over the non-zero residues of factor ``i`` at row
    ``pi(x_1)`` and column ``pi(x_i)``.
    """
    sizes = [f.residue_field_size for f in local_factor_data(R)]
    if any(a > b for a, b in zip(sizes, sizes[1:])):
        raise FactorsNotOrdered(f"residue field sizes {sizes} are not non-decreasing")
    data = _residue_data(R)
    regular = sorted(R.strata.regular)
    coords = R.coords[regular]

    offsets = []
    for i, (d, t) in enumerate(zip(data, R.factor_tables)):
        x = coords[:, i]
        xbar = t.add[x, t.neg[d.rep[x]]]
        pos = {e: k for k, e in enumerate(d.maximal)}
        offsets.append([pos[int(v)] for v in xbar])
    radices = [len(d.maximal) for d in data]

    if len(data) >= 2:
        first = data[0].nonzero_classes
        row_of = {c: k for k, c in enumerate(first)}
        for i in range(1, len(data)):
            cls = data[i].nonzero_classes
            L = build_latin_rectangle(len(first), len(cls), cls)
            col_of = {c: k for k, c in enumerate(cls)}
            r = [row_of[int(v)] for v in data[0].rep[coords[:, 0]]]
            c = [col_of[int(v)] for v in data[i].rep[coords[:, i]]]
            offsets.append([col_of[L.rows[a][b]] for a, b in zip(r, c)])
            radices.append(len(cls))

    colors = [0] * len(regular)
    for k in range(len(regular)):
        code = 0
        for digits, radix in zip(offsets, radices):
            code = code * radix + digits[k]
        colors[k] = code
    return regular, Coloring(colors)
