"""Graphs attached to finite rings, plus the combinators needed to compare them.

A :class:`Graph` keeps a dense boolean adjacency matrix; Python-int bit rows
are derived lazily because the search routines in :mod:`cayring.invariants`
work on bitsets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadDivisor, CapExceeded, EmptyVertexSet
from .ring import FiniteRing

ISOMORPHISM_CAP = 512


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, adjacency, labels: Sequence[str] | None = None, *, check: bool = True):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if check:
            if not np.array_equal(adj, adj.T):
                raise ValueError("adjacency is not symmetric")
            if adj.diagonal().any():
                raise ValueError("graph has a loop")
        adj.setflags(write=False)
        self.adj = adj
        self.n = adj.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("one label per vertex required")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    __hash__ = None

    @cached_property
    def rows(self) -> list[int]:
        """Neighbourhoods as Python-int bitsets (bit ``j`` of ``rows[i]``)."""
        packed = np.packbits(self.adj, axis=1, bitorder="little")
        return [int.from_bytes(r.tobytes(), "little") for r in packed]

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.adj, 1))
        return list(zip(u.tolist(), v.tolist()))

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def is_regular(self) -> bool:
        return self.n == 0 or bool((self.degrees == self.degrees[0]).all())

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    # -- export ---------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, doc: dict) -> "Graph":
        n = doc["n"]
        adj = np.zeros((n, n), dtype=bool)
        for u, v in doc["edges"]:
            adj[u, v] = adj[v, u] = True
        return cls(adj, doc.get("labels"))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {json.dumps(name)} {{"]
        for v, lab in enumerate(self.labels):
            lines.append(f"  {v} [label={json.dumps(lab)}];")
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ring graphs


def _ring_graph(R: FiniteRing, table: np.ndarray, mask: np.ndarray) -> Graph:
    adj = mask[table].copy()
    np.fill_diagonal(adj, False)
    return Graph(adj, R.labels(), check=False)


def build_cay(R: FiniteRing) -> Graph:
    """Cayley graph of ``R+`` with connection set the non-zero zero-divisors."""
    zd = R.strata.zero_divisors_mask
    G = _ring_graph(R, R.sub_table, zd)
    degree = int(zd.sum()) - 1
    assert (G.degrees == degree).all(), "Cayley graph must be |Z(R)|-1 regular"
    return G


def build_total_graph(R: FiniteRing) -> Graph:
    return _ring_graph(R, R.add_table, R.strata.zero_divisors_mask)


def build_unitary_cayley(R: FiniteRing) -> Graph:
    G = _ring_graph(R, R.sub_table, R.strata.units_mask)
    if R.strata.units_mask.sum() + R.strata.zero_divisors_mask.sum() == R.order:
        assert G == complement(build_cay(R)), "unitary Cayley graph must complement CAY(R)"
    return G


def build_reg(R: FiniteRing) -> Graph:
    """CAY(R) induced on the regular elements."""
    return induced_subgraph(build_cay(R), sorted(R.strata.regular))


def build_gcd_graph(n: int, T: Iterable[int]) -> Graph:
    T = sorted(set(T))
    for d in T:
        if not (1 <= d <= n - 1 and n % d == 0):
            raise BadDivisor(f"{d} is not a proper divisor of {n}")
    r = np.arange(n)
    g = np.gcd((r[:, None] - r[None, :]) % n, n)
    adj = np.isin(g, T)
    np.fill_diagonal(adj, False)
    return Graph(adj, check=False)


# ---------------------------------------------------------------------------
# named graphs and combinators


def complete_graph(n: int) -> Graph:
    adj = ~np.eye(n, dtype=bool)
    return Graph(adj, check=False)


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool), check=False)


def cycle_graph(n: int) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    return Graph(adj, check=False)


def path_graph(n: int) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = True
    return Graph(adj, check=False)


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    S = sorted(set(int(v) for v in S))
    if not S:
        raise EmptyVertexSet("induced subgraph of an empty vertex set")
    idx = np.array(S)
    return Graph(G.adj[np.ix_(idx, idx)], [G.labels[v] for v in S], check=False)


def complement(G: Graph) -> Graph:
    adj = ~G.adj
    np.fill_diagonal(adj, False)
    return Graph(adj, G.labels, check=False)


def _pair_labels(G: Graph, H: Graph) -> list[str]:
    return [f"({a},{b})" for a in G.labels for b in H.labels]


def cartesian_product(G: Graph, H: Graph) -> Graph:
    eg, eh = np.eye(G.n, dtype=bool), np.eye(H.n, dtype=bool)
    adj = np.kron(G.adj, eh) | np.kron(eg, H.adj)
    return Graph(adj, _pair_labels(G, H), check=False)


def direct_product(G: Graph, H: Graph) -> Graph:
    return Graph(np.kron(G.adj, H.adj), _pair_labels(G, H), check=False)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    adj = np.zeros((G.n + H.n, G.n + H.n), dtype=bool)
    adj[: G.n, : G.n] = G.adj
    adj[G.n:, G.n:] = H.adj
    return Graph(adj, list(G.labels) + list(H.labels), check=False)


# ---------------------------------------------------------------------------
# closed-neighbourhood quotient


@dataclass(frozen=True)
class QuotientCertificate:
    classes: tuple[tuple[int, ...], ...]
    class_map: tuple[int, ...]


def quotient_graph(G: Graph) -> tuple[Graph, QuotientCertificate]:
    """Collapse vertices with equal closed neighbourhoods."""
    closed = G.adj | np.eye(G.n, dtype=bool)
    keys = np.packbits(closed, axis=1)
    groups: dict[bytes, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(keys[v].tobytes(), []).append(v)
    classes = sorted((tuple(vs) for vs in groups.values()), key=lambda c: c[0])
    class_map = [0] * G.n
    for i, c in enumerate(classes):
        for v in c:
            class_map[v] = i
    reps = np.array([c[0] for c in classes])
    cm = np.array(class_map)
    # adjacency must be constant between classes (and complete inside one)
    lifted = G.adj[np.ix_(reps, reps)][np.ix_(cm, cm)]
    expected = lifted | (cm[:, None] == cm[None, :])
    assert np.array_equal(closed, expected), "closed-neighbourhood classes are not modules"
    labels = ["{" + ",".join(G.labels[v] for v in c) + "}" for c in classes]
    Q = Graph(G.adj[np.ix_(reps, reps)], labels, check=False)
    return Q, QuotientCertificate(tuple(classes), tuple(class_map))


# ---------------------------------------------------------------------------
# isomorphism by individualisation and refinement


def _refine(adjs: list[np.ndarray], colors: list[np.ndarray]) -> list[np.ndarray] | None:
    """Jointly refine vertex colourings of several graphs to equitable ones.

    Colour ids are assigned from the sorted union of signatures, so equal
    colours mean the same thing in every graph.  Returns None as soon as the
    colour histograms diverge.
    """
    sizes = [c.size for c in colors]
    while True:
        k = int(max(c.max() for c in colors)) + 1
        sigs = []
        for A, c in zip(adjs, colors):
            onehot = np.zeros((c.size, k), dtype=np.int64)
            onehot[np.arange(c.size), c] = 1
            sigs.append(np.concatenate([c[:, None], A @ onehot], axis=1))
        allsig = np.concatenate(sigs, axis=0)
        _, inv = np.unique(allsig, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        new = np.split(inv, np.cumsum(sizes)[:-1])
        hists = [np.bincount(c, minlength=inv.max() + 1) for c in new]
        if any(not np.array_equal(hists[0], h) for h in hists[1:]):
            return None
        if int(inv.max()) + 1 == k:
            return new
        colors = new


def are_isomorphic(G: Graph, H: Graph, cap: int = ISOMORPHISM_CAP):
    """Decide ``G ≅ H``; returns ``(True, mapping)`` or ``(False, None)``.

    ``mapping[v]`` is the vertex of ``H`` matched to vertex ``v`` of ``G``.
    """
    for X in (G, H):
        if X.n > cap:
            raise CapExceeded("isomorphism test", X.n, cap)
    if G.n != H.n or G.num_edges != H.num_edges:
        return False, None
    if not np.array_equal(np.sort(G.degrees), np.sort(H.degrees)):
        return False, None
    if G.n == 0:
        return True, []
    A, B = G.adj.astype(np.int64), H.adj.astype(np.int64)
    start = _refine([A, B], [np.zeros(G.n, dtype=np.int64), np.zeros(H.n, dtype=np.int64)])
    if start is None:
        return False, None
    result = _search(A, B, start[0], start[1])
    if result is None:
        return False, None
    mapping = [int(x) for x in result]
    assert np.array_equal(G.adj, H.adj[np.ix_(mapping, mapping)])
    return True, mapping


def _search(A, B, cg, ch):
    counts = np.bincount(cg)
    if counts.max() == 1:
        order = np.argsort(ch)
        mapping = order[cg]
        if np.array_equal(A, B[np.ix_(mapping, mapping)]):
            return mapping
        return None
    # smallest non-singleton cell, lowest colour on ties
    nontrivial = np.flatnonzero(counts > 1)
    cell = nontrivial[np.argmin(counts[nontrivial])]
    u = int(np.flatnonzero(cg == cell)[0])
    fresh = int(max(cg.max(), ch.max())) + 1
    for v in np.flatnonzero(ch == cell):
        cg2, ch2 = cg.copy(), ch.copy()
        cg2[u] = fresh
        ch2[v] = fresh
        refined = _refine([A, B], [cg2, ch2])
        if refined is None:
            continue
        found = _search(A, B, refined[0], refined[1])
        if found is not None:
            return found
    return None


def translation_is_automorphism(G: Graph, R: FiniteRing, g: int) -> bool:
    perm = R.add_table[:, g]
    return bool(np.array_equal(G.adj, G.adj[np.ix_(perm, perm)]))
