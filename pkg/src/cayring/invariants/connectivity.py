"""Components, distances and Menger-type connectivity.

Maximum flows run on scipy's Dinic implementation over a vertex-split
network: vertex ``v`` becomes ``2v -> 2v+1`` with capacity 1, and every edge
``u ~ v`` becomes arcs ``2u+1 -> 2v`` and ``2v+1 -> 2u`` of capacity 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from ..graph import Graph


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def components(G: Graph) -> list[list[int]]:
    rows = G.rows
    unseen = (1 << G.n) - 1
    out = []
    while unseen:
        s = (unseen & -unseen).bit_length() - 1
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        unseen &= ~comp
        out.append(list(_bits(comp)))
    return out


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(components(G)) == 1


def bfs_distances(G: Graph, source: int) -> list[float]:
    rows = G.rows
    dist = [math.inf] * G.n
    dist[source] = 0
    seen = frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
        for v in _bits(frontier):
            dist[v] = d
    return dist


def distance(G: Graph, u: int, v: int) -> float:
    return bfs_distances(G, u)[v]


def _eccentricity(rows, source: int, n: int) -> int | None:
    full = (1 << n) - 1
    seen = frontier = 1 << source
    d = 0
    while seen != full:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        if not frontier:
            return None
        seen |= frontier
        d += 1
    return d


def diameter(G: Graph) -> float:
    """Maximum eccentricity; ``inf`` for disconnected graphs."""
    if G.n == 0:
        return math.inf
    rows = G.rows
    best = 0
    for s in range(G.n):
        e = _eccentricity(rows, s, G.n)
        if e is None:
            return math.inf
        best = max(best, e)
    return best


# ---------------------------------------------------------------------------
# flows


class _SplitNetwork:
    """Vertex-split unit-capacity network reused across many flow queries."""

    def __init__(self, G: Graph):
        n = G.n
        u, v = np.nonzero(G.adj)
        rows = np.concatenate([2 * np.arange(n), 2 * u + 1])
        cols = np.concatenate([2 * np.arange(n) + 1, 2 * v])
        self.n = n
        self.csr = csr_matrix(
            (np.ones(rows.size, dtype=np.int32), (rows, cols)), shape=(2 * n, 2 * n)
        )

    def flow(self, s: int, t: int):
        return maximum_flow(self.csr, 2 * s + 1, 2 * t, method="dinic")

    def value(self, s: int, t: int) -> int:
        return int(self.flow(s, t).flow_value)


class _EdgeNetwork:
    def __init__(self, G: Graph):
        u, v = np.nonzero(G.adj)
        self.csr = csr_matrix(
            (np.ones(u.size, dtype=np.int32), (u, v)), shape=(G.n, G.n)
        )

    def value(self, s: int, t: int) -> int:
        return int(maximum_flow(self.csr, s, t, method="dinic").flow_value)


def local_vertex_connectivity(G: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint ``s``-``t`` paths (direct edge counts)."""
    if s == t:
        raise ValueError("source and target coincide")
    return _SplitNetwork(G).value(s, t)


def vertex_connectivity(G: Graph, transitive: bool = False) -> int:
    """Exact vertex connectivity via Menger and unit-capacity max flows.

    Fixes a minimum-degree vertex ``v``.  Either some minimum cut avoids
    ``v`` (then it separates ``v`` from a non-neighbour) or every minimum cut
    contains ``v`` (then it separates two non-adjacent neighbours of ``v``).
    Pass ``transitive=True`` only for vertex-transitive graphs: an
    automorphism moves any minimum cut off ``v``, so the second phase is
    unnecessary.
    """
    n = G.n
    if n <= 1 or not is_connected(G):
        return 0
    if G.is_complete():
        return n - 1
    net = _SplitNetwork(G)
    v = int(np.argmin(G.degrees))
    best = int(G.degrees[v])
    for w in np.flatnonzero(~G.adj[v]):
        if w != v:
            best = min(best, net.value(v, int(w)))
    if transitive:
        return best
    nbrs = np.flatnonzero(G.adj[v])
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1:]:
            if not G.adj[x, y]:
                best = min(best, net.value(int(x), int(y)))
    return best


def edge_connectivity(G: Graph) -> int:
    """Minimum over all targets of the edge max flow from vertex 0."""
    n = G.n
    if n <= 1 or not is_connected(G):
        return 0
    net = _EdgeNetwork(G)
    return min(net.value(0, t) for t in range(1, n))


def minimum_degree(G: Graph) -> int:
    return int(G.degrees.min()) if G.n else 0


# ---------------------------------------------------------------------------
# path families


@dataclass
class PathFamily:
    source: int
    target: int
    paths: list[list[int]] = field(default_factory=list)

    def __len__(self):
        return len(self.paths)

    def validate(self, G: Graph) -> list[str]:
        """Return the list of violated invariants (empty when valid)."""
        problems = []
        used: dict[int, int] = {}
        seen_direct = False
        for i, p in enumerate(self.paths):
            if len(p) < 2 or p[0] != self.source or p[-1] != self.target:
                problems.append(f"path {i} does not run from {self.source} to {self.target}")
                continue
            if len(set(p)) != len(p):
                problems.append(f"path {i} repeats a vertex")
            for a, b in zip(p, p[1:]):
                if not G.adj[a, b]:
                    problems.append(f"path {i} uses non-edge {a}-{b}")
            if len(p) == 2:
                if seen_direct:
                    problems.append(f"path {i} duplicates the direct edge")
                seen_direct = True
            for v in p[1:-1]:
                if v in used:
                    problems.append(f"paths {used[v]} and {i} share internal vertex {v}")
                used[v] = i
        return problems

    def is_valid(self, G: Graph) -> bool:
        return not self.validate(G)

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "paths": self.paths}


def disjoint_paths_flow(G: Graph, s: int, t: int) -> PathFamily:
    """A maximum family of internally disjoint ``s``-``t`` paths."""
    if s == t:
        raise ValueError("source and target coincide")
    res = _SplitNetwork(G).flow(s, t)
    F = res.flow.tocsr()
    F.eliminate_zeros()
    succ: dict[int, list[int]] = {}
    coo = F.tocoo()
    for a, b, f in zip(coo.row, coo.col, coo.data):
        if f > 0:
            succ.setdefault(int(a), []).append(int(b))
    paths = []
    for _ in range(int(res.flow_value)):
        node = 2 * s + 1
        path = [s]
        while node != 2 * t:
            nxt = succ[node].pop()
            if nxt % 2 == 0 and nxt != 2 * t:
                # entering an internal vertex; continue from its out-copy
                path.append(nxt // 2)
                succ[nxt].pop()
                nxt += 1
            node = nxt
        path.append(t)
        paths.append(path)
    paths.sort(key=lambda p: (len(p), p))
    return PathFamily(s, t, paths)


def separates(G: Graph, cut, A, B) -> bool:
    """True if removing ``cut`` leaves no edge path from ``A`` to ``B``."""
    keep = sorted(set(range(G.n)) - set(cut))
    pos = {v: i for i, v in enumerate(keep)}
    sub = Graph(G.adj[np.ix_(keep, keep)], check=False)
    comp_of = {}
    for ci, comp in enumerate(components(sub)):
        for v in comp:
            comp_of[keep[v]] = ci
    del pos
    ca = {comp_of[a] for a in A}
    cb = {comp_of[b] for b in B}
    return not (ca & cb)
