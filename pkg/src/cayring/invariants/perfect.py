"""Perfectness of small graphs through odd-hole search in ``G`` and its complement."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapExceeded
from ..graph import Graph, complement

HOLE_CAP = 64


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _twin_free(rows: list[int], n: int) -> list[int]:
    """Vertices kept after repeatedly dropping true and false twins.

    A hole of length >= 5 never holds two twins, and a twin can stand in for
    its partner in any hole, so holes survive the reduction in both the graph
    and its complement.
    """
    alive = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for closed in (True, False):
            seen = {}
            for v in _bits(alive):
                key = (rows[v] & alive) | ((1 << v) if closed else 0)
                if not closed:
                    key &= ~(1 << v)
                if key in seen:
                    alive &= ~(1 << v)
                    changed = True
                else:
                    seen[key] = v
    return list(_bits(alive))


def find_odd_hole(G: Graph, min_length: int = 5) -> list[int] | None:
    """An induced odd cycle of length >= ``min_length``, or None.

    Holes are searched with their smallest vertex ``s`` first.  A partial
    hole ``s, p1, ..., pk`` is summarised by ``(pk, C, length class)`` where
    ``C`` holds the vertices still non-adjacent to ``p1..p(k-1)``; that state
    determines every completion, so failed states are memoised.
    """
    keep = _twin_free(G.rows, G.n)
    idx = {v: i for i, v in enumerate(keep)}
    rows = [0] * len(keep)
    for v in keep:
        r = 0
        for u in _bits(G.rows[v]):
            if u in idx:
                r |= 1 << idx[u]
        rows[idx[v]] = r
    hole = _search(rows, len(keep), min_length)
    return None if hole is None else [keep[i] for i in hole]


def _search(rows: list[int], n: int, min_length: int) -> list[int] | None:
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        ns = rows[s]
        failed: set = set()
        path = [s]

        def extend(last: int, C: int, k: int) -> bool:
            # k = number of vertices after s on the path; closing adds one more
            key = (last, C, k if k < min_length - 2 else min_length - 2 + (k - min_length) % 2)
            if key in failed:
                return False
            cand = rows[last] & C
            if k + 2 >= min_length and (k + 2) % 2 == 1:
                closing = cand & ns
                if closing:
                    w = (closing & -closing).bit_length() - 1
                    path.append(w)
                    return True
            C2 = C & ~rows[last] & ~(1 << last)
            # another vertex must still be able to close the cycle
            if C2 & ns:
                for w in _bits(cand & ~ns):
                    path.append(w)
                    if extend(w, C2, k + 1):
                        return True
                    path.pop()
            failed.add(key)
            return False

        for p1 in _bits(ns & allowed):
            path.append(p1)
            C = allowed & ~(1 << p1)
            # p2 onwards must avoid N(s) except the closing vertex
            if extend(p1, C, 1):
                return path
            path.pop()
    return None


def is_induced_cycle(G: Graph, cycle: list[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j - i == 1) or (i == 0 and j == k - 1)
            if bool(G.adj[cycle[i], cycle[j]]) != adjacent:
                return False
    return True


@dataclass
class PerfectnessResult:
    perfect: bool
    hole: list[int] | None = None
    in_complement: bool = False

    def __bool__(self):
        return self.perfect

    def to_json(self) -> dict:
        return {"perfect": self.perfect, "hole": self.hole,
                "graph": None if self.hole is None else ("complement" if self.in_complement else "graph")}


def is_perfect_small(G: Graph, cap: int = HOLE_CAP) -> PerfectnessResult:
    if G.n > cap:
        raise CapExceeded("odd-hole search", G.n, cap)
    hole = find_odd_hole(G)
    if hole is not None:
        return PerfectnessResult(False, hole, False)
    hole = find_odd_hole(complement(G))
    if hole is not None:
        return PerfectnessResult(False, hole, True)
    return PerfectnessResult(True)
