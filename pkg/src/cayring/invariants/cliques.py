"""Exact clique number and chromatic number on bitset adjacency."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapExceeded
from ..graph import Graph

EXACT_CAP = 512


def _check_cap(G: Graph, cap: int, what: str):
    if G.n > cap:
        raise CapExceeded(what, G.n, cap)


def _order(G: Graph) -> list[int]:
    # descending degree, then index
    return sorted(range(G.n), key=lambda v: (-int(G.degrees[v]), v))


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_clique(G: Graph, cap: int = EXACT_CAP) -> tuple[int, list[int]]:
    """Maximum clique by branch and bound with a greedy-colouring bound.

    Vertices are relabelled by descending degree so the first clique found is
    the greedy one and ties resolve deterministically.
    """
    _check_cap(G, cap, "max clique")
    if G.n == 0:
        return 0, []
    order = _order(G)
    pos = {v: i for i, v in enumerate(order)}
    rows = [0] * G.n
    for v in range(G.n):
        r = 0
        for u in _bits(G.rows[v]):
            r |= 1 << pos[u]
        rows[pos[v]] = r

    best: list[int] = []

    def colour_bound(P: int):
        # greedy sequential colouring of P; yields (vertex, colour) by ascending colour
        out = []
        colour = 0
        while P:
            colour += 1
            Q = P
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                P &= ~low
                Q &= ~low & ~rows[v]
                out.append((v, colour))
        return out

    def expand(R: list[int], P: int):
        nonlocal best
        for v, c in reversed(colour_bound(P)):
            if len(R) + c <= len(best):
                return
            R.append(v)
            NP = P & rows[v]
            if NP:
                expand(R, NP)
            elif len(R) > len(best):
                best = R[:]
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << G.n) - 1)
    witness = sorted(order[i] for i in best)
    return len(witness), witness


@dataclass
class Coloring:
    colors: list[int]

    @property
    def palette_size(self) -> int:
        return len(set(self.colors))

    def conflicts(self, G: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in G.edges() if self.colors[u] == self.colors[v]]

    def is_proper(self, G: Graph) -> bool:
        return len(self.colors) == G.n and not self.conflicts(G)

    def to_json(self) -> dict:
        return {"colors": self.colors, "palette_size": self.palette_size}


def _dsatur_greedy(G: Graph) -> list[int]:
    rows = G.rows
    n = G.n
    colors = [-1] * n
    used = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (bin(used[u]).count("1"), int(G.degrees[u]), -u),
        )
        c = 0
        while used[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in _bits(rows[v]):
            used[u] |= 1 << c
    return colors


def chromatic_number(G: Graph, cap: int = EXACT_CAP) -> tuple[int, Coloring]:
    """Exact chromatic number: DSatur branch and bound between the clique
    lower bound and the greedy DSatur upper bound."""
    _check_cap(G, cap, "chromatic number")
    n = G.n
    if n == 0:
        return 0, Coloring([])
    lower, clique = max_clique(G, cap)
    best_colors = _dsatur_greedy(G)
    best = max(best_colors) + 1
    if best > lower:
        rows = G.rows
        colors = [-1] * n
        # pre-colour the maximum clique; its colours are forced up to symmetry
        for i, v in enumerate(clique):
            colors[v] = i
        used = [0] * n
        for v in clique:
            for u in _bits(rows[v]):
                used[u] |= 1 << colors[v]

        def solve(k_used: int, remaining: int):
            nonlocal best, best_colors
            if remaining == 0:
                if k_used < best:
                    best = k_used
                    best_colors = colors[:]
                return best == lower
            v = max(
                (u for u in range(n) if colors[u] < 0),
                key=lambda u: (bin(used[u]).count("1"), int(G.degrees[u]), -u),
            )
            limit = min(k_used + 1, best - 1)
            for c in range(limit):
                if used[v] >> c & 1:
                    continue
                colors[v] = c
                touched = [u for u in _bits(rows[v]) if colors[u] < 0 and not used[u] >> c & 1]
                for u in touched:
                    used[u] |= 1 << c
                done = solve(max(k_used, c + 1), remaining - 1)
                for u in touched:
                    used[u] &= ~(1 << c)
                colors[v] = -1
                if done:
                    return True
            return False

        solve(len(clique), n - len(clique))
    return best, Coloring(list(best_colors))
