"""Hamiltonian cycles by backtracking with degree and connectivity pruning."""
from __future__ import annotations

from ..errors import CapExceeded
from ..graph import Graph
from .connectivity import is_connected

HAMILTON_CAP = 64


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _popcount(x: int) -> int:
    return bin(x).count("1")


def find_hamiltonian_cycle(G: Graph, cap: int = HAMILTON_CAP) -> list[int] | None:
    n = G.n
    if n > cap:
        raise CapExceeded("Hamiltonian cycle search", n, cap)
    if n < 3 or not is_connected(G) or int(G.degrees.min()) < 2:
        return None
    rows = G.rows
    start = 0
    path = [start]

    def reachable(free: int, v: int) -> bool:
        # every unvisited vertex must stay reachable from the path end
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= rows[u]
            frontier = nxt & free & ~seen
            seen |= frontier
        return (seen & free) == free

    def extend(v: int, free: int) -> bool:
        if not free:
            return bool(rows[v] >> start & 1)
        # the cycle closes through a free neighbour of start
        if not rows[start] & free:
            return False
        # each free vertex needs two usable neighbours among free | {v, start}
        ends = free | (1 << v) | (1 << start)
        for u in _bits(free):
            deg = _popcount(rows[u] & ends)
            if deg < 2:
                return False
        if not reachable(free, v):
            return False
        cand = list(_bits(rows[v] & free))
        # Warnsdorff: fewest onward options first
        cand.sort(key=lambda u: (_popcount(rows[u] & free), u))
        for u in cand:
            path.append(u)
            if extend(u, free & ~(1 << u)):
                return True
            path.pop()
        return False

    if extend(start, ((1 << n) - 1) & ~1):
        return path[:]
    return None


def is_hamiltonian(G: Graph, cap: int = HAMILTON_CAP) -> tuple[bool, list[int] | None]:
    cycle = find_hamiltonian_cycle(G, cap)
    return cycle is not None, cycle


def is_hamiltonian_cycle(G: Graph, cycle: list[int]) -> bool:
    n = G.n
    if len(cycle) != n or sorted(cycle) != list(range(n)):
        return False
    return all(G.adj[cycle[i], cycle[(i + 1) % n]] for i in range(n))
