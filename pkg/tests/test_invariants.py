import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayring.dsl import ring_from_spec
from cayring.errors import CapExceeded
from cayring.graph import build_cay, build_reg, complement, complete_graph, cycle_graph, empty_graph
from cayring.invariants import (
    chromatic_number,
    components,
    diameter,
    disjoint_paths_flow,
    edge_connectivity,
    find_hamiltonian_cycle,
    find_odd_hole,
    is_hamiltonian,
    is_hamiltonian_cycle,
    is_induced_cycle,
    is_perfect_small,
    max_clique,
    minimum_degree,
    separates,
    vertex_connectivity,
)

from conftest import from_nx, to_nx


def cay(spec):
    return build_cay(ring_from_spec(spec))


def random_graphs(max_n=11):
    return st.builds(
        lambda n, p, seed: from_nx(nx.gnp_random_graph(n, p, seed=seed)),
        st.integers(1, max_n), st.floats(0.1, 0.9), st.integers(0, 10**6),
    )


# ---- components and distances ------------------------------------------------


def test_components_and_diameter_examples():
    G = cay("Z2 x Z2")
    assert len(components(G)) == 1 and diameter(G) == 2
    G4 = cay("Z4")
    assert len(components(G4)) == 2 and diameter(G4) == math.inf
    assert diameter(cay("Z6")) == 2


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_diameter_matches_networkx(G):
    H = to_nx(G)
    if nx.is_connected(H):
        assert diameter(G) == nx.diameter(H)
    else:
        assert diameter(G) == math.inf
    assert sorted(map(sorted, components(G))) == sorted(sorted(c) for c in nx.connected_components(H))


# ---- connectivity --------------------------------------------------------------


def test_connectivity_examples():
    assert (vertex_connectivity(cay("Z6")), edge_connectivity(cay("Z6"))) == (3, 3)
    assert (vertex_connectivity(cay("Z12")), edge_connectivity(cay("Z12"))) == (6, 7)
    K4 = complete_graph(4)
    assert vertex_connectivity(K4) == edge_connectivity(K4) == 3


@given(random_graphs(12))
@settings(max_examples=80, deadline=None)
def test_connectivity_matches_networkx(G):
    H = to_nx(G)
    k, ke = vertex_connectivity(G), edge_connectivity(G)
    assert k == nx.node_connectivity(H)
    assert ke == nx.edge_connectivity(H)
    assert k <= ke <= minimum_degree(G)


@pytest.mark.parametrize("spec", ["Z12", "Z2 x Z9", "Z4 x GF(4)", "Z3 x Z3 x Z2", "GF(4) x GF(4)"])
def test_transitive_shortcut_agrees_with_full_search(spec):
    G = cay(spec)
    assert vertex_connectivity(G, transitive=True) == vertex_connectivity(G) == nx.node_connectivity(to_nx(G))


def test_disjoint_paths_examples():
    fam = disjoint_paths_flow(cycle_graph(4), 0, 2)
    assert len(fam) == 2 and fam.is_valid(cycle_graph(4))
    G = cay("Z6")
    fam = disjoint_paths_flow(G, 0, 1)
    assert len(fam) == 3 and fam.is_valid(G)
    fam = disjoint_paths_flow(complete_graph(4), 1, 3)
    assert len(fam) == 3 and fam.is_valid(complete_graph(4))


def test_path_family_validation_reports_problems():
    from cayring.invariants import PathFamily
    G = cycle_graph(5)
    bad = PathFamily(0, 2, [[0, 1, 2], [0, 1, 2]])
    assert not bad.is_valid(G)
    assert PathFamily(0, 2, [[0, 3, 2]]).validate(G)  # 0-3 is not an edge


def test_separates():
    G = cay("Z12")
    R = ring_from_spec("Z12")
    S = R.strata
    assert separates(G, sorted(S.zero_divisors - S.nilradical), sorted(S.nilradical), sorted(S.regular))


# ---- cliques and colouring ---------------------------------------------------


def test_clique_and_chromatic_examples():
    R = ring_from_spec("Z6")
    assert max_clique(build_reg(R))[0] == chromatic_number(build_reg(R))[0] == 2
    R = ring_from_spec("Z2 x Z4")
    assert max_clique(build_reg(R))[0] == chromatic_number(build_reg(R))[0] == 2
    K5 = complete_graph(5)
    assert max_clique(K5)[0] == chromatic_number(K5)[0] == 5
    assert max_clique(cay("Z6")) == (3, max_clique(cay("Z6"))[1])


def _brute_chromatic(G):
    for k in range(1, G.n + 1):
        for colors in itertools.product(range(k), repeat=G.n):
            if all(colors[u] != colors[v] for u, v in G.edges()):
                return k
    return 0


@given(random_graphs(8))
@settings(max_examples=60, deadline=None)
def test_clique_and_chromatic_against_oracles(G):
    w, clique = max_clique(G)
    assert w == max(len(c) for c in nx.find_cliques(to_nx(G)))
    assert all(G.adj[u, v] for u, v in itertools.combinations(clique, 2))
    x, col = chromatic_number(G)
    assert col.is_proper(G) and col.palette_size == x
    assert x == _brute_chromatic(G)


def test_chromatic_on_odd_cycle_and_petersen():
    assert chromatic_number(cycle_graph(7))[0] == 3
    P = from_nx(nx.petersen_graph())
    assert chromatic_number(P)[0] == 3 and max_clique(P)[0] == 2


def test_clique_cap():
    with pytest.raises(CapExceeded):
        max_clique(empty_graph(10), cap=5)


# ---- perfectness ---------------------------------------------------------------


def test_perfect_examples():
    assert is_perfect_small(cay("Z2 x Z3")).perfect
    assert is_perfect_small(cay("Z2 x Z2 x Z2")).perfect
    res = is_perfect_small(cay("Z3 x Z3 x Z3"))
    assert not res.perfect
    H = complement(cay("Z3 x Z3 x Z3")) if res.in_complement else cay("Z3 x Z3 x Z3")
    assert len(res.hole) >= 5 and len(res.hole) % 2 == 1 and is_induced_cycle(H, res.hole)


def _has_odd_hole_nx(G):
    return any(len(c) >= 5 and len(c) % 2 for c in nx.chordless_cycles(to_nx(G)))


@given(random_graphs(10))
@settings(max_examples=80, deadline=None)
def test_odd_hole_search_against_networkx(G):
    hole = find_odd_hole(G)
    assert (hole is not None) == _has_odd_hole_nx(G)
    if hole is not None:
        assert is_induced_cycle(G, hole) and len(hole) % 2 == 1 and len(hole) >= 5


def test_c5_and_c7_complement():
    assert find_odd_hole(cycle_graph(5)) is not None
    res = is_perfect_small(complement(cycle_graph(7)))
    assert not res.perfect and res.in_complement and len(res.hole) == 7


# ---- Hamiltonicity -------------------------------------------------------------


def test_hamiltonian_examples():
    ok, cycle = is_hamiltonian(cay("Z6"))
    assert ok and is_hamiltonian_cycle(cay("Z6"), cycle)
    assert not is_hamiltonian(cay("Z4"))[0]
    assert is_hamiltonian(cycle_graph(5))[0]


def _brute_hamiltonian(G):
    if G.n < 3:
        return False
    for perm in itertools.permutations(range(1, G.n)):
        cyc = (0,) + perm
        if all(G.adj[cyc[i], cyc[(i + 1) % G.n]] for i in range(G.n)):
            return True
    return False


@given(random_graphs(8))
@settings(max_examples=80, deadline=None)
def test_hamiltonian_against_brute_force(G):
    cycle = find_hamiltonian_cycle(G)
    assert (cycle is not None) == _brute_hamiltonian(G)
    if cycle is not None:
        assert is_hamiltonian_cycle(G, cycle)


def test_petersen_is_not_hamiltonian():
    assert find_hamiltonian_cycle(from_nx(nx.petersen_graph())) is None


def test_hamiltonian_cap():
    with pytest.raises(CapExceeded):
        find_hamiltonian_cycle(cycle_graph(70))
