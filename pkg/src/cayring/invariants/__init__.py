"""Exact graph invariants and the constructive procedures built on them."""
from .cliques import EXACT_CAP, Coloring, chromatic_number, max_clique
from .connectivity import (
    PathFamily,
    bfs_distances,
    components,
    diameter,
    disjoint_paths_flow,
    distance,
    edge_connectivity,
    is_connected,
    local_vertex_connectivity,
    minimum_degree,
    separates,
    vertex_connectivity,
)
from .constructions import (
    LatinRectangle,
    build_latin_rectangle,
    color_regular_product,
    lemma27_path_family,
    regular_clique_chromatic_formula,
)
from .hamilton import HAMILTON_CAP, find_hamiltonian_cycle, is_hamiltonian, is_hamiltonian_cycle
from .perfect import HOLE_CAP, PerfectnessResult, find_odd_hole, is_induced_cycle, is_perfect_small

__all__ = [name for name in dir() if not name.startswith("_")]
