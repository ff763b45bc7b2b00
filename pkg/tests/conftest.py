import networkx as nx
import pytest

from cayring.graph import Graph
from cayring.ring import crt_decompose


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def from_nx(H: nx.Graph) -> Graph:
    nodes = sorted(H.nodes)
    return Graph(nx.to_numpy_array(H, nodelist=nodes, dtype=bool))


def residues(n: int):
    """(ring, b) with b[r] the element of the CRT product that represents r mod n."""
    R, b = crt_decompose(n)
    return R, [int(x) for x in b]


@pytest.fixture
def nxg():
    return to_nx


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
