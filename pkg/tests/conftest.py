import networkx as nx
import pytest
from hypothesis import strategies as st

from dengdim.datasets import karate_club
from dengdim.graph import Network

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(G, name=""):
    index = {v: i for i, v in enumerate(G.nodes())}
    return Network.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges()],
                              name=name, labels=tuple(str(v) for v in G.nodes()))


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges())
    return G


def path_graph(n):
    return Network.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def complete_graph(n):
    return Network.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"K{n}")


@pytest.fixture(scope="session")
def zkc():
    return karate_club()


@st.composite
def connected_graphs(draw, min_nodes=2, max_nodes=30):
    """Random connected graphs: a random spanning tree plus extra edges."""
    n = draw(st.integers(min_nodes, max_nodes))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = [(i, p) for i, p in zip(range(1, n), parents)]
    if n > 2:
        extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
        edges += extra
    return Network.from_edges(n, edges, name="random")
