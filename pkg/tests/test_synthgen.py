import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dengdim.errors import GenSpecError
from dengdim.graph import connected_components, load_edge_list
from dengdim.synthgen import GenSpec, export_edge_list, generate_ba, generate_ws


def check_simple(g):
    for u, nb in enumerate(g.adjacency):
        assert u not in nb
        assert len(set(nb)) == len(nb)
        for v in nb:
            assert u in g.adjacency[v]


def test_ba_tree():
    g = generate_ba(GenSpec("ba", 5, m=1, seed=0))
    assert g.edge_count == 4
    assert connected_components(g)[0] == 1


def test_ba_500_edge_count():
    g = generate_ba(GenSpec("ba", 500, m=3, seed=1))
    assert g.edge_count == 3 + 497 * 3
    # a reference BA-500 network with the same parameters has 1515 edges
    assert abs(g.edge_count - 1515) / 1515 < 0.02
    check_simple(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 80), st.integers(1, 6), st.integers(0, 10_000))
def test_ba_edge_count_property(n, m, seed):
    if m >= n:
        m = n - 1
    g = generate_ba(GenSpec("ba", n, m=m, seed=seed))
    assert g.edge_count == m * (m - 1) // 2 + (n - m) * m
    check_simple(g)


def test_ba_deterministic():
    a = generate_ba(GenSpec("ba", 300, m=3, seed=9))
    b = generate_ba(GenSpec("ba", 300, m=3, seed=9))
    c = generate_ba(GenSpec("ba", 300, m=3, seed=10))
    assert a.adjacency == b.adjacency
    assert a.adjacency != c.adjacency


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_ba_heavy_tail(seed):
    deg = np.sort(generate_ba(GenSpec("ba", 3000, m=3, seed=seed)).degrees())
    top_decile = deg[int(0.9 * len(deg)):]
    assert top_decile.mean() >= 5 * np.median(deg)


def test_ws_lattice():
    g = generate_ws(GenSpec("ws", 100, k=10, p=0.0, seed=0))
    assert g.edge_count == 500
    assert all(len(nb) == 10 for nb in g.adjacency)
    assert 5 in g.adjacency[0] and 95 in g.adjacency[0] and 6 not in g.adjacency[0]


def test_ws_full_rewire():
    lattice = generate_ws(GenSpec("ws", 200, k=10, p=0.0, seed=4))
    g = generate_ws(GenSpec("ws", 200, k=10, p=1.0, seed=4))
    assert g.edge_count == 1000
    kept = set(g.edges()) & set(lattice.edges())
    # rewired edges can land back on lattice positions only by chance
    assert len(kept) < 0.1 * 1000
    check_simple(g)


@settings(max_examples=30, deadline=None)
@given(st.integers(12, 120), st.sampled_from([2, 4, 6, 10]), st.floats(0, 1),
       st.integers(0, 1000))
def test_ws_edge_count_property(n, k, p, seed):
    g = generate_ws(GenSpec("ws", n, k=k, p=p, seed=seed))
    assert g.edge_count == n * k // 2
    check_simple(g)


def test_ws_saturated_nodes_skip():
    g = generate_ws(GenSpec("ws", 5, k=4, p=1.0, seed=0))
    assert g.edge_count == 10
    assert g.meta["rewire_skipped"] == 10


def test_ws_deterministic():
    spec = GenSpec("ws", 500, k=10, p=0.1, seed=3)
    assert generate_ws(spec).adjacency == generate_ws(spec).adjacency


@pytest.mark.parametrize("kwargs", [
    dict(kind="ba", n=5, m=5), dict(kind="ba", n=5, m=0), dict(kind="ws", n=10, k=3),
    dict(kind="ws", n=10, k=10), dict(kind="ws", n=10, k=4, p=1.5), dict(kind="er", n=10),
])
def test_invalid_specs(kwargs):
    with pytest.raises(GenSpecError):
        GenSpec(**kwargs)


def test_parse_and_export():
    spec = GenSpec.parse("ws:n=60,k=4,p=0.2", seed=7)
    assert spec == GenSpec("ws", 60, k=4, p=0.2, seed=7)
    assert GenSpec.parse("ba:n=50,seed=3", seed=7).seed == 3
    with pytest.raises(GenSpecError):
        GenSpec.parse("ba:n=50,q=1")
    with pytest.raises(GenSpecError):
        GenSpec.parse("ba:m=2")
    g = generate_ws(spec)
    text = export_edge_list(g)
    assert text.startswith("# genspec: ws:n=60,k=4,p=0.2,seed=7\n")
    again = load_edge_list(text)
    assert again.edge_count == g.edge_count
