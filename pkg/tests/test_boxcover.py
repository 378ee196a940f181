import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dengdim.boxcover import (_greedy_cover, auxiliary_graph, box_covering, greedy_color,
                              restart_order)
from dengdim.errors import ConnectivityError, IntegrityError
from dengdim.graph import DistanceRows, Network, covering_delta, load_edge_list

from conftest import complete_graph, connected_graphs, path_graph


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def min_boxes_exhaustive(g, epsilon):
    d = DistanceRows(g).matrix
    best = None
    for part in set_partitions(list(range(g.node_count))):
        if all(d[u, v] < epsilon for box in part for u, v in itertools.combinations(box, 2)):
            best = len(part) if best is None else min(best, len(part))
    return best


def test_auxiliary_examples():
    p4 = path_graph(4)
    assert set(auxiliary_graph(p4, 2).edges()) == {(0, 2), (0, 3), (1, 3)}
    aux1 = auxiliary_graph(p4, 1)
    assert aux1.edge_count == 4 * 3 // 2
    assert auxiliary_graph(p4, covering_delta(p4)).edge_count == 0


def test_auxiliary_requires_connected():
    with pytest.raises(ConnectivityError):
        auxiliary_graph(load_edge_list("0 1\n2 3\n"), 2)


def test_greedy_color_examples():
    edgeless = Network.from_edges(5, [])
    assert greedy_color(edgeless, [3, 1, 0, 4, 2]).tolist() == [0] * 5
    k6 = complete_graph(6)
    assert sorted(greedy_color(k6, range(6)).tolist()) == list(range(6))
    aux = auxiliary_graph(path_graph(4), 2)
    colors = greedy_color(aux, range(4))
    assert colors.tolist() == [0, 0, 1, 1]
    assert min_boxes_exhaustive(path_graph(4), 2) == 2


@pytest.mark.parametrize("seed", range(5))
def test_p4_two_boxes(seed):
    c = box_covering(path_graph(4), 2, seed=seed, repetitions=3)
    assert c.n_boxes == 2
    assert sorted(c.boxes) == [(0, 1), (2, 3)]


def test_extreme_diameters(zkc):
    c1 = box_covering(zkc, 1, seed=3)
    assert c1.n_boxes == zkc.node_count and set(c1.sizes) == {1}
    cd = box_covering(zkc, covering_delta(zkc), seed=3)
    assert cd.n_boxes == 1 and cd.sizes == [zkc.node_count]


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_nodes=25), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_fast_cover_matches_explicit_greedy(g, epsilon, seed):
    rows = DistanceRows(g)
    order = restart_order(g.node_count, seed, epsilon, 0)
    explicit = greedy_color(auxiliary_graph(g, epsilon, rows), order)
    assert np.array_equal(_greedy_cover(rows, epsilon, order), explicit)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_nodes=40), st.integers(1, 8), st.integers(0, 1000))
def test_partition_and_diameter(g, epsilon, seed):
    c = box_covering(g, epsilon, seed=seed, repetitions=4)
    c.check_partition(g.node_count)
    d = DistanceRows(g).matrix
    for box in c.boxes:
        idx = np.array(box)
        assert d[np.ix_(idx, idx)].max() < epsilon
    assert c.n_boxes == min(c.restart_counts)
    assert c.n_boxes >= 1


@settings(max_examples=15, deadline=None)
@given(connected_graphs(min_nodes=4, max_nodes=8), st.integers(2, 4))
def test_greedy_never_beats_exhaustive(g, epsilon):
    c = box_covering(g, epsilon, seed=0, repetitions=5)
    assert c.n_boxes >= min_boxes_exhaustive(g, epsilon)


def test_tie_goes_to_first_restart(zkc):
    c = box_covering(zkc, 4, seed=11, repetitions=20)
    assert c.restart_counts.index(c.n_boxes) == int(np.argmin(c.restart_counts))
    single = box_covering(zkc, 4, seed=11, repetitions=int(np.argmin(c.restart_counts)) + 1)
    assert single.boxes == c.boxes


def test_deterministic_across_threads(zkc):
    a = box_covering(zkc, 3, seed=5, repetitions=20, workers=1)
    b = box_covering(zkc, 3, seed=5, repetitions=20, workers=4)
    assert a == b


def test_bad_partition_detected():
    from dengdim.boxcover import BoxCovering
    with pytest.raises(IntegrityError):
        BoxCovering(2, ((0, 1), (1, 2)), 0, 1).check_partition(3)
    with pytest.raises(IntegrityError):
        BoxCovering(2, ((0,),), 0, 1).check_partition(2)


def test_json_dump(zkc):
    c = box_covering(zkc, 5, seed=0, repetitions=2)
    data = json.loads(c.to_json(zkc.labels))
    assert data["epsilon"] == 5 and data["n_boxes"] == c.n_boxes
    assert sorted(lab for box in data["boxes"] for lab in box) == sorted(zkc.labels)
    assert (data["seed"], data["repetitions"]) == (0, 2)
