"""Box covering by greedy colouring of the distance-threshold graph.

Two nodes may share a box of diameter ``epsilon`` only if their hop distance
is below ``epsilon``. Joining every pair at distance ``>= epsilon`` gives an
auxiliary graph whose proper colourings are exactly the valid coverings;
greedy colouring over random node orders approximates the minimum.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError
from .graph import DistanceRows, Network, require_connected

DEFAULT_REPETITIONS = 20


@dataclass(frozen=True)
class BoxCovering:
    epsilon: int
    boxes: tuple[tuple[int, ...], ...]
    seed: int
    repetitions: int
    # N_b of every restart, in restart order
    restart_counts: tuple[int, ...] = ()

    @property
    def n_boxes(self) -> int:
        return len(self.boxes)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.boxes]

    @property
    def n_boxes_variance(self) -> float:
        if len(self.restart_counts) < 2:
            return 0.0
        return float(np.var(self.restart_counts, ddof=1))

    def check_partition(self, n: int) -> None:
        seen = np.zeros(n, dtype=bool)
        for box in self.boxes:
            if not box:
                raise IntegrityError("empty box")
            for v in box:
                if not 0 <= v < n or seen[v]:
                    raise IntegrityError(f"node {v} is out of range or appears in two boxes")
                seen[v] = True
        if not seen.all():
            raise IntegrityError(f"{int((~seen).sum())} nodes are not covered")

    def to_json(self, labels=None) -> str:
        def lab(v):
            return labels[v] if labels is not None else v
        return json.dumps({
            "epsilon": self.epsilon,
            "n_boxes": self.n_boxes,
            "boxes": [[lab(v) for v in box] for box in self.boxes],
            "seed": self.seed,
            "repetitions": self.repetitions,
        })


def auxiliary_graph(g: Network, epsilon: int, rows: DistanceRows | None = None) -> Network:
    """Graph joining every pair of nodes at hop distance ``>= epsilon``."""
    if epsilon < 1:
        raise ValueError("epsilon must be >= 1")
    require_connected(g)
    rows = rows or DistanceRows(g)
    n = g.node_count
    edges = []
    for u in range(n):
        far = np.flatnonzero(rows[u][u + 1:] >= epsilon) + u + 1
        edges.extend((u, int(v)) for v in far)
    return Network.from_edges(n, edges, name=f"{g.name}-aux{epsilon}", labels=g.labels)


def greedy_color(aux: Network, order) -> np.ndarray:
    """Give each node, in ``order``, the smallest colour unused by its coloured neighbours."""
    colors = np.full(aux.node_count, -1, dtype=np.int64)
    for v in order:
        used = {colors[u] for u in aux.adjacency[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def _greedy_cover(rows: DistanceRows, epsilon: int, order) -> np.ndarray:
    """Greedy colouring of the auxiliary graph without building it.

    ``reach[c, v]`` holds the largest distance from any member of colour ``c``
    to ``v``; ``v`` may take colour ``c`` iff that is below ``epsilon``.
    """
    n = len(rows)
    colors = np.full(n, -1, dtype=np.int64)
    first = rows[order[0]]
    reach = np.empty((16, n), dtype=first.dtype)
    k = 0
    for v in order:
        row = rows[v]
        if k:
            fits = reach[:k, v] < epsilon
            c = int(np.argmax(fits)) if fits.any() else k
        else:
            c = 0
        if c == k:
            if k == reach.shape[0]:
                reach = np.concatenate([reach, np.empty_like(reach)])
            reach[k] = row
            k += 1
        else:
            np.maximum(reach[c], row, out=reach[c])
        colors[v] = c
    return colors


def restart_order(n: int, seed: int, epsilon: int, restart: int) -> np.ndarray:
    """Node order for one restart; derived from (seed, epsilon, restart) only."""
    ss = np.random.SeedSequence(seed, spawn_key=(epsilon, restart))
    return np.random.default_rng(ss).permutation(n)


def _boxes_from_colors(colors: np.ndarray) -> tuple[tuple[int, ...], ...]:
    k = int(colors.max()) + 1
    order = np.argsort(colors, kind="stable")
    bounds = np.searchsorted(colors[order], np.arange(k + 1))
    return tuple(tuple(int(v) for v in order[bounds[c]:bounds[c + 1]]) for c in range(k))


def box_covering(g: Network, epsilon: int, seed: int = 0,
                 repetitions: int = DEFAULT_REPETITIONS,
                 rows: DistanceRows | None = None, workers: int = 1) -> BoxCovering:
    """Best of ``repetitions`` greedy colourings; ties go to the lowest restart."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if epsilon < 1:
        raise ValueError("epsilon must be >= 1")
    require_connected(g)
    rows = rows or DistanceRows(g)
    n = g.node_count

    def one(r):
        return _greedy_cover(rows, epsilon, restart_order(n, seed, epsilon, r))

    if workers > 1 and repetitions > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(repetitions)))
    else:
        results = [one(r) for r in range(repetitions)]

    counts = [int(c.max()) + 1 for c in results]
    best = int(np.argmin(counts))
    return BoxCovering(
        epsilon=epsilon,
        boxes=_boxes_from_colors(results[best]),
        seed=seed,
        repetitions=repetitions,
        restart_counts=tuple(counts),
    )
