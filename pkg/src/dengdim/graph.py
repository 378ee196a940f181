"""Undirected simple graphs, edge-list I/O and hop distances."""

from __future__ import annotations

import io
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import ConnectivityError, EmptyGraphError, ParseError

log = logging.getLogger(__name__)

UNREACHABLE = -1

# Above this node count distance rows are computed on demand instead of
# holding the full N x N matrix.
DENSE_DISTANCE_LIMIT = 20_000


@dataclass(frozen=True, eq=False)
class Network:
    """Undirected, unweighted simple graph on nodes ``0..N-1``.

    ``labels[i]`` is the external label of node ``i`` (as read from an edge
    list, or ``str(i)`` for generated graphs).
    """

    adjacency: tuple[tuple[int, ...], ...]
    name: str = ""
    labels: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.adjacency))))
        if len(self.labels) != len(self.adjacency):
            raise ValueError("labels and adjacency differ in length")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name="", labels=(), meta=None):
        """Build a simplified graph; self-loops and repeated edges are dropped and counted."""
        nbrs = [set() for _ in range(n)]
        loops = dups = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} nodes")
            if u == v:
                loops += 1
            elif v in nbrs[u]:
                dups += 1
            else:
                nbrs[u].add(v)
                nbrs[v].add(u)
        meta = dict(meta or {})
        meta.setdefault("dropped_self_loops", loops)
        meta.setdefault("dropped_duplicates", dups)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        return cls(adjacency, name=name, labels=tuple(labels), meta=meta)

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield u, v

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        n = self.node_count
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
        indices = np.fromiter((v for a in self.adjacency for v in a), dtype=np.int32, count=int(indptr[-1]))
        data = np.ones(len(indices), dtype=np.int8)
        return sparse.csr_matrix((data, indices, indptr), shape=(n, n))

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def __repr__(self):
        return f"Network(name={self.name!r}, nodes={self.node_count}, edges={self.edge_count})"


def load_edge_list(source, name: str = "") -> Network:
    """Parse a whitespace-separated edge list.

    ``source`` may be bytes, str, or a binary/text file object. Lines starting
    with ``#`` and blank lines are ignored. Node labels are mapped to indices
    in order of first appearance.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    index: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(lineno, raw.rstrip("\n"))
        ids = []
        for tok in tokens:
            if tok not in index:
                index[tok] = len(index)
            ids.append(index[tok])
        edges.append((ids[0], ids[1]))
    if not index:
        raise EmptyGraphError(f"edge list {name!r} contains no nodes")
    g = Network.from_edges(len(index), edges, name=name, labels=tuple(index))
    dropped = g.meta["dropped_self_loops"] + g.meta["dropped_duplicates"]
    if dropped:
        log.info("%s: dropped %d self-loops and %d duplicate edges", name,
                 g.meta["dropped_self_loops"], g.meta["dropped_duplicates"])
    return g


def read_edge_list(path, name: str | None = None) -> Network:
    if name is None:
        name = os.path.splitext(os.path.basename(str(path)))[0]
    with open(path, "rb") as fh:
        return load_edge_list(fh, name=name)


def dump_edge_list(g: Network, header: Iterable[str] = ()) -> str:
    out = [f"# {h}" for h in header]
    out += [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def bfs_distances(g: Network, source: int) -> np.ndarray:
    """Hop counts from ``source``; unreachable nodes hold ``UNREACHABLE``."""
    dist = np.full(g.node_count, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


def connected_components(g: Network) -> tuple[int, np.ndarray]:
    return csgraph.connected_components(g.csr, directed=False)


def require_connected(g: Network) -> None:
    n_comp, labels = connected_components(g)
    if n_comp > 1:
        first = 0
        second = int(np.flatnonzero(labels != labels[0])[0])
        raise ConnectivityError(g.labels[first], g.labels[second], n_comp)


def largest_component(g: Network) -> Network:
    """Induced subgraph on the largest connected component (ties: lowest node)."""
    n_comp, labels = connected_components(g)
    if n_comp == 1:
        return g
    sizes = np.bincount(labels)
    keep = np.flatnonzero(labels == int(np.argmax(sizes)))
    remap = {int(old): new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges() if u in remap]
    meta = dict(g.meta, largest_component_of=g.node_count)
    return Network.from_edges(len(keep), edges, name=g.name,
                              labels=tuple(g.labels[i] for i in keep), meta=meta)


class DistanceRows:
    """Row access to the all-pairs hop-distance matrix.

    Small graphs get the full matrix up front; large graphs compute one
    BFS row per request. Unreachable entries are ``UNREACHABLE``.
    """

    def __init__(self, g: Network, dense: bool | None = None):
        self.graph = g
        self.n = g.node_count
        if dense is None:
            dense = self.n <= DENSE_DISTANCE_LIMIT
        self._matrix = self._compute(None) if dense else None

    def _compute(self, indices):
        d = csgraph.shortest_path(self.graph.csr, method="D", directed=False,
                                  unweighted=True, indices=indices)
        d[np.isinf(d)] = UNREACHABLE
        return d.astype(np.int16 if self.n < 32_000 else np.int32)

    @property
    def matrix(self):
        return self._matrix

    def __getitem__(self, v):
        if self._matrix is not None:
            return self._matrix[v]
        return self._compute([v])[0]

    def __len__(self):
        return self.n


def diameter(g: Network, rows: DistanceRows | None = None) -> int:
    """Largest finite pairwise hop distance. Requires a connected graph."""
    require_connected(g)
    rows = rows or DistanceRows(g)
    if rows.matrix is not None:
        return int(rows.matrix.max())
    return int(max(rows[v].max() for v in range(g.node_count)))


def covering_delta(g: Network, rows: DistanceRows | None = None) -> int:
    """Smallest box diameter whose single box covers ``g`` (graph diameter + 1)."""
    return diameter(g, rows) + 1
