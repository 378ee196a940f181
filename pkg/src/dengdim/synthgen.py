"""Seeded Barabási–Albert and Watts–Strogatz generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenSpecError
from .graph import Network, dump_edge_list

BA = "ba"
WS = "ws"


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    m: int = 3
    k: int = 10
    p: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.kind == BA:
            if not 1 <= self.m < self.n:
                raise GenSpecError(f"ba needs 1 <= m < n (m={self.m}, n={self.n})")
        elif self.kind == WS:
            if self.k % 2 or not 0 < self.k < self.n:
                raise GenSpecError(f"ws needs an even 0 < k < n (k={self.k}, n={self.n})")
            if not 0.0 <= self.p <= 1.0:
                raise GenSpecError(f"ws rewiring probability must lie in [0, 1], got {self.p}")
        else:
            raise GenSpecError(f"unknown generator kind {self.kind!r}")

    @property
    def name(self) -> str:
        return f"{self.kind.upper()}-{self.n}"

    def describe(self) -> str:
        if self.kind == BA:
            return f"ba:n={self.n},m={self.m},seed={self.seed}"
        return f"ws:n={self.n},k={self.k},p={self.p!r},seed={self.seed}"

    @classmethod
    def parse(cls, text: str, seed: int | None = None) -> "GenSpec":
        """Parse ``kind:key=value,...`` such as ``ba:n=500,m=3``.

        ``seed`` fills in the seed when the string does not set one.
        """
        kind, _, rest = text.partition(":")
        kwargs = {"kind": kind.strip().lower()}
        casts = {"n": int, "m": int, "k": int, "p": float, "seed": int}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in casts:
                raise GenSpecError(f"bad generator parameter {item!r} in {text!r}")
            try:
                kwargs[key] = casts[key](value)
            except ValueError:
                raise GenSpecError(f"bad value for {key!r} in {text!r}") from None
        if "n" not in kwargs:
            raise GenSpecError(f"generator spec {text!r} lacks n")
        if "seed" not in kwargs and seed is not None:
            kwargs["seed"] = seed
        return cls(**kwargs)


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.default_rng(spec.seed)


def generate_ba(spec: GenSpec) -> Network:
    """Preferential attachment grown from a complete graph on ``m`` nodes.

    Every new node links to ``m`` distinct existing nodes, each drawn with
    probability proportional to degree (uniformly while all degrees are 0).
    Edge count is ``m*(m-1)/2 + (n-m)*m``.
    """
    if spec.kind != BA:
        raise GenSpecError("generate_ba needs a ba spec")
    rng = _rng(spec)
    n, m = spec.n, spec.m
    edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    # node v appears deg(v) times
    pool = [v for e in edges for v in e]
    for new in range(m, n):
        targets: list[int] = []
        chosen = set()
        while len(targets) < m:
            t = int(pool[rng.integers(len(pool))]) if pool else int(rng.integers(new))
            if t not in chosen:
                chosen.add(t)
                targets.append(t)
        for t in targets:
            edges.append((t, new))
            pool.extend((t, new))
    return Network.from_edges(n, edges, name=spec.name, meta={"genspec": spec.describe()})


def generate_ws(spec: GenSpec) -> Network:
    """Ring lattice of degree ``k`` with each lattice edge rewired with probability ``p``.

    Rewiring keeps the first endpoint and draws a new partner uniformly among
    nodes that are neither itself nor already adjacent. A saturated node keeps
    its edge; such skips are counted in ``meta["rewire_skipped"]``.
    """
    if spec.kind != WS:
        raise GenSpecError("generate_ws needs a ws spec")
    rng = _rng(spec)
    n, half = spec.n, spec.k // 2
    nbrs = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, half + 1):
            v = (u + j) % n
            nbrs[u].add(v)
            nbrs[v].add(u)
    skipped = 0
    for j in range(1, half + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= spec.p or v not in nbrs[u]:
                continue
            if len(nbrs[u]) >= n - 1:
                skipped += 1
                continue
            while True:
                w = int(rng.integers(n))
                if w != u and w not in nbrs[u]:
                    break
            nbrs[u].discard(v)
            nbrs[v].discard(u)
            nbrs[u].add(w)
            nbrs[w].add(u)
    edges = [(u, v) for u in range(n) for v in nbrs[u] if u < v]
    meta = {"genspec": spec.describe(), "rewire_skipped": skipped}
    return Network.from_edges(n, edges, name=spec.name, meta=meta)


def generate(spec: GenSpec) -> Network:
    return generate_ba(spec) if spec.kind == BA else generate_ws(spec)


def export_edge_list(g: Network) -> str:
    header = [f"genspec: {g.meta['genspec']}"] if "genspec" in g.meta else []
    return dump_edge_list(g, header)

