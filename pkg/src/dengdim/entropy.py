"""Mass functions from box coverings and their Deng entropy.

A covering with boxes ``A_1..A_k`` of an ``N``-node network defines the mass
function ``m(A_i) = |A_i| / N``. Deng entropy splits into

    non-specificity  sum_i m_i * log2(2**|A_i| - 1)
    discord         -sum_i m_i * log2(m_i)

and is reported in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .boxcover import BoxCovering
from .errors import EntropyDomainError, IntegrityError

EXACT = "exact"
POW2 = "pow2"
LEGACY = "legacy"
MODES = (EXACT, POW2, LEGACY)

# Overflow cutoff of the legacy evaluation: boxes larger than this contribute 0.
LEGACY_MAX_SIZE = 62

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MassAssignment:
    sizes: tuple[int, ...]
    total_nodes: int

    def __post_init__(self):
        if self.total_nodes < 1:
            raise EntropyDomainError("total_nodes must be positive")
        if any(s < 1 for s in self.sizes):
            raise EntropyDomainError("every focal element needs positive mass")
        if sum(self.sizes) != self.total_nodes:
            raise IntegrityError(
                f"box sizes sum to {sum(self.sizes)}, expected {self.total_nodes}")

    @property
    def masses(self) -> list[Fraction]:
        return [Fraction(s, self.total_nodes) for s in self.sizes]

    def __iter__(self):
        n = self.total_nodes
        for s in self.sizes:
            yield s, s / n


@dataclass(frozen=True)
class EntropyValue:
    total: float
    nonspecificity: float
    discord: float
    mode: str


def mass_from_sizes(sizes: Iterable[int], total_nodes: int) -> MassAssignment:
    return MassAssignment(tuple(int(s) for s in sizes), int(total_nodes))


def mass_from_covering(c: BoxCovering, n: int) -> MassAssignment:
    c.check_partition(n)
    return mass_from_sizes(c.sizes, n)


def log2_pow2m1(s: int) -> float:
    """``log2(2**s - 1)`` for any positive integer ``s`` without forming ``2**s``."""
    return s + math.log1p(-math.ldexp(1.0, -s)) / _LN2


def _nonspecificity_term(s: int, mode: str) -> float:
    if mode == EXACT:
        return log2_pow2m1(s)
    # pow2 and legacy both use 2**s; legacy additionally drops large boxes
    return float(s)


def deng_entropy(m: MassAssignment, mode: str = EXACT) -> EntropyValue:
    if mode not in MODES:
        raise ValueError(f"unknown entropy mode {mode!r}; expected one of {MODES}")
    nonspec = []
    discord = []
    for s, mass in m:
        if mass <= 0:
            raise EntropyDomainError("mass must be positive")
        if mode == LEGACY and s > LEGACY_MAX_SIZE:
            continue
        nonspec.append(mass * _nonspecificity_term(s, mode))
        discord.append(-mass * math.log2(mass))
    ns = math.fsum(nonspec)
    dc = math.fsum(discord)
    return EntropyValue(total=ns + dc, nonspecificity=ns, discord=dc, mode=mode)


def shannon_entropy(m: MassAssignment) -> float:
    return math.fsum(-mass * math.log2(mass) for _, mass in m)
