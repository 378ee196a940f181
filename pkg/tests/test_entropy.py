import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dengdim.boxcover import BoxCovering
from dengdim.entropy import (EXACT, LEGACY, LEGACY_MAX_SIZE, POW2, MassAssignment,
                             deng_entropy, log2_pow2m1, mass_from_covering, mass_from_sizes,
                             shannon_entropy)
from dengdim.errors import EntropyDomainError, IntegrityError

mpmath.mp.prec = 256


def deng_oracle(sizes):
    """Deng entropy at 256-bit precision with exact big-integer 2**s - 1."""
    n = sum(sizes)
    total = mpmath.mpf(0)
    for s in sizes:
        m = mpmath.mpf(s) / n
        total -= m * mpmath.log(m / (mpmath.mpf(2) ** s - 1), 2)
    return total


sizes_st = st.lists(st.integers(1, 80), min_size=1, max_size=30)


def test_masses_from_figure_covering():
    c = BoxCovering(3, ((0, 1, 4, 5), (2, 3)), seed=0, repetitions=1)
    m = mass_from_covering(c, 6)
    assert m.masses == [Fraction(2, 3), Fraction(1, 3)]
    assert sum(m.masses) == 1


def test_singleton_and_single_box_masses():
    assert mass_from_sizes([1] * 7, 7).masses == [Fraction(1, 7)] * 7
    assert mass_from_sizes([7], 7).masses == [Fraction(1)]


def test_mass_errors():
    with pytest.raises(IntegrityError):
        mass_from_sizes([2, 2], 5)
    with pytest.raises(EntropyDomainError):
        mass_from_sizes([0, 3], 3)
    with pytest.raises(IntegrityError):
        mass_from_covering(BoxCovering(2, ((0, 1), (1,)), 0, 1), 2)


def test_singletons_zkc_size():
    h = deng_entropy(mass_from_sizes([1] * 34, 34))
    assert h.nonspecificity == 0.0
    assert h.discord == pytest.approx(math.log2(34), abs=1e-12)
    assert h.discord == pytest.approx(5.0875, abs=1e-4)


@pytest.mark.parametrize("n", [1, 2, 5, 34, 100, 1000])
def test_single_box(n):
    h = deng_entropy(mass_from_sizes([n], n))
    assert h.discord == 0.0
    assert h.nonspecificity == pytest.approx(float(mpmath.log(mpmath.mpf(2) ** n - 1, 2)), abs=1e-9)


def test_two_box_value():
    h = deng_entropy(mass_from_sizes([4, 2], 6))
    assert h.total == pytest.approx(float(deng_oracle([4, 2])), abs=1e-12)
    assert h.total == pytest.approx(4.0512, abs=1e-4)


def test_shannon_examples():
    assert shannon_entropy(mass_from_sizes([1, 1], 2)) == 1.0
    assert shannon_entropy(mass_from_sizes([3], 3)) == 0.0
    assert shannon_entropy(mass_from_sizes([2, 1], 3)) == pytest.approx(0.9183, abs=1e-4)


def test_log2_pow2m1_huge():
    assert log2_pow2m1(1) == 0.0
    assert log2_pow2m1(10**6) == 10**6
    assert log2_pow2m1(2) == pytest.approx(math.log2(3), abs=1e-15)


def test_legacy_truncation():
    small = mass_from_sizes([LEGACY_MAX_SIZE, 2], LEGACY_MAX_SIZE + 2)
    legacy, pow2 = deng_entropy(small, LEGACY), deng_entropy(small, POW2)
    assert (legacy.total, legacy.nonspecificity, legacy.discord) == \
        (pow2.total, pow2.nonspecificity, pow2.discord)
    big = mass_from_sizes([LEGACY_MAX_SIZE + 1, 1], LEGACY_MAX_SIZE + 2)
    h = deng_entropy(big, LEGACY)
    m = 1 / (LEGACY_MAX_SIZE + 2)
    assert h.nonspecificity == pytest.approx(m * 1)
    assert h.discord == pytest.approx(-m * math.log2(m))


def test_unknown_mode():
    with pytest.raises(ValueError):
        deng_entropy(mass_from_sizes([1], 1), "fast")


@settings(max_examples=200, deadline=None)
@given(sizes_st)
def test_exact_matches_256bit_oracle(sizes):
    h = deng_entropy(mass_from_sizes(sizes, sum(sizes)), EXACT)
    assert abs(h.total - float(deng_oracle(sizes))) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(sizes_st, st.sampled_from([EXACT, POW2, LEGACY]))
def test_decomposition(sizes, mode):
    h = deng_entropy(mass_from_sizes(sizes, sum(sizes)), mode)
    assert abs(h.total - (h.nonspecificity + h.discord)) <= 1e-9
    assert h.nonspecificity >= 0 and h.discord >= 0


@settings(max_examples=200, deadline=None)
@given(sizes_st)
def test_deng_at_least_shannon(sizes):
    m = mass_from_sizes(sizes, sum(sizes))
    deng, shannon = deng_entropy(m).total, shannon_entropy(m)
    if all(s == 1 for s in sizes):
        assert deng == pytest.approx(shannon, abs=1e-12)
    else:
        assert deng > shannon


@settings(max_examples=200, deadline=None)
@given(sizes_st)
def test_mode_agreement_bound(sizes):
    m = mass_from_sizes(sizes, sum(sizes))
    gap = abs(deng_entropy(m, EXACT).total - deng_entropy(m, POW2).total)
    per_box = math.fsum(mass * abs(math.log2(1 - 2.0 ** -s)) for s, mass in m)
    assert gap <= per_box + 1e-12
    assert per_box <= -math.log2(1 - 2.0 ** -min(sizes)) + 1e-12


def test_mass_assignment_iteration():
    m = MassAssignment((3, 1), 4)
    assert list(m) == [(3, 0.75), (1, 0.25)]
