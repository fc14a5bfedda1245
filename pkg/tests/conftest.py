"""Shared golden instances and random-instance builders.

Two goldens recur across the suite: a three-permutation unsigned set with a
P root over three Q children, and a two-permutation signed framed set whose
inclusion tree is a root with two children.  Expected families and counts
were frozen from the brute-force oracle.
"""
from __future__ import annotations

import random

import pytest

from bnest import core

# Unsigned golden: P(1..9) over Q(1..4), Q(5..6), Q(7..9).
GOLD_COMMON_RAW = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [4, 2, 3, 1, 7, 8, 9, 6, 5],
    [5, 6, 1, 3, 2, 4, 9, 8, 7],
]

# Whole common-interval family of GOLD_COMMON_RAW minus the singletons.
GOLD_COMMON_WIDE = {
    (2, 3), (1, 3), (2, 4), (1, 4), (5, 6), (7, 8), (8, 9), (7, 9), (1, 9),
}

# Signed framed golden: root (1..9) F={1,4,5,9}, children (2..3) and (6..8).
GOLD_CONSERVED_RAW = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [1, -3, -2, 4, 5, -8, -7, -6, 9],
]

# Whole conserved family of GOLD_CONSERVED_RAW minus the singletons.
GOLD_CONSERVED_WIDE = {
    (2, 3), (6, 7), (7, 8), (6, 8), (1, 4), (4, 5), (5, 9), (1, 5), (4, 9), (1, 9),
}


def ivset(pairs) -> set:
    return {core.Interval(lo, hi) for lo, hi in pairs}


def singletons(n: int) -> set:
    return {core.Interval(i, i) for i in range(1, n + 1)}


def random_unsigned_raw(rng: random.Random, n: int, K: int) -> list:
    """K permutations of {1..n}, first one the identity.

    Mixes three shapes so the trees exercised are not all flat: uniform
    shuffles, near-identity instances built from short reversals (these are
    dense in common intervals), and instances sharing a nested block that
    stays contiguous in every permutation.
    """
    raw = [list(range(1, n + 1))]
    style = rng.randrange(3)
    for _ in range(K - 1):
        if style == 0 or n < 4:
            p = list(range(1, n + 1))
            rng.shuffle(p)
        elif style == 1:
            p = list(range(1, n + 1))
            for _ in range(rng.randint(1, max(1, n // 2))):
                i = rng.randrange(n - 1)
                j = min(n, i + rng.randint(2, 3))
                p[i:j] = reversed(p[i:j])
        else:
            lo = rng.randint(1, n - 2)
            hi = rng.randint(lo + 1, n - 1)
            inner = list(range(lo, hi + 1))
            outer = [v for v in range(1, n + 1) if not lo <= v <= hi]
            rng.shuffle(inner)
            units = [[v] for v in outer] + [inner]
            rng.shuffle(units)
            p = [v for u in units for v in u]
        raw.append(p)
    return raw


def random_framed_raw(rng: random.Random, n: int, K: int) -> list:
    """K signed permutations over {1..n}, each starting +1 and ending +n.

    Half the rows come from uniform interior shuffles with random signs, the
    other half from chains of interior reversals-with-negation applied to
    the identity; the latter keep many conserved intervals alive.
    """
    raw = [list(range(1, n + 1))]
    for _ in range(K - 1):
        if rng.random() < 0.5 or n < 4:
            mid = list(range(2, n))
            rng.shuffle(mid)
            row = [1] + [v * rng.choice((1, -1)) for v in mid] + [n]
        else:
            row = list(range(1, n + 1))
            for _ in range(rng.randint(1, 3)):
                i = rng.randint(1, n - 2)
                j = rng.randint(i, n - 2)
                row[i:j + 1] = [-v for v in reversed(row[i:j + 1])]
        raw.append(row)
    return raw


@pytest.fixture
def gold_common_pset() -> core.PermutationSet:
    return core.normalize(GOLD_COMMON_RAW)


@pytest.fixture
def gold_conserved_pset() -> core.PermutationSet:
    return core.normalize(GOLD_CONSERVED_RAW, signed=True)
