"""Pure-Python bitmask kernels.

Reference implementation of the combinatorial search kernels; the
compiled module in _core.pyx mirrors these semantics exactly and is
preferred at import time when available.  Families are sequences of
distinct integer bitmasks over ground points 0..n_points-1 (bit i set
means point i belongs to the set).
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence


def _submasks_of_size(n_points: int, k: int):
    for combo in combinations(range(n_points), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


def count_restrictions(masks: Sequence[int], submask: int) -> int:
    """Number of distinct intersections of family sets with submask."""
    return len({m & submask for m in masks})


def vcdim(masks: Sequence[int], n_points: int) -> int:
    """Largest k such that some k-point subset is shattered.

    Search runs over increasing subset size; shattered subsets are
    downward closed, so the first size with no shattered subset ends
    the search.  masks must be nonempty.
    """
    kmax = min(n_points, len(masks).bit_length() - 1)
    best = 0
    for k in range(1, kmax + 1):
        target = 1 << k
        if not any(
            count_restrictions(masks, sub) == target
            for sub in _submasks_of_size(n_points, k)
        ):
            return best
        best = k
    return best


def pi(masks: Sequence[int], n_points: int, k: int) -> int:
    """Max number of distinct traces over any k-point subset."""
    if not masks:
        return 0
    return max(count_restrictions(masks, sub) for sub in _submasks_of_size(n_points, k))


def ldim(masks: Sequence[int], n_points: int) -> int:
    """Largest depth of a fully well-labeled binary tree.

    Split recursion: depth >= r+1 iff some point splits the family
    into a containing part and an avoiding part, both of depth >= r.
    Memoized on the family itself (splits of a sorted tuple stay
    sorted, so tuples are canonical keys).  masks must be nonempty.
    """
    memo: dict = {}

    def rec(fam: tuple) -> int:
        cached = memo.get(fam)
        if cached is not None:
            return cached
        best = 0
        if len(fam) > 1:
            cap = len(fam).bit_length() - 1  # 2^depth distinct leaf sets needed
            for x in range(n_points):
                bit = 1 << x
                pos = tuple(m for m in fam if m & bit)
                if not pos or len(pos) == len(fam):
                    continue
                neg = tuple(m for m in fam if not m & bit)
                value = 1 + min(rec(neg), rec(pos))
                if value > best:
                    best = value
                    if best == cap:
                        break
        memo[fam] = best
        return best

    return rec(tuple(sorted(masks)))


def rho(masks: Sequence[int], n_points: int, depth: int) -> int:
    """Max number of well-labeled leaves over depth-`depth` trees.

    Recursion: at depth 0 a lone leaf is well-labeled iff the family
    is nonempty; otherwise the best root point splits the family and
    the two subtrees contribute independently.
    """
    memo: dict = {}

    def rec(fam: tuple, d: int) -> int:
        if not fam:
            return 0
        if d == 0:
            return 1
        if len(fam) == 1 and n_points > 0:
            return 1  # label every node with any point; one consistent path
        key = (fam, d)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = 0
        for x in range(n_points):
            bit = 1 << x
            pos = tuple(m for m in fam if m & bit)
            neg = tuple(m for m in fam if not m & bit)
            value = rec(neg, d - 1) + rec(pos, d - 1)
            if value > best:
                best = value
        memo[key] = best
        return best

    return rec(tuple(sorted(masks)), depth)
