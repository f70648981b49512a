"""Selection in the implicit pairwise-sum multiset of two sorted vectors.

The conceptual matrix M[i][j] = X[i] + Y[j] has sorted rows and columns;
nothing here ever materializes it.  Ranks are counted with a two-pointer
staircase walk, and selection binary-searches the value range, which is
exact for integer inputs.
"""

from __future__ import annotations

from .errors import GapSchedError


def rank_of(xs, ys, value) -> tuple[int, int]:
    """(number of sums <= value, number of sums < value).

    O(|X| + |Y|); both inputs must be sorted ascending.
    """
    le = _count_at_most(xs, ys, value, strict=False)
    lt = _count_at_most(xs, ys, value, strict=True)
    return le, lt


def _count_at_most(xs, ys, value, strict: bool) -> int:
    count = 0
    j = len(ys) - 1
    for x in xs:
        while j >= 0 and ((x + ys[j] >= value) if strict else (x + ys[j] > value)):
            j -= 1
        if j < 0:
            break
        count += j + 1
    return count


def select_kth(xs, ys, k: int) -> int:
    """k-th smallest of the multiset {x + y}, 1-indexed, duplicates counted."""
    total = len(xs) * len(ys)
    if not 1 <= k <= total:
        raise GapSchedError(f"k={k} outside [1, {total}]")
    lo = xs[0] + ys[0]
    hi = xs[-1] + ys[-1]
    while lo < hi:
        mid = (lo + hi) // 2
        if _count_at_most(xs, ys, mid, strict=False) >= k:
            hi = mid
        else:
            lo = mid + 1
    return lo
