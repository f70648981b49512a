"""Interval-hitting analogues of the scheduling problems, in exact rationals.

Intervals have integer endpoints; chosen representative points may be
rational (fractions.Fraction).  A hitting set is kept as the map
interval-id -> representative; its gaps are the differences between
consecutive representatives in sorted order.  No floating point anywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import GapSchedError, InfeasibleError
from .xy_select import select_kth


@dataclass(frozen=True)
class Interval:
    id: object
    start: int
    end: int
    weight: int = 1

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError(f"interval {self.id}: end < start")


@dataclass(frozen=True)
class HittingSet:
    representatives: dict[object, Fraction]

    def sorted_points(self) -> list[Fraction]:
        return sorted(self.representatives.values())

    def distinct_points(self) -> list[Fraction]:
        return sorted(set(self.representatives.values()))

    @property
    def cardinality(self) -> int:
        return len(set(self.representatives.values()))

    def max_gap(self) -> Fraction:
        pts = self.sorted_points()
        return max((b - a for a, b in zip(pts, pts[1:])), default=Fraction(0))


def _by_deadline(intervals) -> list[Interval]:
    order = {id(iv): i for i, iv in enumerate(intervals)}
    return sorted(intervals, key=lambda iv: (iv.end, iv.start, order[id(iv)]))


def greedy_min_hitting(intervals) -> HittingSet:
    """Minimum-cardinality hitting set; all chosen points are interval ends.

    Sweep in order of right endpoint, stabbing the earliest-ending interval
    not yet hit.
    """
    reps: dict[object, Fraction] = {}
    last = None
    for iv in _by_deadline(intervals):
        if last is None or iv.start > last:
            last = iv.end
        reps[iv.id] = Fraction(last)
    return HittingSet(reps)


def delta_table(intervals) -> list[list[int]]:
    """newly_hit[a][b] = count of intervals hit by d_b but not by d_a.

    That is, intervals i with d_a < r_i <= d_b <= d_i, for deadline-sorted
    input.  One O(n) sweep per row; release events are applied before
    deadline events at equal coordinates so both inclusions stay sharp.
    """
    ivs = _by_deadline(intervals)
    return _delta_table(ivs, [1] * len(ivs))


def _delta_table(ivs: list[Interval], w: list[int]) -> list[list[int]]:
    n = len(ivs)
    coords = sorted({iv.start for iv in ivs} | {iv.end for iv in ivs})
    rel_at = {}
    dl_at = {}
    for i, iv in enumerate(ivs):
        rel_at.setdefault(iv.start, []).append(i)
        dl_at.setdefault(iv.end, []).append(i)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        bound = ivs[a].end
        active = 0
        row = table[a]
        for x in coords:
            for i in rel_at.get(x, ()):
                if ivs[i].start > bound:
                    active += w[i]
            for b in dl_at.get(x, ()):
                row[b] = active
            for i in dl_at.get(x, ()):
                if ivs[i].start > bound:
                    active -= w[i]
    return table


def _hit_table(ivs: list[Interval], weights: list[int], budget: int):
    """DP columns best[b][g] = max weight hit by <= g points from the first
    b+1 deadlines, one of them d_b; plus per-step argmax for witnesses."""
    n = len(ivs)
    delta = _delta_table(ivs, weights)
    hits = [sum(weights[i] for i in range(n)
                if ivs[i].start <= ivs[b].end <= ivs[i].end)
            for b in range(n)]
    best = [[0] * (budget + 1) for _ in range(n)]
    prev = [[None] * (budget + 1) for _ in range(n)]
    for b in range(n):
        best[b][1] = hits[b]
    for g in range(2, budget + 1):
        for b in range(n):
            best[b][g] = best[b][g - 1]
            prev[b][g] = (b, g - 1)
            for a in range(b):
                cand = best[a][g - 1] + delta[a][b]
                if cand > best[b][g]:
                    best[b][g] = cand
                    prev[b][g] = (a, g - 1)
    return delta, hits, best, prev


def _hit_witness(ivs, best, prev, b, g) -> HittingSet:
    points = []
    while True:
        step = prev[b][g]
        if step is None:
            points.append(b)
            break
        a, g2 = step
        if a != b:
            points.append(b)
        b, g = a, g2
    points.reverse()
    reps: dict[object, Fraction] = {}
    for b in points:
        x = ivs[b].end
        for iv in ivs:
            if iv.id not in reps and iv.start <= x <= iv.end:
                reps[iv.id] = Fraction(x)
    return HittingSet(reps)


def max_hit_budget(intervals, budget: int, weighted: bool = False):
    """Maximum number (or weight) of intervals hit by at most ``budget``
    points; witness points are interval ends."""
    if budget <= 0:
        raise GapSchedError(f"point budget must be positive, got {budget}")
    ivs = _by_deadline(intervals)
    n = len(ivs)
    if n == 0:
        return 0, HittingSet({})
    weights = [iv.weight if weighted else 1 for iv in ivs]
    g = min(budget, n)
    _, _, best, prev = _hit_table(ivs, weights, g)
    value, arg = max(((best[b][g], b) for b in range(n)), key=lambda t: t[0])
    return value, _hit_witness(ivs, best, prev, arg, g)


def min_hit_with_throughput(intervals, m: int, weighted: bool = False):
    """Smallest point count whose best hit value reaches ``m``."""
    if m <= 0:
        return 0, HittingSet({})
    ivs = _by_deadline(intervals)
    n = len(ivs)
    weights = [iv.weight if weighted else 1 for iv in ivs]
    if m > sum(weights):
        raise InfeasibleError(f"requirement {m} exceeds total {sum(weights)}")
    _, _, best, prev = _hit_table(ivs, weights, n)
    for g in range(1, n + 1):
        value, arg = max(((best[b][g], b) for b in range(n)), key=lambda t: t[0])
        if value >= m:
            return g, _hit_witness(ivs, best, prev, arg, g)
    raise InfeasibleError(f"requirement {m} unreachable")


def viable(intervals, lam) -> tuple[bool, HittingSet | None]:
    """Is there a hitting set with all gaps at most ``lam``?

    Left-to-right greedy: start at the earliest deadline, then repeatedly
    give the earliest-ending reachable interval the latest useful point.
    """
    n = len(intervals)
    if n == 0:
        return True, HittingSet({})
    lam = Fraction(lam)
    if lam < 0:
        return (True, HittingSet({intervals[0].id: Fraction(intervals[0].end)})) \
            if n == 1 else (False, None)
    ivs = _by_deadline(intervals)
    reps = {ivs[0].id: Fraction(ivs[0].end)}
    max_h = Fraction(ivs[0].end)
    by_release = sorted(range(1, n), key=lambda i: ivs[i].start)
    heap: list[tuple[int, int]] = []  # (end, index), released intervals
    ptr = 0
    for _ in range(n - 1):
        z = max_h + lam
        while ptr < len(by_release) and ivs[by_release[ptr]].start <= z:
            i = by_release[ptr]
            heapq.heappush(heap, (ivs[i].end, i))
            ptr += 1
        if not heap:
            return False, None
        _, i = heapq.heappop(heap)
        iv = ivs[i]
        h = Fraction(iv.end) if iv.end <= z else z
        reps[iv.id] = h
        if h > max_h:
            max_h = h
    return True, HittingSet(reps)


def _candidate_gap_values(intervals) -> list[Fraction]:
    """All values (r_i - d_j)/k with positive numerator, k in 1..n-1."""
    n = len(intervals)
    diffs = sorted({iv2.start - iv1.end
                    for iv1 in intervals for iv2 in intervals
                    if iv2.start > iv1.end})
    return sorted({Fraction(u, k) for u in diffs for k in range(1, n)})


def min_max_gap_cont_reference(intervals) -> tuple[Fraction, HittingSet]:
    """Minimize the maximum gap by binary search over the explicit
    candidate list.  Cubic-size candidate set; used as the reference path
    for the staged search below."""
    zero = _zero_gap_solution(intervals)
    if zero is not None:
        return Fraction(0), zero
    cands = _candidate_gap_values(intervals)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        ok, _ = viable(intervals, cands[mid])
        if ok:
            hi = mid
        else:
            lo = mid + 1
    lam = cands[lo]
    ok, witness = viable(intervals, lam)
    assert ok
    return lam, witness


def _zero_gap_solution(intervals) -> HittingSet | None:
    if not intervals:
        return HittingSet({})
    d1 = min(iv.end for iv in intervals)
    if max(iv.start for iv in intervals) <= d1:
        return HittingSet({iv.id: Fraction(d1) for iv in intervals})
    return None


def min_max_gap_cont(intervals) -> tuple[Fraction, HittingSet]:
    """Minimize the maximum gap of a hitting set (staged candidate search).

    The optimum lies in {(r_i - d_j)/k}.  The search first brackets the
    optimum between consecutive scaled differences v/(n-1), then pins the
    divisor k0 for v, which leaves at most one candidate divisor per
    difference; an ordinary binary search over those finishes the job.
    """
    if not intervals:
        raise GapSchedError("need at least one interval")
    zero = _zero_gap_solution(intervals)
    if zero is not None:
        return Fraction(0), zero
    n = len(intervals)
    diffs = sorted({iv2.start - iv1.end
                    for iv1 in intervals for iv2 in intervals
                    if iv2.start > iv1.end})
    # n >= 2 here: some release exceeds some deadline.
    lam0 = Fraction(diffs[0], n - 1)
    ok, wit = viable(intervals, lam0)
    if ok:
        return lam0, wit

    # Largest v whose v/(n-1) is still not viable; its successor w (if any)
    # scales to the smallest viable bottom-row candidate.
    lo, hi = 0, len(diffs) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if not viable(intervals, Fraction(diffs[mid], n - 1))[0]:
            lo = mid
        else:
            hi = mid - 1
    v = diffs[lo]
    w = diffs[lo + 1] if lo + 1 < len(diffs) else None

    if not viable(intervals, v)[0]:
        # Every candidate u/k with u <= v sits at or below v, hence fails too.
        lam = Fraction(w, n - 1)
        ok, wit = viable(intervals, lam)
        assert ok
        return lam, wit

    # Largest divisor keeping v viable; the optimum is in (v/(k0+1), v/k0].
    klo, khi = 1, n - 1
    while klo < khi:
        kmid = (klo + khi + 1) // 2
        if viable(intervals, Fraction(v, kmid))[0]:
            klo = kmid
        else:
            khi = kmid - 1
    k0 = klo

    cands = set()
    lower = Fraction(v, k0 + 1)
    for u in diffs:
        if u > v:
            break
        if Fraction(u) <= lower:
            continue
        ku = -((-k0 * u) // v)  # ceil(k0*u/v); sole divisor putting u/k in range
        if 1 <= ku <= n - 1:
            cands.add(Fraction(u, ku))
    if w is not None:
        cands.add(Fraction(w, n - 1))
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if viable(intervals, cands[mid])[0]:
            hi = mid
        else:
            lo = mid + 1
    lam = cands[lo]
    ok, wit = viable(intervals, lam)
    assert ok
    return lam, wit


def min_points_flow_bound(releases, bound) -> HittingSet:
    """Minimum-cardinality point set covering every release within
    [r, r + bound]; single left-to-right pass."""
    if bound < 0:
        raise GapSchedError(f"flow bound must be non-negative, got {bound}")
    rs = sorted(releases)
    reps: dict[object, Fraction] = {}
    last = None
    for i, r in enumerate(rs):
        if last is None or r > last:
            last = Fraction(r + bound)
        reps[i] = last
    return HittingSet(reps)


def min_max_flow_cont(releases, budget: int) -> tuple[int, HittingSet]:
    """Minimum coverage radius for at most ``budget`` points on the directed
    line (binary search by rank in the implicit difference set)."""
    if budget <= 0:
        raise GapSchedError(f"point budget must be positive, got {budget}")
    rs = sorted(releases)
    n = len(rs)
    if n == 0:
        return 0, HittingSet({})
    xs = rs
    ys = sorted(-r for r in rs)

    def decide(f: int) -> bool:
        return f >= 0 and min_points_flow_bound(rs, f).cardinality <= budget

    p, q = 1, n * n
    while p < q:
        mid = (p + q) // 2
        if decide(select_kth(xs, ys, mid)):
            q = mid
        else:
            p = mid + 1
    best = select_kth(xs, ys, p)
    return best, min_points_flow_bound(rs, best)
