"""Exhaustive reference solvers: ground truth for every objective.

Values come from a suffix DP over (slot, scheduled-subset) states, which
enumerates every injective assignment implicitly; `enumerate_schedules`
below walks them explicitly and is used to cross-check the DP itself on
tiny inputs.  Witness schedules are rebuilt by a deterministic greedy
walk over the tables (busy slots as early as possible, jobs by deadline).

Sizes are capped; set GAPSCHED_ORACLE_CAP="jobs,slots" to override.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .core import Instance, Job, Schedule, edf_schedule_busy_set
from .errors import GapSchedError, InfeasibleError, OracleCapError

_INF = 2**30

DEFAULT_JOB_CAP = 8
DEFAULT_SLOT_CAP = 16


def _caps() -> tuple[int, int]:
    raw = os.environ.get("GAPSCHED_ORACLE_CAP")
    if not raw:
        return DEFAULT_JOB_CAP, DEFAULT_SLOT_CAP
    parts = [int(p) for p in raw.split(",")]
    if len(parts) == 1:
        return parts[0], 2 * parts[0]
    return parts[0], parts[1]


def _check_caps(n_jobs: int, span: int):
    job_cap, slot_cap = _caps()
    if n_jobs > job_cap:
        raise OracleCapError(f"{n_jobs} jobs exceed oracle cap {job_cap}")
    if span > slot_cap:
        raise OracleCapError(f"horizon {span} exceeds oracle cap {slot_cap}")


# ---------------------------------------------------------------------------
# Deadline problems: suffix DP over (slot, subset, last-slot-busy).

class _DeadlineDP:
    def __init__(self, inst: Instance):
        if not inst.has_deadlines:
            raise GapSchedError("deadline oracle needs deadlines")
        self.inst = inst
        self.jobs = inst.by_deadline()
        self.n = len(self.jobs)
        if self.n == 0:
            self.slots = []
            return
        lo = min(j.release for j in self.jobs)
        hi = max(j.deadline for j in self.jobs)
        _check_caps(self.n, hi - lo + 1)
        self.slots = list(range(lo, hi + 1))
        self.avail = [[j for j in range(self.n)
                       if self.jobs[j].release <= t <= self.jobs[j].deadline]
                      for t in self.slots]
        m = 1 << self.n
        idx = np.arange(m)
        self.wo = [idx[(idx >> j) & 1 == 0] for j in range(self.n)]
        self.wb = [w | (1 << j) for j, w in enumerate(self.wo)]

    def _canonical_job(self, candidates):
        return min(candidates,
                   key=lambda j: (self.jobs[j].deadline, self.jobs[j].release))


def _gap_tables(dp: _DeadlineDP, maximize: bool):
    """suffix[s][mask][prev] = best interior-gap count completing the
    schedule from slot s on, all jobs outside mask still to place."""
    m = 1 << dp.n
    full = m - 1
    bad = -_INF if maximize else _INF
    pick = np.maximum if maximize else np.minimum
    base = np.full((m, 2), bad, dtype=np.int64)
    base[full, :] = 0
    tables = [base]
    gapcost = None
    for s in range(len(dp.slots) - 1, -1, -1):
        nxt = tables[-1]
        cur = np.empty((m, 2), dtype=np.int64)
        cur[:, 0] = nxt[:, 0]
        cur[:, 1] = nxt[:, 0]
        for j in dp.avail[s]:
            src, dst = dp.wo[j], dp.wb[j]
            vals = nxt[dst, 1]
            cur[src, 1] = pick(cur[src, 1], vals)
            cost = (src != 0).astype(np.int64)
            cur[src, 0] = pick(cur[src, 0], np.where(np.abs(vals) >= _INF,
                                                     vals, vals + cost))
        tables.append(cur)
    tables.reverse()
    return tables


def _walk_gaps(dp: _DeadlineDP, tables, maximize: bool) -> tuple[int, ...]:
    mask, prev = 0, 0
    busy = []
    for s in range(len(dp.slots)):
        target = tables[s][mask][prev]
        chosen = None
        cands = []
        for j in dp.avail[s]:
            if mask & (1 << j):
                continue
            cost = 1 if (prev == 0 and mask != 0) else 0
            v = tables[s + 1][mask | (1 << j)][1]
            if abs(v) < _INF and v + cost == target:
                cands.append(j)
        if cands:
            chosen = dp._canonical_job(cands)
        if chosen is not None:
            busy.append(dp.slots[s])
            mask |= 1 << chosen
            prev = 1
        else:
            assert tables[s + 1][mask][0] == target
            prev = 0
    return tuple(busy)


def _solve_gap_objective(inst: Instance, maximize: bool):
    dp = _DeadlineDP(inst)
    if dp.n == 0:
        return 0, Schedule(inst, {})
    tables = _gap_tables(dp, maximize)
    value = int(tables[0][0][0])
    if abs(value) >= _INF:
        raise InfeasibleError("no full schedule exists")
    busy = _walk_gaps(dp, tables, maximize)
    sched = edf_schedule_busy_set(inst, busy)
    assert sched is not None
    return value, sched


def oracle_min_gaps(inst: Instance):
    return _solve_gap_objective(inst, maximize=False)


def oracle_max_gaps(inst: Instance):
    return _solve_gap_objective(inst, maximize=True)


def _sep_tables(dp: _DeadlineDP):
    """suffix[s][mask][run] = min achievable max-separation onward; run is
    the distance to the last busy slot (0: none yet)."""
    m = 1 << dp.n
    full = m - 1
    nslots = len(dp.slots)
    runs = nslots + 1
    base = np.full((m, runs + 1), _INF, dtype=np.int64)
    base[full, :] = 0
    tables = [base]
    for s in range(nslots - 1, -1, -1):
        nxt = tables[-1]
        cur = np.full((m, runs + 1), _INF, dtype=np.int64)
        # idle: run 0 stays 0, positive runs grow by one
        cur[:, 0] = nxt[:, 0]
        cur[:, 1:runs] = nxt[:, 2:runs + 1]
        cur[:, runs] = nxt[:, runs]  # saturated; separations this long are final anyway
        run_cost = np.arange(runs + 1, dtype=np.int64)
        run_cost[0] = 0
        for j in dp.avail[s]:
            src, dst = dp.wo[j], dp.wb[j]
            vals = nxt[dst, 1][:, None]  # after scheduling, run resets to 1
            cand = np.maximum(vals, run_cost[None, :])
            cand = np.where(vals >= _INF, _INF, cand)
            cur[src, :] = np.minimum(cur[src, :], cand)
        tables.append(cur)
    tables.reverse()
    return tables


def oracle_min_max_gap(inst: Instance):
    dp = _DeadlineDP(inst)
    if dp.n == 0:
        return 0, Schedule(inst, {})
    tables = _sep_tables(dp)
    value = int(tables[0][0][0])
    if value >= _INF:
        raise InfeasibleError("no full schedule exists")
    mask, run = 0, 0
    busy = []
    nslots = len(dp.slots)
    runs = nslots + 1
    for s in range(nslots):
        target = tables[s][mask][run]
        cands = []
        for j in dp.avail[s]:
            if mask & (1 << j):
                continue
            v = tables[s + 1][mask | (1 << j)][1]
            if v < _INF and max(v, run) == target:
                cands.append(j)
        if cands:
            busy.append(dp.slots[s])
            mask |= 1 << dp._canonical_job(cands)
            run = 1
        else:
            nrun = 0 if run == 0 else min(run + 1, runs)
            assert tables[s + 1][mask][nrun] == target
            run = nrun
    sched = edf_schedule_busy_set(inst, tuple(busy))
    assert sched is not None
    return value, sched


def _throughput_tables(dp: _DeadlineDP, weights, gcap: int):
    """suffix[s][mask][prev][g] = max weight schedulable from slot s with g
    interior gaps still allowed."""
    m = 1 << dp.n
    w = np.asarray(weights, dtype=np.int64)
    base = np.zeros((m, 2, gcap + 1), dtype=np.int64)
    tables = [base]
    for s in range(len(dp.slots) - 1, -1, -1):
        nxt = tables[-1]
        cur = np.empty_like(base)
        cur[:, 0, :] = nxt[:, 0, :]
        cur[:, 1, :] = nxt[:, 0, :]
        for j in dp.avail[s]:
            src, dst = dp.wo[j], dp.wb[j]
            vals = nxt[dst, 1, :] + w[j]
            cur[src, 1, :] = np.maximum(cur[src, 1, :], vals)
            # prev idle: scheduling j opens a gap unless nothing is placed yet;
            # src is sorted, so the empty mask sits in row 0.
            gap_vals = np.full_like(vals, -_INF)
            gap_vals[:, 1:] = vals[:, :-1]
            gap_vals[0, :] = vals[0, :]
            cur[src, 0, :] = np.maximum(cur[src, 0, :], gap_vals)
        tables.append(cur)
    tables.reverse()
    return tables


def _walk_throughput(dp: _DeadlineDP, tables, weights, g: int) -> dict:
    mask, prev, budget = 0, 0, g
    assignment = {}
    for s in range(len(dp.slots)):
        target = tables[s][mask][prev][budget]
        chosen = None
        cands = []
        for j in dp.avail[s]:
            if mask & (1 << j):
                continue
            gapflag = 1 if (prev == 0 and mask != 0) else 0
            if budget - gapflag < 0:
                continue
            v = weights[j] + tables[s + 1][mask | (1 << j)][1][budget - gapflag]
            if v == target:
                cands.append(j)
        if cands:
            chosen = dp._canonical_job(cands)
            assignment[dp.jobs[chosen].id] = dp.slots[s]
            gapflag = 1 if (prev == 0 and mask != 0) else 0
            budget -= gapflag
            mask |= 1 << chosen
            prev = 1
        else:
            assert tables[s + 1][mask][0][budget] == target
            prev = 0
    return assignment


def oracle_max_throughput(inst: Instance, gaps: int, weighted: bool = False):
    if gaps < 0:
        raise GapSchedError("gap budget must be non-negative")
    dp = _DeadlineDP(inst)
    if dp.n == 0:
        return 0, Schedule(inst, {})
    weights = [j.weight if weighted else 1 for j in dp.jobs]
    gcap = min(gaps, max(dp.n - 1, 0))
    tables = _throughput_tables(dp, weights, gcap)
    value = int(tables[0][0][0][gcap])
    return value, Schedule(inst, _walk_throughput(dp, tables, weights, gcap))


def oracle_min_gaps_throughput(inst: Instance, m: int, weighted: bool = False):
    dp = _DeadlineDP(inst)
    if m <= 0:
        return 0, Schedule(inst, {})
    if dp.n == 0:
        raise InfeasibleError(f"throughput {m} unreachable on empty instance")
    weights = [j.weight if weighted else 1 for j in dp.jobs]
    gcap = max(dp.n - 1, 0)
    tables = _throughput_tables(dp, weights, gcap)
    for g in range(gcap + 1):
        if int(tables[0][0][0][g]) >= m:
            return g, Schedule(inst, _walk_throughput(dp, tables, weights, g))
    raise InfeasibleError(f"throughput {m} exceeds maximum "
                          f"{int(tables[0][0][0][gcap])}")


# ---------------------------------------------------------------------------
# Release-only (flow) problems: jobs go in release order; slot universe is
# [min release, max release + n], which any optimal schedule fits (blocks
# end at releases, shifted right at most n).

def _flow_setup(releases):
    rs = sorted(releases)
    n = len(rs)
    if n:
        _check_caps(n, rs[-1] - rs[0] + 1)
    limit = (rs[-1] + n) if n else 0
    return rs, n, limit


def _flow_schedule(inst: Instance, slots) -> Schedule:
    jobs = inst.by_release()
    return Schedule(inst, {j.id: t for j, t in zip(jobs, slots)})


def oracle_min_total_flow(inst: Instance, gaps: int, _limit_override=None):
    rs, n, limit = _flow_setup([j.release for j in inst.jobs])
    if _limit_override is not None:
        limit = _limit_override
    if n == 0:
        return 0, Schedule(inst, {})

    @lru_cache(maxsize=None)
    def rec(i, last, g):
        if i == n:
            return 0
        best = _INF
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, limit + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            if used > g:
                break
            sub = rec(i + 1, s, g - used)
            if sub < _INF:
                best = min(best, s - rs[i] + sub)
        return best

    value = rec(0, None, gaps)
    slots = []
    i, last, g = 0, None, gaps
    remaining = value
    while i < n:
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, limit + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            if used > g:
                break
            if s - rs[i] + rec(i + 1, s, g - used) == remaining:
                slots.append(s)
                remaining -= s - rs[i]
                i, last, g = i + 1, s, g - used
                break
        else:
            raise AssertionError("flow oracle walk failed")
    rec.cache_clear()
    return value, _flow_schedule(inst, slots)


def oracle_min_gaps_total_flow(inst: Instance, flow_bound: int):
    if flow_bound < 0:
        raise GapSchedError("flow bound must be non-negative")
    n = len(inst.jobs)
    floor = None
    for g in range(max(n, 1)):
        value, sched = oracle_min_total_flow(inst, g)
        if value <= flow_bound:
            return g, sched
        floor = value
    # With distinct releases the floor is 0; duplicates force some flow.
    raise InfeasibleError(
        f"total flow bound {flow_bound} below the minimum {floor}")


def oracle_min_gaps_max_flow(inst: Instance, flow_bound: int):
    if flow_bound < 0:
        raise GapSchedError("flow bound must be non-negative")
    rs, n, limit = _flow_setup([j.release for j in inst.jobs])
    if n == 0:
        return 0, Schedule(inst, {})

    @lru_cache(maxsize=None)
    def rec(i, last):
        if i == n:
            return 0
        best = _INF
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, rs[i] + flow_bound + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            best = min(best, used + rec(i + 1, s))
        return best

    value = rec(0, None)
    if value >= _INF:
        tentative = rs[0]
        bad = 0
        for i in range(n):
            tentative = rs[i] if i == 0 else max(rs[i], tentative + 1)
            if tentative > rs[i] + flow_bound:
                bad = i
                break
        raise InfeasibleError(
            f"flow bound {flow_bound} unattainable", witness=bad)
    slots = []
    i, last = 0, None
    remaining = value
    while i < n:
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, rs[i] + flow_bound + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            if used + rec(i + 1, s) == remaining:
                slots.append(s)
                remaining -= used
                i, last = i + 1, s
                break
        else:
            raise AssertionError("flow oracle walk failed")
    rec.cache_clear()
    return value, _flow_schedule(inst, slots)


def oracle_min_max_flow(inst: Instance, gaps: int, _limit_override=None):
    if gaps < 0:
        raise GapSchedError("gap budget must be non-negative")
    rs, n, limit = _flow_setup([j.release for j in inst.jobs])
    if _limit_override is not None:
        limit = _limit_override
    if n == 0:
        return 0, Schedule(inst, {})

    @lru_cache(maxsize=None)
    def rec(i, last, g):
        if i == n:
            return 0
        best = _INF
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, limit + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            if used > g:
                break
            best = min(best, max(s - rs[i], rec(i + 1, s, g - used)))
        return best

    value = rec(0, None, gaps)
    slots = []
    i, last, g = 0, None, gaps
    while i < n:
        start = rs[i] if last is None else max(rs[i], last + 1)
        for s in range(start, limit + 1):
            used = 1 if (last is not None and s > last + 1) else 0
            if used > g:
                break
            if max(s - rs[i], rec(i + 1, s, g - used)) <= value:
                slots.append(s)
                i, last, g = i + 1, s, g - used
                break
        else:
            raise AssertionError("flow oracle walk failed")
    rec.cache_clear()
    return value, _flow_schedule(inst, slots)


# ---------------------------------------------------------------------------
# Literal enumeration, for cross-checking the DPs on tiny inputs.

def enumerate_schedules(inst: Instance, full: bool = True, slot_limit=None):
    """Yield every (partial or full) injective assignment as a dict."""
    jobs = list(inst.jobs)
    n = len(jobs)

    def windows(j: Job):
        hi = j.deadline if j.deadline is not None else slot_limit
        return range(j.release, hi + 1)

    def go(i, used, acc):
        if i == n:
            yield dict(acc)
            return
        j = jobs[i]
        if not full:
            yield from go(i + 1, used, acc)
        for t in windows(j):
            if t not in used:
                acc[j.id] = t
                yield from go(i + 1, used | {t}, acc)
                del acc[j.id]

    yield from go(0, frozenset(), {})


def oracle_solve(inst: Instance, objective: str, *, gaps=None,
                 min_throughput=None, total_flow=None, max_flow=None,
                 weighted: bool = False):
    """Dispatch an exhaustive solve; returns (value, witness Schedule)."""
    if objective == "min_gaps":
        return oracle_min_gaps(inst)
    if objective == "max_gaps":
        return oracle_max_gaps(inst)
    if objective == "min_max_gap":
        return oracle_min_max_gap(inst)
    if objective == "max_throughput":
        return oracle_max_throughput(inst, gaps, weighted)
    if objective == "min_gaps_throughput":
        return oracle_min_gaps_throughput(inst, min_throughput, weighted)
    if objective == "min_total_flow":
        return oracle_min_total_flow(inst, gaps)
    if objective == "min_gaps_total_flow":
        return oracle_min_gaps_total_flow(inst, total_flow)
    if objective == "min_gaps_max_flow":
        return oracle_min_gaps_max_flow(inst, max_flow)
    if objective == "min_max_flow":
        return oracle_min_max_flow(inst, gaps)
    raise GapSchedError(f"unknown objective {objective!r}")
