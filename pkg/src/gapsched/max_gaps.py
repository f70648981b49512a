"""Maximum number of gaps for feasible deadline instances.

Windowed DP: best[k][u][v] is the most gaps (extremal ones included) a
schedule of the first k jobs released inside [u, v] can show in that
window.  Job k must run at some t in [r_k, min(v, d_k, r_k + 3n)]; every
schedule can be rewritten (see lemma2_normalize) so that no job travels
further than 3n past its release, which also pins the useful window
starts to releases and their predecessors.  The right sub-window is
remapped to start just before the next release, collapsing the u-axis to
O(n) values and the total work to O(n^5).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .core import (
    Constraints,
    Instance,
    Job,
    Schedule,
    gap_stats,
    validate,
)
from .errors import GapSchedError
from .min_gaps import _augment, _require_normalized_feasible, _END, _START


def max_gaps(inst: Instance) -> tuple[int, Schedule]:
    """Maximum interior gap count over full schedules, with witness."""
    _require_normalized_feasible(inst)
    if len(inst.jobs) == 0:
        return 0, Schedule(inst, {})
    jobs = _augment(inst)
    n = len(jobs)
    releases = [j.release for j in jobs]
    span = 3 * n

    ugrid = sorted({r for j in jobs for r in (j.release - 1, j.release)})
    vgrid = sorted({j.release + c for j in jobs for c in range(-1, span + 2)})
    ui = {u: i for i, u in enumerate(ugrid)}
    vi = {v: i for i, v in enumerate(vgrid)}
    varr = np.asarray(vgrid, dtype=np.int64)
    nu, nv = len(ugrid), len(vgrid)

    # levels[k][u][v]; level 0 is the empty sub-instance: one all-idle gap.
    level0 = np.ones((nu, nv), dtype=np.int32)
    levels = [level0]
    args = [None]
    prefix_releases: list[int] = []  # releases of jobs with index < k-1, sorted

    for k in range(1, n + 1):
        jk = jobs[k - 1]
        prev = levels[-1]
        cur = prev.copy()
        arg = np.full((nu, nv), -1, dtype=np.int16)
        rows = bisect.bisect_right(ugrid, jk.release)          # u <= r_k
        tmax = min(jk.deadline, jk.release + span)
        ucol = np.asarray(ugrid[:rows], dtype=np.int64)

        first_col = bisect.bisect_left(vgrid, jk.release)      # v >= r_k
        cur[:rows, first_col:] = -1
        prefix_set = set(prefix_releases)
        for t in range(jk.release, tmax + 1):
            if t in prefix_set:
                continue  # another job must run at its release here
            tcol = vi[t]
            # left factor over u: window [u, t-1]
            left = np.where(ucol <= t - 1, prev[:rows, vi[t - 1]], 0)
            # right factor over v >= t
            right = np.empty(nv - tcol, dtype=np.int32)
            right[0] = 0  # v == t: empty right window
            p = bisect.bisect_right(prefix_releases, t)
            nxt = prefix_releases[p] if p < len(prefix_releases) else None
            if nxt is None:
                right[1:] = 1  # idle tail is a single gap
            else:
                split = vi[nxt] - tcol if nxt <= vgrid[-1] else nv - tcol
                right[1:split] = 1
                row = ui[nxt] if nxt == t + 1 else ui[nxt - 1]
                right[split:] = prev[row, tcol + split:]
            cand = left[:, None] + right[None, :]
            block = cur[:rows, tcol:]
            improved = cand > block
            block[improved] = cand[improved]
            arg_block = arg[:rows, tcol:]
            arg_block[improved] = t - jk.release
        levels.append(cur)
        args.append(arg)
        bisect.insort(prefix_releases, jk.release)

    top_u, top_v = ui[jobs[0].release], vi[jobs[-1].release]
    value = int(levels[n][top_u][top_v]) - 2

    assignment: dict = {}

    def rebuild(k: int, u: int, v: int):
        while k > 0:
            jk = jobs[k - 1]
            if not (ugrid[u] <= jk.release <= vgrid[v]):
                k -= 1
                continue
            t = jk.release + int(args[k][u][v])
            assignment[jk.id] = t
            rels = sorted(jobs[i].release for i in range(k - 1))
            p = bisect.bisect_right(rels, t)
            nxt = rels[p] if p < len(rels) else None
            if nxt is not None and nxt <= vgrid[v] and t < vgrid[v]:
                row = ui[nxt] if nxt == t + 1 else ui[nxt - 1]
                rebuild(k - 1, row, v)
            if t - 1 >= ugrid[u]:
                k, v = k - 1, vi[t - 1]
                continue
            return

    rebuild(n, top_u, top_v)
    sched_all = Schedule(Instance(tuple(jobs)), assignment)
    assert validate(sched_all, Instance(tuple(jobs)),
                    Constraints(require_all=True)) == []
    assert gap_stats(sched_all).gap_count == value + 2
    final = {j: t for j, t in assignment.items() if j not in (_START, _END)}
    sched = Schedule(inst, final)
    assert validate(sched, inst, Constraints(require_all=True)) == []
    return value, sched


def lemma2_normalize(schedule: Schedule) -> Schedule:
    """Rewrite a schedule so every job has only short gaps behind it.

    Two rules, iterated to a fixpoint, never decreasing the gap count:
    (i) a job with an idle run of length >= 3 between its release and its
    slot moves into that run; (ii) a block preceded by an idle run of
    length >= 2 whose first late job exists sends that job to the slot
    just before the block.  Each rewrite makes the busy-slot set
    lexicographically smaller, so the process terminates.
    """
    inst = schedule.instance
    if not inst.releases_distinct():
        raise GapSchedError("lemma2_normalize requires distinct releases")
    rel = {j.id: j.release for j in inst.jobs}
    assignment = dict(schedule.assignment)
    guard = 0
    while True:
        guard += 1
        assert guard < 10_000, "rewrite loop failed to reach a fixpoint"
        cur = Schedule(inst, dict(assignment))
        before = gap_stats(cur).gap_count if assignment else 0
        move = _rule_move_into_long_gap(cur, rel) or _rule_close_up_block(cur, rel)
        if move is None:
            return cur
        jid, slot = move
        assert slot < assignment[jid]
        assignment[jid] = slot
        after = gap_stats(Schedule(inst, dict(assignment))).gap_count
        assert after >= before, "rewrite decreased the gap count"


def _rule_move_into_long_gap(schedule: Schedule, rel) -> tuple | None:
    # Idle runs are clipped to [release, slot); runs ahead of the first busy
    # slot count as well.
    busy = set(schedule.busy_slots())
    for jid, slot in sorted(schedule.assignment.items(), key=lambda kv: kv[1]):
        run_start = None
        for x in range(rel[jid], slot):
            if x in busy:
                run_start = None
                continue
            if run_start is None:
                run_start = x
            if x - run_start + 1 >= 3:
                return jid, run_start + 1
    return None


def _rule_close_up_block(schedule: Schedule, rel) -> tuple | None:
    blocks = schedule.blocks()
    slot_to_job = {t: j for j, t in schedule.assignment.items()}
    for prev_blk, blk in zip(blocks, blocks[1:]):
        if blk[0] - prev_blk[1] - 1 < 2:
            continue
        for t in range(blk[0], blk[1] + 1):
            jid = slot_to_job[t]
            if rel[jid] < t:
                # distinct releases put the first late job's release below
                # the block start
                assert rel[jid] <= blk[0] - 1
                return jid, blk[0] - 1
    return None
