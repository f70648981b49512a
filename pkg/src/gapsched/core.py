"""Instance model, normalization, feasibility and schedule bookkeeping.

Unit jobs occupy one integer slot each.  A gap is a maximal run of idle
slots strictly between the first and last busy slot, so a schedule with
b blocks has exactly b - 1 gaps.  Everything here is a pure function
over immutable values; solvers in the sibling modules build on these
primitives.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import GapSchedError, InfeasibleError

JobId = str | int


@dataclass(frozen=True)
class Job:
    id: JobId
    release: int
    deadline: int | None = None
    weight: int = 1

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError(f"job {self.id}: negative weight")


@dataclass(frozen=True)
class Instance:
    jobs: tuple[Job, ...]

    def __post_init__(self):
        ids = [j.id for j in self.jobs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate job ids")

    def __len__(self):
        return len(self.jobs)

    @property
    def has_deadlines(self) -> bool:
        return all(j.deadline is not None for j in self.jobs)

    def by_deadline(self) -> list[Job]:
        return sorted(self.jobs, key=lambda j: (j.deadline, j.release))

    def by_release(self) -> list[Job]:
        return sorted(self.jobs, key=lambda j: (j.release, j.deadline or j.release))

    def job(self, job_id: JobId) -> Job:
        for j in self.jobs:
            if j.id == job_id:
                return j
        raise KeyError(job_id)

    def releases_distinct(self) -> bool:
        rs = [j.release for j in self.jobs]
        return len(set(rs)) == len(rs)

    def deadlines_distinct(self) -> bool:
        ds = [j.deadline for j in self.jobs]
        return len(set(ds)) == len(ds)


def instance(jobs_spec) -> Instance:
    """Build an Instance from (release, deadline) pairs or Job objects.

    Convenience for tests and generators; ids default to list position.
    """
    jobs = []
    for i, spec in enumerate(jobs_spec):
        if isinstance(spec, Job):
            jobs.append(spec)
        elif isinstance(spec, tuple):
            if len(spec) == 2:
                jobs.append(Job(i, spec[0], spec[1]))
            else:
                jobs.append(Job(i, spec[0], spec[1], spec[2]))
        else:
            jobs.append(Job(i, spec))
    return Instance(tuple(jobs))


@dataclass(frozen=True)
class GapStats:
    gap_count: int
    max_idle: int
    max_separation: int
    total_flow: int
    max_flow: int


@dataclass
class Schedule:
    """Injective assignment of job ids to slots, tied to its instance."""

    instance: Instance
    assignment: dict[JobId, int]
    _busy: tuple[int, ...] = field(default=None, repr=False)

    def busy_slots(self) -> tuple[int, ...]:
        if self._busy is None:
            object.__setattr__(self, "_busy", tuple(sorted(self.assignment.values())))
        return self._busy

    def blocks(self) -> list[tuple[int, int]]:
        out = []
        for t in self.busy_slots():
            if out and t == out[-1][1] + 1:
                out[-1] = (out[-1][0], t)
            else:
                out.append((t, t))
        return out

    def gaps(self) -> list[tuple[int, int]]:
        blocks = self.blocks()
        return [(a[1] + 1, b[0] - 1) for a, b in zip(blocks, blocks[1:])]


def gap_stats(schedule: Schedule) -> GapStats:
    """Gap/flow statistics of a non-empty schedule."""
    if not schedule.assignment:
        raise GapSchedError("gap_stats of an empty schedule")
    busy = schedule.busy_slots()
    gaps = schedule.gaps()
    max_idle = max((b - a + 1 for a, b in gaps), default=0)
    max_sep = max((t2 - t1 for t1, t2 in zip(busy, busy[1:])), default=0)
    flows = [schedule.assignment[j.id] - j.release
             for j in schedule.instance.jobs if j.id in schedule.assignment]
    return GapStats(
        gap_count=len(gaps),
        max_idle=max_idle,
        max_separation=max_sep,
        total_flow=sum(flows),
        max_flow=max(flows),
    )


@dataclass(frozen=True)
class Constraints:
    """Optional side constraints checked by validate()."""

    max_gaps: int | None = None
    max_total_flow: int | None = None
    max_job_flow: int | None = None
    min_throughput: int | None = None
    max_separation: int | None = None
    require_all: bool = False
    weighted: bool = False


def validate(schedule: Schedule, inst: Instance,
             constraints: Constraints | None = None) -> list[str]:
    """Return a list of violation messages; empty iff the schedule is valid."""
    v = []
    slots_seen: dict[int, JobId] = {}
    jobs_by_id = {j.id: j for j in inst.jobs}
    for jid, t in schedule.assignment.items():
        if jid not in jobs_by_id:
            v.append(f"unknown job {jid!r}")
            continue
        job = jobs_by_id[jid]
        if t < job.release:
            v.append(f"job {jid!r} scheduled at {t} before release {job.release}")
        if job.deadline is not None and t > job.deadline:
            v.append(f"job {jid!r} scheduled at {t} after deadline {job.deadline}")
        if t in slots_seen:
            v.append(f"slot {t} assigned to both {slots_seen[t]!r} and {jid!r}")
        slots_seen[t] = jid
    c = constraints
    if c is None:
        return v
    if c.require_all and len(schedule.assignment) < len(inst.jobs):
        missing = set(jobs_by_id) - set(schedule.assignment)
        v.append(f"jobs not scheduled: {sorted(missing, key=str)}")
    if schedule.assignment:
        stats = gap_stats(schedule)
        if c.max_gaps is not None and stats.gap_count > c.max_gaps:
            v.append(f"gap count {stats.gap_count} exceeds budget {c.max_gaps}")
        if c.max_total_flow is not None and stats.total_flow > c.max_total_flow:
            v.append(f"total flow {stats.total_flow} exceeds bound {c.max_total_flow}")
        if c.max_job_flow is not None and stats.max_flow > c.max_job_flow:
            v.append(f"max flow {stats.max_flow} exceeds bound {c.max_job_flow}")
        if c.max_separation is not None and stats.max_separation > c.max_separation:
            v.append(f"max separation {stats.max_separation} exceeds {c.max_separation}")
    if c.min_throughput is not None:
        got = (sum(jobs_by_id[j].weight for j in schedule.assignment)
               if c.weighted else len(schedule.assignment))
        if got < c.min_throughput:
            v.append(f"throughput {got} below floor {c.min_throughput}")
    return v


@dataclass(frozen=True)
class NormalizeResult:
    instance: Instance
    remap: dict[JobId, Job]
    removed: tuple[Job, ...]


def normalize_distinct(inst: Instance) -> NormalizeResult:
    """Make all release times and all deadlines pairwise distinct.

    Release ties are broken by pushing the job with the later deadline one
    slot to the right; deadline ties pull the job with the earlier release
    one slot to the left.  Ties on both coordinates are processed in stable
    input order.  Jobs whose window collapses (deadline < release) are
    dropped and reported; schedulable busy-slot sets are preserved for the
    survivors.
    """
    if not inst.has_deadlines:
        raise GapSchedError("normalize_distinct requires deadlines")
    order = {j.id: i for i, j in enumerate(inst.jobs)}
    removed: list[Job] = []

    # Release pass.  At every contested release value the job with the
    # earliest deadline keeps it (stable input order on full ties) and the
    # others are pushed one slot right, re-competing at their new release.
    heap = [(j.release, j.deadline, order[j.id], j) for j in inst.jobs]
    heapq.heapify(heap)
    out: list[Job] = []
    prev = None
    while heap:
        r, d, o, j = heapq.heappop(heap)
        if prev is not None and r <= prev:
            if prev + 1 > d:
                removed.append(Job(j.id, prev + 1, d, j.weight))
            else:
                heapq.heappush(heap, (prev + 1, d, o, j))
            continue
        out.append(Job(j.id, r, d, j.weight))
        prev = r

    # Deadline pass, symmetric: the job with the latest release keeps a
    # contested deadline, the others are pulled one slot left.
    heap2 = [(-j.deadline, -j.release, -order[j.id], j) for j in out]
    heapq.heapify(heap2)
    jobs2: list[Job] = []
    prev = None
    while heap2:
        nd, nr, no, j = heapq.heappop(heap2)
        d = -nd
        if prev is not None and d >= prev:
            if prev - 1 < j.release:
                removed.append(Job(j.id, j.release, prev - 1, j.weight))
            else:
                heapq.heappush(heap2, (-(prev - 1), nr, no, j))
            continue
        jobs2.append(Job(j.id, j.release, d, j.weight))
        prev = d

    jobs2.sort(key=lambda j: (j.deadline, j.release))
    norm = Instance(tuple(jobs2))
    return NormalizeResult(norm, {j.id: j for j in jobs2}, tuple(removed))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    schedule: Schedule | None = None
    witness: tuple[int, int] | None = None


def check_feasible(inst: Instance) -> FeasibilityResult:
    """EDF feasibility for a deadline instance.

    Runs the pending job with the earliest deadline at every slot from the
    first release on.  On failure returns an overfull window [u, v]
    containing more jobs than slots (u a release, v a deadline).
    """
    if not inst.has_deadlines:
        raise GapSchedError("check_feasible requires deadlines")
    if not inst.jobs:
        return FeasibilityResult(True, Schedule(inst, {}))
    jobs = inst.by_release()
    assignment: dict[JobId, int] = {}
    pending: list[tuple[int, int, JobId]] = []  # (deadline, order, id)
    i = 0
    t = jobs[0].release
    n = len(jobs)
    while i < n or pending:
        if not pending and i < n and jobs[i].release > t:
            t = jobs[i].release
        while i < n and jobs[i].release <= t:
            heapq.heappush(pending, (jobs[i].deadline, i, jobs[i].id))
            i += 1
        d, _, jid = heapq.heappop(pending)
        if d < t:
            return FeasibilityResult(False, witness=_hall_witness(inst))
        assignment[jid] = t
        t += 1
    return FeasibilityResult(True, Schedule(inst, assignment))


def _hall_witness(inst: Instance) -> tuple[int, int]:
    """An interval [u, v] holding more than v - u + 1 whole job windows.

    Searching u over releases and v over deadlines suffices.
    """
    releases = sorted({j.release for j in inst.jobs})
    deadlines = sorted({j.deadline for j in inst.jobs})
    best = None
    for u in releases:
        for v in deadlines:
            c = sum(1 for j in inst.jobs if j.release >= u and j.deadline <= v)
            if c > v - u + 1:  # also catches collapsed windows (v < u)
                if best is None or (v - u) < (best[1] - best[0]):
                    best = (u, v)
    if best is None:
        raise GapSchedError("no Hall witness in a feasible instance")
    return best


def edf_schedule_busy_set(inst: Instance, busy: tuple[int, ...]) -> Schedule | None:
    """Match jobs onto a prescribed busy-slot set, earliest deadline first.

    Returns None when no injective window-respecting assignment exists.
    Standard exchange argument: if any assignment fills the set, this
    greedy does.
    """
    jobs = inst.by_release()
    pending: list[tuple[int, int, JobId]] = []
    assignment: dict[JobId, int] = {}
    i = 0
    for t in sorted(busy):
        while i < len(jobs) and jobs[i].release <= t:
            j = jobs[i]
            heapq.heappush(pending, (j.deadline if j.deadline is not None else t, i, j.id))
            i += 1
        if not pending:
            return None
        d, _, jid = heapq.heappop(pending)
        if d < t:
            return None
        assignment[jid] = t
    if i < len(jobs) or pending:
        return None
    return Schedule(inst, assignment)


def shift_block_left(schedule: Schedule, block: tuple[int, int]) -> Schedule:
    """Shift one block a single slot to the left.

    Re-permutes jobs inside the block along the chain i_1, i_2, ... where
    i_1 sits at the block's last slot and each subsequent job sits at the
    previous one's release time.  Requires distinct release times and that
    the job at the block's last slot is not at its own release.
    """
    inst = schedule.instance
    if not inst.releases_distinct():
        raise GapSchedError("shift_block_left requires distinct release times")
    u, v = block
    busy = set(schedule.busy_slots())
    if not all(t in busy for t in range(u, v + 1)):
        raise GapSchedError(f"[{u}, {v}] is not fully busy")
    if u - 1 in busy or v + 1 in busy:
        raise GapSchedError(f"[{u}, {v}] is not a maximal block")
    slot_to_job = {t: jid for jid, t in schedule.assignment.items()}
    rel = {j.id: j.release for j in inst.jobs}

    chain = [slot_to_job[v]]
    while rel[chain[-1]] >= u:
        nxt = slot_to_job[rel[chain[-1]]]
        if nxt == chain[-1]:
            raise GapSchedError(
                f"job {chain[-1]!r} is scheduled at its release; block cannot shift")
        chain.append(nxt)
    new_assignment = dict(schedule.assignment)
    for jid in chain[:-1]:
        new_assignment[jid] = rel[jid]
    new_assignment[chain[-1]] = u - 1
    return Schedule(inst, new_assignment)
