"""Minimum-gap solver: spec examples, full table audit, oracle equivalence."""

import itertools
import random

import pytest

from gapsched.core import Constraints, gap_stats, normalize_distinct, validate
from gapsched.errors import GapSchedError, InfeasibleError
from gapsched.min_gaps import min_gaps, min_gaps_tables
from gapsched.oracle import oracle_min_gaps

from helpers import make_instance, random_feasible_normalized


def normalized(windows):
    res = normalize_distinct(make_instance(windows))
    assert not res.removed
    return res.instance


class TestExamples:
    def test_two_tight_jobs(self):
        value, sched = min_gaps(normalized([(0, 0), (5, 5)]))
        assert value == 1
        assert sorted(sched.assignment.values()) == [0, 5]

    def test_contiguous_pair(self):
        value, _ = min_gaps(normalized([(0, 3), (1, 2)]))
        assert value == 0

    def test_three_jobs_one_gap(self):
        value, _ = min_gaps(normalized([(0, 0), (0, 5), (5, 5)]))
        assert value == 1

    def test_infeasible_raises_with_witness(self):
        # Distinct releases and deadlines guarantee feasibility, so the only
        # way a direct call can fail is a collapsed window.
        from gapsched.core import Instance, Job

        inst = Instance((Job(0, 5, 3), Job(1, 0, 9)))
        with pytest.raises(InfeasibleError) as exc:
            min_gaps(inst)
        assert exc.value.witness == (5, 3)

    def test_tie_heavy_instance_infeasible_via_normalization(self):
        res = normalize_distinct(make_instance([(2, 2), (2, 2)]))
        assert res.removed  # feasibility-required callers treat this as infeasible

    def test_unnormalized_rejected(self):
        with pytest.raises(GapSchedError):
            min_gaps(make_instance([(0, 2), (0, 3)]))

    def test_single_job(self):
        assert min_gaps(normalized([(3, 5)]))[0] == 0


def cell_reference(jobs, lo, hi):
    """(min counted gaps, latest end at that count) for scheduling all of
    ``jobs`` inside [lo, hi]; the trailing idle run is not counted."""
    if not jobs:
        return 0, None
    windows = [range(max(j.release, lo), min(j.deadline, hi) + 1) for j in jobs]
    best = None
    for combo in itertools.product(*windows):
        if len(set(combo)) != len(combo):
            continue
        busy = sorted(combo)
        blocks = 1 + sum(1 for x, y in zip(busy, busy[1:]) if y > x + 1)
        counted = blocks - 1 + (1 if busy[0] > lo else 0)
        end = busy[-1]
        if best is None or (counted, -end) < (best[0], -best[1]):
            best = (counted, end)
    return best


class TestTables:
    def test_every_cell_matches_reference(self):
        rng = random.Random(1009)
        done = 0
        while done < 6:
            inst = random_feasible_normalized(rng, 4, 9)
            if inst is None:
                continue
            done += 1
            tables = min_gaps_tables(inst)
            n = len(tables.jobs)
            for k in range(n + 1):
                for a in range(n):
                    for b in range(n):
                        ra = int(tables.rank_release[a])
                        rb = int(tables.rank_release[b])
                        if ra >= rb:
                            continue
                        sub = tables.window_jobs(k, a, b)
                        ref = cell_reference(sub, ra + 1, rb - 1)
                        got_g = int(tables.gaps[k][a][b])
                        got_s = int(tables.stretch[k][a][b])
                        if not sub:
                            assert got_g == 0 and got_s == ra
                            continue
                        assert got_g == ref[0], (k, a, b, sub)
                        assert got_s == ref[1], (k, a, b, sub)

    def test_every_cell_witness_reconstructs(self):
        rng = random.Random(1013)
        done = 0
        while done < 4:
            inst = random_feasible_normalized(rng, 4, 9)
            if inst is None:
                continue
            done += 1
            tables = min_gaps_tables(inst)
            from gapsched.core import Instance, edf_schedule_busy_set

            n = len(tables.jobs)
            for k in range(n + 1):
                for a in range(n):
                    for b in range(n):
                        ra = int(tables.rank_release[a])
                        rb = int(tables.rank_release[b])
                        if ra >= rb:
                            continue
                        sub = tables.window_jobs(k, a, b)
                        busy = tables.reconstruct_busy(k, a, b)
                        assert len(busy) == len(sub)
                        if not sub:
                            continue
                        assert all(ra < t < rb for t in busy)
                        assert busy[-1] == int(tables.stretch[k][a][b])
                        matched = edf_schedule_busy_set(
                            Instance(tuple(sub)), busy)
                        assert matched is not None, (k, a, b, busy, sub)
                        blocks = 1 + sum(1 for x, y in zip(busy, busy[1:])
                                         if y > x + 1)
                        counted = blocks - 1 + (1 if busy[0] > ra + 1 else 0)
                        assert counted == int(tables.gaps[k][a][b])


class TestOracleEquivalence:
    def test_matches_exhaustive_minimum(self):
        rng = random.Random(2027)
        done = 0
        while done < 120:
            n = rng.randint(1, 6)
            inst = random_feasible_normalized(rng, n, 10)
            if inst is None:
                continue
            done += 1
            expect, _ = oracle_min_gaps(inst)
            value, sched = min_gaps(inst)
            assert value == expect, inst
            assert validate(sched, inst, Constraints(require_all=True)) == []
            assert gap_stats(sched).gap_count == value
