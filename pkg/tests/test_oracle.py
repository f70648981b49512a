"""The exhaustive reference solvers, cross-checked against literal
enumeration of assignments on tiny instances."""

import random

import pytest

from gapsched.core import Constraints, Instance, Job, gap_stats, validate
from gapsched.errors import InfeasibleError, OracleCapError
from gapsched.oracle import (
    enumerate_schedules,
    oracle_min_gaps_max_flow,
    oracle_min_max_flow,
    oracle_min_total_flow,
    oracle_solve,
)

from helpers import make_instance, random_windows, release_instance


def stats_of(inst, assignment):
    from gapsched.core import Schedule
    return gap_stats(Schedule(inst, assignment))


def enumerate_values(inst, score, full=True, slot_limit=None):
    return [score(a) for a in enumerate_schedules(inst, full=full,
                                                  slot_limit=slot_limit)]


class TestGapObjectivesAgainstEnumeration:
    def test_min_and_max_gaps(self):
        rng = random.Random(1)
        checked = 0
        while checked < 50:
            inst = make_instance(random_windows(rng, rng.randint(1, 4), 7))
            vals = enumerate_values(
                inst, lambda a: stats_of(inst, a).gap_count if a else 0)
            if not vals:
                for obj in ("min_gaps", "max_gaps"):
                    with pytest.raises(InfeasibleError):
                        oracle_solve(inst, obj)
                continue
            checked += 1
            lo, sched_lo = oracle_solve(inst, "min_gaps")
            hi, sched_hi = oracle_solve(inst, "max_gaps")
            assert lo == min(vals)
            assert hi == max(vals)
            for s in (sched_lo, sched_hi):
                assert validate(s, inst, Constraints(require_all=True)) == []
            assert stats_of(inst, sched_lo.assignment).gap_count == lo
            assert stats_of(inst, sched_hi.assignment).gap_count == hi

    def test_min_max_gap(self):
        rng = random.Random(2)
        checked = 0
        while checked < 50:
            inst = make_instance(random_windows(rng, rng.randint(2, 4), 7))
            vals = enumerate_values(
                inst, lambda a: stats_of(inst, a).max_separation)
            if not vals:
                continue
            checked += 1
            v, sched = oracle_solve(inst, "min_max_gap")
            assert v == min(vals)
            assert stats_of(inst, sched.assignment).max_separation == v


class TestThroughputAgainstEnumeration:
    def test_max_throughput(self):
        rng = random.Random(3)
        for _ in range(40):
            inst = make_instance(random_windows(rng, rng.randint(1, 4), 7))
            for g in (0, 1, 2):
                def score(a):
                    if not a:
                        return 0
                    st = stats_of(inst, a)
                    return len(a) if st.gap_count <= g else -1
                best = max(enumerate_values(inst, score, full=False))
                v, sched = oracle_solve(inst, "max_throughput", gaps=g)
                assert v == best
                assert len(sched.assignment) == v
                if sched.assignment:
                    assert stats_of(inst, sched.assignment).gap_count <= g
                assert validate(sched, inst) == []

    def test_weighted_throughput(self):
        rng = random.Random(4)
        for _ in range(30):
            windows = random_windows(rng, 4, 7)
            weights = [rng.randint(0, 4) for _ in windows]
            inst = Instance(tuple(Job(i, r, d, w)
                                  for i, ((r, d), w) in enumerate(zip(windows, weights))))
            wmap = {j.id: j.weight for j in inst.jobs}
            for g in (0, 1):
                def score(a):
                    if not a:
                        return 0
                    st = stats_of(inst, a)
                    return sum(wmap[i] for i in a) if st.gap_count <= g else -1
                best = max(enumerate_values(inst, score, full=False))
                v, _ = oracle_solve(inst, "max_throughput", gaps=g, weighted=True)
                assert v == best

    def test_min_gaps_throughput_duality(self):
        rng = random.Random(5)
        for _ in range(30):
            inst = make_instance(random_windows(rng, 4, 7))
            for m in (1, 2, 3, 4):
                try:
                    g, sched = oracle_solve(inst, "min_gaps_throughput",
                                            min_throughput=m)
                except InfeasibleError:
                    v, _ = oracle_solve(inst, "max_throughput", gaps=4)
                    assert v < m
                    continue
                assert len(sched.assignment) >= m
                v, _ = oracle_solve(inst, "max_throughput", gaps=g)
                assert v >= m
                if g > 0:
                    v2, _ = oracle_solve(inst, "max_throughput", gaps=g - 1)
                    assert v2 < m


class TestFlowAgainstEnumeration:
    def test_min_total_flow(self):
        rng = random.Random(6)
        for _ in range(40):
            releases = sorted(rng.randrange(8) for _ in range(rng.randint(1, 4)))
            inst = release_instance(releases)
            limit = max(releases) + len(releases)
            for g in (0, 1, 2):
                def score(a):
                    st = stats_of(inst, a)
                    return st.total_flow if st.gap_count <= g else 10**9
                best = min(enumerate_values(inst, score, slot_limit=limit))
                v, sched = oracle_solve(inst, "min_total_flow", gaps=g)
                assert v == best
                assert stats_of(inst, sched.assignment).total_flow == v
                assert stats_of(inst, sched.assignment).gap_count <= g

    def test_min_max_flow(self):
        rng = random.Random(7)
        for _ in range(40):
            releases = sorted(rng.randrange(8) for _ in range(rng.randint(1, 4)))
            inst = release_instance(releases)
            limit = max(releases) + len(releases)
            for g in (0, 1):
                def score(a):
                    st = stats_of(inst, a)
                    return st.max_flow if st.gap_count <= g else 10**9
                best = min(enumerate_values(inst, score, slot_limit=limit))
                v, _ = oracle_solve(inst, "min_max_flow", gaps=g)
                assert v == best

    def test_min_gaps_flow_bounds(self):
        rng = random.Random(8)
        for _ in range(40):
            releases = sorted(rng.randrange(8) for _ in range(rng.randint(1, 4)))
            inst = release_instance(releases)
            limit = max(releases) + len(releases)
            f = rng.randint(0, 6)

            def score_total(a):
                st = stats_of(inst, a)
                return st.gap_count if st.total_flow <= f else 10**9
            best = min(enumerate_values(inst, score_total, slot_limit=limit))
            try:
                v, _ = oracle_solve(inst, "min_gaps_total_flow", total_flow=f)
                assert v == best
            except InfeasibleError:
                assert best == 10**9

            def score_max(a):
                st = stats_of(inst, a)
                return st.gap_count if st.max_flow <= f else 10**9
            best = min(enumerate_values(inst, score_max, slot_limit=limit))
            try:
                v, sched = oracle_solve(inst, "min_gaps_max_flow", max_flow=f)
                assert v == best
                assert stats_of(inst, sched.assignment).max_flow <= f
            except InfeasibleError:
                assert best == 10**9

    def test_slot_universe_is_wide_enough(self):
        """Doubling the slot bound never improves the optimum."""
        rng = random.Random(9)
        for _ in range(25):
            releases = sorted(rng.randrange(8) for _ in range(rng.randint(1, 4)))
            inst = release_instance(releases)
            wide = max(releases) + 2 * len(releases)
            for g in (0, 1):
                base, _ = oracle_min_total_flow(inst, g)
                wide_v, _ = oracle_min_total_flow(inst, g, _limit_override=wide)
                assert base == wide_v
                base, _ = oracle_min_max_flow(inst, g)
                wide_v, _ = oracle_min_max_flow(inst, g, _limit_override=wide)
                assert base == wide_v


class TestOracleInvariances:
    def test_translation_invariance(self):
        rng = random.Random(10)
        for _ in range(20):
            inst = make_instance(random_windows(rng, 3, 6))
            shifted = Instance(tuple(Job(j.id, j.release + 13, j.deadline + 13)
                                     for j in inst.jobs))
            for obj in ("min_gaps", "max_gaps", "min_max_gap"):
                try:
                    v1, _ = oracle_solve(inst, obj)
                except InfeasibleError:
                    with pytest.raises(InfeasibleError):
                        oracle_solve(shifted, obj)
                    continue
                v2, _ = oracle_solve(shifted, obj)
                assert v1 == v2

    def test_relabeling_invariance(self):
        rng = random.Random(11)
        for _ in range(20):
            windows = random_windows(rng, 4, 7)
            inst = make_instance(windows)
            perm = list(range(4))
            rng.shuffle(perm)
            relabeled = Instance(tuple(
                Job(f"x{i}", *windows[p]) for i, p in enumerate(perm)))
            for obj in ("min_gaps", "max_gaps"):
                try:
                    v1, s1 = oracle_solve(inst, obj)
                except InfeasibleError:
                    continue
                v2, s2 = oracle_solve(relabeled, obj)
                assert v1 == v2
                assert s1.busy_slots() == s2.busy_slots()


class TestCaps:
    def test_job_cap(self):
        inst = make_instance([(i, i) for i in range(9)])
        with pytest.raises(OracleCapError):
            oracle_solve(inst, "min_gaps")

    def test_slot_cap(self):
        inst = make_instance([(0, 30)])
        with pytest.raises(OracleCapError):
            oracle_solve(inst, "min_gaps")

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("GAPSCHED_ORACLE_CAP", "10,40")
        inst = make_instance([(0, 30)])
        v, _ = oracle_solve(inst, "min_gaps")
        assert v == 0
