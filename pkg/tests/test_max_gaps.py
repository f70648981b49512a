"""Maximum-gap solver and the schedule rewrite rules behind its windowing."""

import random

import pytest

from gapsched.core import (
    Constraints,
    Instance,
    Job,
    Schedule,
    gap_stats,
    normalize_distinct,
    validate,
)
from gapsched.max_gaps import lemma2_normalize, max_gaps
from gapsched.oracle import oracle_max_gaps

from helpers import make_instance, random_feasible_normalized


def normalized(windows):
    res = normalize_distinct(make_instance(windows))
    assert not res.removed
    return res.instance


class TestExamples:
    def test_two_tight_jobs(self):
        value, sched = max_gaps(normalized([(0, 0), (4, 4)]))
        assert value == 1
        assert sorted(sched.assignment.values()) == [0, 4]

    def test_nested_pair(self):
        value, _ = max_gaps(normalized([(0, 3), (1, 2)]))
        assert value == 1

    def test_three_jobs_two_gaps(self):
        value, sched = max_gaps(normalized([(0, 0), (1, 2), (4, 4)]))
        assert value == 2
        assert sorted(sched.assignment.values()) == [0, 2, 4]


class TestOracleEquivalence:
    def test_matches_exhaustive_maximum(self):
        rng = random.Random(31)
        done = 0
        while done < 120:
            n = rng.randint(1, 6)
            inst = random_feasible_normalized(rng, n, 10)
            if inst is None:
                continue
            done += 1
            expect, _ = oracle_max_gaps(inst)
            value, sched = max_gaps(inst)
            assert value == expect, inst
            assert validate(sched, inst, Constraints(require_all=True)) == []
            assert gap_stats(sched).gap_count == value

    def test_wider_t_range_changes_nothing(self):
        """The windowed candidate restriction never loses the optimum: the
        witness found under restrictions matches the unrestricted search."""
        rng = random.Random(37)
        done = 0
        while done < 40:
            inst = random_feasible_normalized(rng, rng.randint(2, 5), 8)
            if inst is None:
                continue
            done += 1
            assert max_gaps(inst)[0] == oracle_max_gaps(inst)[0]


class TestLemma2Normalize:
    def test_long_gap_pulls_job_left(self):
        inst = Instance((Job(0, 0, 9), Job(1, 6, 9)))
        s = Schedule(inst, {0: 5, 1: 9})
        out = lemma2_normalize(s)
        assert validate(out, inst) == []
        assert gap_stats(out).gap_count >= gap_stats(s).gap_count

    def test_all_at_release_is_fixpoint(self):
        inst = Instance((Job(0, 0, 9), Job(1, 3, 9), Job(2, 7, 9)))
        s = Schedule(inst, {0: 0, 1: 3, 2: 7})
        out = lemma2_normalize(s)
        assert out.assignment == s.assignment

    def test_fixpoint_properties(self):
        rng = random.Random(41)
        done = 0
        while done < 80:
            n = rng.randint(2, 5)
            releases = rng.sample(range(12), n)
            inst = Instance(tuple(Job(i, r, 40) for i, r in enumerate(releases)))
            slots = []
            used = set()
            ok = True
            for i, r in enumerate(releases):
                cands = [t for t in range(r, r + 10) if t not in used]
                if not cands:
                    ok = False
                    break
                t = rng.choice(cands)
                slots.append(t)
                used.add(t)
            if not ok:
                continue
            done += 1
            s = Schedule(inst, dict(enumerate(slots)))
            out = lemma2_normalize(s)
            assert validate(out, inst) == []
            assert gap_stats(out).gap_count >= gap_stats(s).gap_count
            # busy set never increased lexicographically
            assert out.busy_slots() <= s.busy_slots()
            # fixpoint: no job has an idle run of length >= 3 behind it
            busy = set(out.busy_slots())
            for jid, t in out.assignment.items():
                r = inst.job(jid).release
                run = 0
                for x in range(r, t):
                    run = run + 1 if x not in busy else 0
                    assert run <= 2
