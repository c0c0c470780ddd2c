import math

import pytest

from bht import EpsilonSchedule, epsilon_at, is_subexponential
from bht.errors import DomainError, NotAdmissible, Undecidable
from bht.schedules import STANDARD_SCHEDULES, parse_schedule_list


def test_values():
    assert epsilon_at(EpsilonSchedule.constant(0.1), 7) == 0.1
    assert epsilon_at(EpsilonSchedule.reciprocal(), 4) == 0.25
    assert epsilon_at(EpsilonSchedule.power(0.1), 150) == pytest.approx(0.6058859, rel=1e-7)
    assert epsilon_at(EpsilonSchedule.log_reciprocal(), 450) == pytest.approx(0.1636862783, rel=1e-9)
    assert epsilon_at(EpsilonSchedule.exponential(0.2), 5) == pytest.approx(math.exp(-1.0))
    assert epsilon_at(EpsilonSchedule.explicit([0.5, 0.3]), 2) == 0.3


@pytest.mark.parametrize(
    "sched, first",
    [(EpsilonSchedule.constant(0.1), 1), (EpsilonSchedule.reciprocal(), 2),
     (EpsilonSchedule.power(0.1), 2), (EpsilonSchedule.log_reciprocal(), 3),
     (EpsilonSchedule.exponential(1.0), 1)],
)
def test_first_admissible(sched, first):
    assert sched.first_n == first
    with pytest.raises(NotAdmissible):
        epsilon_at(sched, first - 1 if first > 1 else 0)
    assert 0 < epsilon_at(sched, first) < 1


def test_explicit_runs_out():
    s = EpsilonSchedule.explicit([0.5, 0.3])
    assert list(s.admissible_range(10)) == [1, 2]
    with pytest.raises(NotAdmissible):
        epsilon_at(s, 3)


@pytest.mark.parametrize("sched", STANDARD_SCHEDULES[1:])
def test_vanishing_schedules_decrease(sched):
    vals = [epsilon_at(sched, n) for n in sched.admissible_range(500)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_subexponential():
    assert all(is_subexponential(s) for s in STANDARD_SCHEDULES)
    assert not is_subexponential(EpsilonSchedule.exponential(0.1))
    with pytest.raises(Undecidable):
        is_subexponential(EpsilonSchedule.explicit([0.1]))


@pytest.mark.parametrize("text", ["const:0.1", "recip", "pow:0.1", "logrecip", "exp:0.2", "list:0.5,0.25"])
def test_parse_round_trip(text):
    s = EpsilonSchedule.parse(text)
    assert EpsilonSchedule.parse(str(s)) == s


@pytest.mark.parametrize("text", ["const:1.5", "const:0", "pow:-1", "bogus", "recip:2", "list:", "const:x"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        EpsilonSchedule.parse(text)


def test_parse_list_keeps_explicit_values():
    got = parse_schedule_list("recip,list:0.5,0.3,pow:0.1")
    assert [str(s) for s in got] == ["recip", "list:0.5,0.3", "pow:0.1"]
