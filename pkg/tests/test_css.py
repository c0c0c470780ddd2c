import math
import warnings

import mpmath as mp
import pytest

from bht import (
    CssQuery,
    EpsilonSchedule,
    McConfig,
    Settings,
    css_sweep,
    empirical_css,
    epsilon_at,
    predicted_css,
    synthesize_pair,
)
from bht.errors import DomainError, InconsistentMeasures, OracleInfeasible
from bht.schedules import STANDARD_SCHEDULES

HIGH = (2.5, 2.04)
LOW = (0.5, 1.03)


def _mp_criterion(d, c_x, eps, n):
    mp.mp.dps = 60
    d, c_x, eps = mp.mpf(d), mp.mpf(c_x), mp.mpf(eps)
    dn = c_x * mp.sqrt(2 * mp.log(1 / eps) / n)
    ub = min(mp.mpf(1), mp.exp(-n * (d - dn)))
    pre = 1 - eps - dn
    lb = pre * mp.exp(-n * (d + dn)) if pre > 0 else mp.mpf(0)
    c = mp.exp(-n * d)
    return max(ub - c, c - lb)


def _mp_css(d, c_x, sched, delta, n_max=500):
    for n in sched.admissible_range(n_max):
        if _mp_criterion(d, c_x, epsilon_at(sched, n), n) <= delta:
            return n
    return None


def _sweep(d, c_x, sched, ks=range(1, 9)):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InconsistentMeasures)
        base = CssQuery.abstract(d, c_x, sched, 1.0)
    return [r.css for _, r in css_sweep(base, ks)]


@pytest.mark.parametrize("sched", STANDARD_SCHEDULES, ids=str)
@pytest.mark.parametrize("measures", [HIGH, LOW], ids=["high", "low"])
def test_sweep_matches_high_precision_scan(measures, sched):
    got = _sweep(*measures, sched)
    want = [_mp_css(*measures, sched, 10.0**-k) for k in range(1, 9)]
    assert got == want


def test_sweep_values():
    assert _sweep(*HIGH, EpsilonSchedule.constant(0.1)) == [5, 7, 8, 9, 11, 12, 13, 14]
    assert _sweep(*LOW, EpsilonSchedule.power(0.1)) == [9, 15, 22, 28, 33, 39, 45, 50]


@pytest.mark.parametrize("sched", STANDARD_SCHEDULES, ids=str)
def test_css_grows_as_delta_shrinks(sched):
    css = _sweep(*LOW, sched)
    assert css == sorted(css)


def test_frontier():
    q = CssQuery(EpsilonSchedule.reciprocal(), 1e-4, 0.5, 1.03, keep_series=True)
    r = predicted_css(q)
    assert r.found and r.criterion_at_css <= 1e-4
    assert all(c > 1e-4 for n, c in r.series[:-1])
    assert r.series[-1][0] == r.css


def test_not_found():
    r = predicted_css(CssQuery(EpsilonSchedule.reciprocal(), 1e-12, 0.5, 1.03, n_max=20))
    assert not r.found and math.isnan(r.criterion_at_css)


def test_query_validation():
    with pytest.raises(DomainError):
        CssQuery(EpsilonSchedule.reciprocal(), 0.0, 0.5, 1.0)
    with pytest.raises(DomainError):
        CssQuery(EpsilonSchedule.reciprocal(), 0.1, 0.0, 1.0)
    with pytest.raises(DomainError):
        css_sweep(CssQuery(EpsilonSchedule.reciprocal(), 0.1, 0.5, 1.0), [])


@pytest.mark.parametrize("sched", STANDARD_SCHEDULES, ids=str)
def test_empirical_not_above_predicted(binary_pair, sched):
    emp = empirical_css(binary_pair, sched, 1e-3)
    pred = predicted_css(CssQuery.for_pair(binary_pair, sched, 1e-3))
    assert emp.found and pred.found
    assert emp.css <= pred.css


def test_empirical_oracle_errors(binary_pair):
    with pytest.raises(DomainError):
        empirical_css(binary_pair, EpsilonSchedule.reciprocal(), 1e-3, oracle="bogus")
    pair = synthesize_pair(15, 1.0, seed=0)
    with pytest.raises(OracleInfeasible):
        empirical_css(pair, EpsilonSchedule.reciprocal(), 1e-30, settings=Settings(enumeration_cap=1000))


def test_empirical_with_simulation(binary_pair):
    r = empirical_css(binary_pair, EpsilonSchedule.power(0.1), 1e-2, oracle=McConfig(20_000, 0))
    assert r.found
