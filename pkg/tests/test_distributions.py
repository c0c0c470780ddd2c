import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bht import (
    make_pair,
    nakagawa_exponent,
    pair_from_masses,
    solve_tilt_rate,
    synthesize_pair,
    tilted,
    validate_distribution,
)
from bht.distributions import tilt_rate
from bht.errors import (
    AlphabetSizeMismatch,
    AlphabetTooSmall,
    NegativeMass,
    RateOutOfRange,
    SumOutOfTolerance,
    SupportMismatch,
    TargetUnreachable,
    TiltOutOfRange,
)


@st.composite
def pairs(draw, max_m=5):
    m = draw(st.integers(2, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(m)) + 1e-6
    q = rng.dirichlet(np.ones(m)) + 1e-6
    return pair_from_masses(p / p.sum(), q / q.sum())


def test_binary_measures(binary_pair):
    assert binary_pair.d == pytest.approx(0.143841036, rel=1e-8)
    assert binary_pair.v == pytest.approx(0.301737240, rel=1e-8)
    assert binary_pair.c_x == pytest.approx(math.log(2), rel=1e-12)
    assert binary_pair.reverse_d == pytest.approx(0.1308120359, rel=1e-8)


def test_measures_against_mpmath():
    mp.mp.dps = 40
    rng = np.random.default_rng(7)
    p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
    pair = pair_from_masses(p, q)
    pm = [mp.mpf(float(x)) for x in pair.p.masses]
    qm = [mp.mpf(float(x)) for x in pair.q.masses]
    d = sum(a * mp.log(a / b) for a, b in zip(pm, qm))
    v = sum(a * (mp.log(a / b) - d) ** 2 for a, b in zip(pm, qm))
    assert pair.d == pytest.approx(float(d), rel=1e-12)
    assert pair.v == pytest.approx(float(v), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_measure_chain(pair):
    assert pair.d >= 0
    assert pair.v >= 0
    assert pair.d <= pair.c_x + 1e-12
    assert pair.c_x == pytest.approx(np.max(np.abs(pair.llr)))


def test_identical_pair_is_degenerate():
    pair = pair_from_masses([0.2, 0.8], [0.2, 0.8])
    assert pair.d == 0 and pair.v == 0 and pair.c_x == 0


@pytest.mark.parametrize(
    "masses, err",
    [([0.5, -0.1, 0.6], NegativeMass), ([0.5, 0.6], SumOutOfTolerance), ([1.0], AlphabetTooSmall)],
)
def test_validation_errors(masses, err):
    with pytest.raises(err):
        validate_distribution(masses)


def test_validation_renormalises():
    d = validate_distribution([0.3, 0.7 + 5e-10])
    assert math.fsum(d.masses) == pytest.approx(1.0, abs=1e-15)


def test_pair_errors():
    with pytest.raises(SupportMismatch):
        pair_from_masses([0.5, 0.5], [1.0, 0.0])
    with pytest.raises(AlphabetSizeMismatch):
        make_pair(validate_distribution([0.5, 0.5]), validate_distribution([0.2, 0.3, 0.5]))


def test_shared_zero_symbol_is_dropped():
    pair = pair_from_masses([0.5, 0.5, 0.0], [0.25, 0.75, 0.0])
    assert pair.d == pytest.approx(0.143841036, rel=1e-8)


def test_tilt_values(binary_pair):
    t = tilted(binary_pair, 0.5)
    assert t.masses == pytest.approx([0.3660254038, 0.6339745962], rel=1e-9)
    assert tilt_rate(binary_pair, 0.5) == pytest.approx(0.0363407829, rel=1e-8)
    assert np.array_equal(tilted(binary_pair, 0.0).masses, binary_pair.p.masses)
    assert np.array_equal(tilted(binary_pair, 1.0).masses, binary_pair.q.masses)
    with pytest.raises(TiltOutOfRange):
        tilted(binary_pair, 1.5)


@settings(max_examples=40, deadline=None)
@given(pairs(), st.floats(0.05, 0.95))
def test_tilt_rate_round_trip(pair, t):
    if pair.d < 1e-4:
        return
    r = tilt_rate(pair, t)
    assert solve_tilt_rate(pair, r) == pytest.approx(t, abs=1e-8)


def test_nakagawa(binary_pair):
    assert nakagawa_exponent(binary_pair, 0.0363407829) == pytest.approx(0.0329956813, rel=1e-7)
    rs = [0.005, 0.02, 0.05, 0.1]
    es = [nakagawa_exponent(binary_pair, r) for r in rs]
    assert all(0 < e < binary_pair.d for e in es)
    assert es == sorted(es, reverse=True)
    with pytest.raises(RateOutOfRange):
        nakagawa_exponent(binary_pair, 0.0)
    with pytest.raises(RateOutOfRange):
        nakagawa_exponent(binary_pair, 0.14)


@pytest.mark.parametrize("m, target", [(2, 0.5), (3, 1.0), (15, 1.0), (15, 2.5)])
def test_synthesize_hits_target(m, target):
    pair = synthesize_pair(m, target, seed=3)
    assert pair.size == m
    assert pair.d == pytest.approx(target, rel=1e-9)
    again = synthesize_pair(m, target, seed=3)
    assert again.p == pair.p and again.q == pair.q


def test_synthesize_edges():
    pair = synthesize_pair(4, 0.0)
    assert pair.d == 0
    with pytest.raises(TargetUnreachable):
        synthesize_pair(3, 50.0)
    with pytest.raises(AlphabetTooSmall):
        synthesize_pair(1, 0.5)
