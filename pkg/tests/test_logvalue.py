import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bht.errors import LogDomainError
from bht.logvalue import LogValue, format_sci_log10, log_add_exp, log_sub_exp, parse_sci_log10

finite_logs = st.floats(min_value=-800, max_value=0, allow_nan=False)


@given(finite_logs, finite_logs)
def test_add_matches_linear_sum(a, b):
    got = log_add_exp(a, b)
    want = math.log(math.exp(a) + math.exp(b)) if max(a, b) > -700 else got
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)
    assert got >= max(a, b)


@given(finite_logs, finite_logs)
def test_sub_inverts_add(a, b):
    s = log_add_exp(a, b)
    back = log_sub_exp(s, b)
    if a - b > -10:
        assert back == pytest.approx(a, abs=1e-8)


def test_zero_is_identity():
    assert log_add_exp(-math.inf, -3.0) == -3.0
    assert log_sub_exp(-3.0, -math.inf) == -3.0
    assert log_sub_exp(-3.0, -3.0) == -math.inf
    assert (LogValue.zero() * LogValue.one()).is_zero


def test_sub_rejects_negative_result():
    with pytest.raises(LogDomainError):
        log_sub_exp(-2.0, -1.0)
    with pytest.raises(LogDomainError):
        LogValue(-2.0) - LogValue(-1.0)


def test_arithmetic():
    a, b = LogValue.from_float(0.25), LogValue.from_float(0.5)
    assert (a + b).to_float() == pytest.approx(0.75)
    assert (b - a).to_float() == pytest.approx(0.25)
    assert (a * b).to_float() == pytest.approx(0.125)
    assert LogValue.from_float(0.0).is_zero


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_rejects_invalid(bad):
    with pytest.raises(ValueError):
        LogValue(bad)


def test_subnormal_formatting():
    assert format_sci_log10(math.log10(9.544) - 317) == "9.54400E-317"
    assert LogValue(-1e6).sci().endswith("E-434295")
    assert format_sci_log10(-math.inf) == "0.00000E+00"


def test_mantissa_carry():
    assert format_sci_log10(math.log10(9.9999999)) == "1.00000E+01"


@given(st.floats(min_value=-1e6, max_value=300, allow_nan=False))
def test_sci_round_trip(x):
    back = parse_sci_log10(format_sci_log10(x))
    assert abs(back - x) <= 2.2e-6
