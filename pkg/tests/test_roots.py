import cmath
import math

import pytest
from hypothesis import given, strategies as st

from mlcf.roots import RootOfUnity, common_order, exponents_mod, power_table


def test_reduction_and_wrap():
    assert RootOfUnity(2, 12) == RootOfUnity(1, 6)
    assert RootOfUnity(-1, 6) == RootOfUnity(5, 6)
    assert RootOfUnity(7, 7) == RootOfUnity(0, 1)
    assert RootOfUnity(0, 5).order == 1


def test_parse_and_str():
    assert RootOfUnity.parse("1/6") == RootOfUnity(1, 6)
    assert RootOfUnity.parse("-1/6") == RootOfUnity(5, 6)
    assert RootOfUnity.parse("0") == RootOfUnity(0, 1)
    assert str(RootOfUnity(5, 6)) == "5/6"


def test_axis_values_are_exact():
    assert RootOfUnity(1, 2).value == -1
    assert RootOfUnity(1, 4).value == 1j
    assert RootOfUnity(3, 4).value == -1j
    assert RootOfUnity(0).value == 1


def test_common_order_and_exponents():
    assert common_order(RootOfUnity(1, 6), RootOfUnity(5, 6)) == 6
    assert common_order(RootOfUnity(1, 4), RootOfUnity(1, 6)) == 12
    assert exponents_mod(12, RootOfUnity(1, 4), RootOfUnity(1, 6)) == [3, 2]
    with pytest.raises(ValueError):
        exponents_mod(5, RootOfUnity(1, 2))


def test_power_table_sums_to_zero():
    for m in range(2, 13):
        assert abs(sum(power_table(RootOfUnity(1, m)))) < 1e-14


@given(st.integers(-50, 50), st.integers(1, 40), st.integers(-200, 200))
def test_power_value_matches_exponential(num, den, k):
    w = RootOfUnity(num, den)
    # Reduce the angle first so the oracle itself is accurate.
    expected = cmath.exp(2j * math.pi * ((num * k) % den) / den)
    assert abs(w.power_value(k) - expected) < 1e-12
    assert abs(w.value) == pytest.approx(1.0, abs=1e-15)


@given(st.integers(0, 30), st.integers(1, 30), st.integers(0, 30), st.integers(1, 30))
def test_multiplication_adds_turns(a, m, b, n):
    x, y = RootOfUnity(a, m), RootOfUnity(b, n)
    assert abs((x * y).value - x.value * y.value) < 1e-12
    assert (x * x.inverse()) == RootOfUnity(0)
    assert (x ** x.order) == RootOfUnity(0)
