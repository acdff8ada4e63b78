import math

import pytest
from hypothesis import given, settings, strategies as st

from mlcf.cf_core import (
    CFSpec,
    ProjectivePoint,
    approximants,
    determinant,
    equivalence_transform,
    tail,
    value_at,
)
from mlcf.errors import IndexOutOfRange, RecurrenceOverflow, ZeroPartialNumerator, ZeroScaleFactor

FIB = CFSpec.constant(1, 1, b0=1)


def test_fibonacci_ratios():
    t = approximants(FIB, 4)
    assert [value_at(t, n).value() for n in range(5)] == [1, 2, 1.5, 5 / 3, 1.6]
    assert (t.numerator(2), t.denominator(2)) == (3, 2)


def test_initial_wall():
    t = approximants(CFSpec.constant(1, 1, b0=7), 1)
    assert (t.numerator(-1), t.denominator(-1), t.numerator(0), t.denominator(0)) == (1, 0, 7, 1)


def test_degenerate_alternation():
    t = approximants(CFSpec.constant(1, 0), 6)
    pts = [value_at(t, n) for n in range(1, 7)]
    assert [p.is_infinite for p in pts] == [True, False] * 3
    assert all(p.value() == 0 for p in pts[1::2])


def test_r3_tail_at_q_zero_cycles():
    t = approximants(CFSpec.constant(-1, 1), 6)
    vals = [value_at(t, n) for n in range(1, 7)]
    assert vals[0].value() == -1 and vals[1].is_infinite and vals[2].value() == 0
    assert (t.numerator(3), t.denominator(3)) == (0, -1)
    assert all(x.equals(y) for x, y in zip(vals[3:], vals[:3]))


def test_value_at_bounds():
    t = approximants(FIB, 3)
    with pytest.raises(IndexOutOfRange):
        value_at(t, 4)
    with pytest.raises(IndexOutOfRange):
        value_at(t, -2)


def test_zero_numerator_rejected():
    cf = CFSpec(lambda n: 0 if n == 3 else 1, lambda n: 1)
    with pytest.raises(ZeroPartialNumerator):
        approximants(cf, 5)


def test_overflow_without_renormalisation():
    cf = CFSpec.constant(1, 1e200)
    with pytest.raises(RecurrenceOverflow):
        approximants(cf, 5)
    t = approximants(cf, 50, renormalize=True)
    assert t.renormalized and t.scale(50) > 0
    assert value_at(t, 50).value() == pytest.approx(1e-200, rel=1e-12)


def test_renormalised_matches_plain():
    cf = CFSpec(lambda n: 1 + 1 / n, lambda n: 3 + 0.5j)
    plain = approximants(cf, 200)
    scaled = approximants(cf, 200, renormalize=True)
    for n in range(201):
        assert value_at(plain, n).chordal_distance(value_at(scaled, n)) < 1e-14


def test_projective_point():
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0)
    assert ProjectivePoint(2, 4).equals(ProjectivePoint(1, 2))
    assert ProjectivePoint(1, 0).equals(ProjectivePoint.from_value(complex("inf")))
    assert ProjectivePoint(1, 0).chordal_distance(ProjectivePoint(0, 1)) == pytest.approx(1.0)
    assert str(ProjectivePoint(1, 0)) == "inf"


def test_equivalence_identity_and_doubling():
    same = equivalence_transform(FIB, lambda n: 1)
    assert [same.a(n) for n in range(1, 5)] == [1] * 4
    doubled = equivalence_transform(FIB, lambda n: 2)
    assert doubled.a(1) == 2 and doubled.a(2) == 4 and doubled.b(3) == 2
    t1, t2 = approximants(FIB, 20), approximants(doubled, 20)
    assert all(value_at(t1, n).equals(value_at(t2, n)) for n in range(21))


def test_equivalence_rogers_ramanujan_at_q2():
    q = 2.0
    rr = CFSpec(lambda n: q**n, lambda n: 1, b0=1)
    # c(n) = q^-ceil(n/2) turns 1 + K(q^n/1) into 1 + K(1/q^-ceil(n/2)).
    c = lambda n: q ** -((n + 1) // 2)  # noqa: E731
    rrt = equivalence_transform(rr, c)
    for n in range(1, 30):
        assert rrt.a(n) == pytest.approx(1.0, rel=1e-14)
        assert rrt.b(n) == pytest.approx(q ** -((n + 1) // 2), rel=1e-14)
    t1, t2 = approximants(rr, 40, renormalize=True), approximants(rrt, 40)
    assert all(value_at(t1, n).chordal_distance(value_at(t2, n)) < 1e-12 for n in range(41))


def test_zero_scale_factor():
    cf = equivalence_transform(FIB, lambda n: 0 if n == 2 else 1)
    with pytest.raises(ZeroScaleFactor):
        approximants(cf, 3)


def test_tail():
    t0 = tail(CFSpec.constant(1, 1, b0=5), 0)
    assert t0.b0 == 0 and t0.a(1) == 1
    # Fibonacci: value = 1 + 1/(1 + 1/(1 + T_2)), with T_2 the second tail.
    t2 = approximants(tail(FIB, 2), 20)
    full = approximants(FIB, 22)
    for n in range(1, 21):
        x = value_at(t2, n).value()
        assert 1 + 1 / (1 + 1 / (1 + x)) == pytest.approx(value_at(full, n + 2).value(), rel=1e-14)


values = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@settings(max_examples=60)
@given(st.lists(values, min_size=50, max_size=50), st.lists(values, min_size=50, max_size=50), values)
def test_determinant_identity(a, b, b0):
    a = [x if abs(x) > 1e-3 else 1 for x in a]
    cf = CFSpec.from_lists(a, b, b0)
    t = approximants(cf, 50)
    prod = 1 + 0j
    for n in range(1, 51):
        prod *= a[n - 1]
        expected = (-1) ** (n - 1) * prod
        scale = max(abs(t.numerator(n)), abs(t.denominator(n))) * max(abs(t.numerator(n - 1)), abs(t.denominator(n - 1)))
        assert abs(determinant(t, n) - expected) <= 1e-12 * max(abs(expected), scale)


@settings(max_examples=60)
@given(
    st.lists(values, min_size=20, max_size=20),
    st.lists(values, min_size=20, max_size=20),
    st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=10), min_size=20, max_size=20),
)
def test_equivalence_preserves_approximants(a, b, c):
    a = [x if abs(x) > 1e-3 else 1 for x in a]
    cf = CFSpec.from_lists(a, b)
    ct = equivalence_transform(cf, lambda n: c[n - 1])
    t1, t2 = approximants(cf, 20), approximants(ct, 20)
    for n in range(21):
        p, q = value_at(t1, n), value_at(t2, n)
        if math.isfinite(abs(p.P)):
            assert p.equals(q, 1e-10)
