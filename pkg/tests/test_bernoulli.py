import pytest
from hypothesis import given, settings, strategies as st

from mlcf import bernoulli as bn
from mlcf.bernoulli import ConvergentSequence as CS
from mlcf.cf_core import ProjectivePoint, approximants, value_at
from mlcf.errors import (
    DegenerateLimit,
    EqualConsecutiveTerms,
    FunctionalEquationViolated,
    GBoundViolated,
    IndexOutOfRange,
    PoleInFormula,
)


def _residue_values(cf, m, N):
    t = approximants(cf, N, renormalize=True)
    return [value_at(t, N - ((N - r) % m)).value() for r in range(m)]


def test_small_target():
    K = bn.TargetSequence.from_list([1, 2, 3])
    t = approximants(bn.bernoulli_cf(K, 2), 2)
    assert [value_at(t, n).value() for n in range(3)] == [1, 2, 3]


def test_linear_target_coefficients():
    cf = bn.bernoulli_cf(bn.TargetSequence(lambda i: i), 10)
    for n in range(3, 11):
        assert cf.a(n) == -1 and cf.b(n) == 2


def test_equal_consecutive_terms():
    with pytest.raises(EqualConsecutiveTerms):
        bn.bernoulli_cf(bn.TargetSequence.from_list([0, 0, 1]), 2)


def test_index_out_of_range():
    cf = bn.bernoulli_cf(bn.TargetSequence.from_list([1, 2, 3]), 2)
    with pytest.raises(IndexOutOfRange):
        cf.a(3)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=3, max_size=60))
def test_reproduces_targets(values):
    if any(values[i] == values[i - 1] for i in range(1, len(values))):
        return
    N = len(values) - 1
    t = approximants(bn.bernoulli_cf(bn.TargetSequence.from_list(values), N), N, renormalize=True)
    for n, v in enumerate(values):
        assert value_at(t, n).chordal_distance(ProjectivePoint(v, 1)) < 1e-10


def test_rational_constant_generators():
    cf, limits = bn.rational_multi_limit(CS.constant(1), CS.constant(1), CS.constant(0), CS.constant(1), 3, 10)
    assert limits == pytest.approx([0, 0.5, 2 / 3])
    t = approximants(cf, 10)
    assert [value_at(t, n).value() for n in range(3)] == pytest.approx([0, 0.5, 2 / 3])


def test_rational_iterated_limits():
    a = CS(lambda n: 1 + 1 / (n + 1), 1)
    cf, limits = bn.rational_multi_limit(a, CS.constant(1), CS.constant(2), CS.constant(1), 2, 4000)
    assert limits == pytest.approx([2, 1.5])
    got = _residue_values(cf, 2, 4000)
    assert all(abs(g - l) < 1e-3 for g, l in zip(got, limits))  # 1/n convergence


def test_rational_geometric_generators():
    a = CS(lambda n: 1 + 2.0**-n, 1)
    d = CS(lambda n: 3 - 3.0**-n, 3)
    cf, limits = bn.rational_multi_limit(a, CS.constant(2), d, CS.constant(1), 4, 400)
    got = _residue_values(cf, 4, 400)
    assert max(abs(g - l) for g, l in zip(got, limits)) < 1e-9
    assert len({round(x.real, 9) for x in limits}) == 4


def test_rational_degenerate():
    with pytest.raises(DegenerateLimit):
        bn.rational_multi_limit(CS.constant(-1), CS.constant(1), CS.constant(1), CS.constant(1), 3, 10)
    # e = d gives (1 + j)/(a + jc); equal limits when a = c
    with pytest.raises(DegenerateLimit):
        bn.rational_multi_limit(CS.constant(2), CS.constant(2), CS.constant(1), CS.constant(1), 2, 10)


def test_rational_equal_consecutive():
    a = CS(lambda n: 1 + 1 / n, 1)
    with pytest.raises(EqualConsecutiveTerms):
        bn.rational_multi_limit(a, CS.constant(1), CS.constant(2), CS.constant(1), 2, 20)


def test_theorem4_examples():
    _, limits = bn.theorem4_cf(lambda w: w / 4, 0.5, 2, 10)
    assert limits == pytest.approx([-0.125, 0.875])
    _, limits = bn.theorem4_cf(lambda w: 0, 0.7, 3, 10)
    assert limits == [0, 1, 2]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_theorem4_iterated(m):
    G = lambda w: w / 4  # noqa: E731
    cf, limits = bn.theorem4_cf(G, 0.3, m, 80)
    got = _residue_values(cf, m, 80)
    for r in range(m):
        # approximant n is K_n = G(z^{n+1}) - G(z) + (n mod m)
        assert abs(got[r] - limits[r]) < 1e-9


def test_theorem4_matches_bernoulli_form():
    G = lambda w: 0.3 * w * w - 0.1 * w  # noqa: E731
    z, m = 0.6 - 0.2j, 3
    cf, _ = bn.theorem4_cf(G, z, m, 30)
    K = bn.theorem4_targets(G, z, m)
    t = approximants(cf, 30)
    for n in range(31):
        assert abs(value_at(t, n).value() - K(n)) < 1e-12


def test_theorem4_bound():
    with pytest.raises(GBoundViolated):
        bn.theorem4_cf(lambda w: w, 0.5, 2, 10)


def test_three_limits_zero_G():
    z = 0.3
    cf, L0, L1, L2 = bn.three_limit_analytic(lambda w: 0, z, 90)
    assert (L0, L1, L2) == pytest.approx((z / (2 * z - 1), 1, 1 / z))
    got = _residue_values(cf, 3, 90)
    assert got == pytest.approx([L0, L1, L2], abs=1e-12)


@pytest.mark.parametrize("z", [0.2, 0.3, 0.25 + 0.3j])
def test_three_limits_iterated(z):
    G = lambda w: w / 3  # noqa: E731
    cf, *L = bn.three_limit_analytic(G, z, 120)
    got = _residue_values(cf, 3, 120)
    assert max(abs(g - l) for g, l in zip(got, L)) < 1e-8


def test_three_limit_simplified_equivalent():
    G = lambda w: w / 3 + 0.1  # noqa: E731
    z = 0.4
    a, _, _, _ = bn.three_limit_analytic(G, z, 60)
    b = bn.three_limit_simplified(G, z)
    ta, tb = approximants(a, 60), approximants(b, 60)
    for n in range(61):
        assert value_at(ta, n).chordal_distance(value_at(tb, n)) < 1e-12


def test_three_limit_pole():
    with pytest.raises(PoleInFormula):
        bn.three_limit_analytic(lambda w: 0, 0.5, 30)


def test_three_limit_bad_F():
    with pytest.raises(FunctionalEquationViolated):
        bn.three_limit_analytic(lambda w: w / 3, 0.3, 30, F=lambda w: 1 - w / 3)


def test_three_limit_supplied_F():
    G = lambda w: w / 3  # noqa: E731
    F = lambda w: (1 - G(w)) / (1 + w * G(w))  # noqa: E731
    cf, *L = bn.three_limit_analytic(G, 0.3, 30, F=F)
    assert L == pytest.approx(list(bn.three_limits(G, 0.3)))
