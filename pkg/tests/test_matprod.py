import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mlcf import matprod
from mlcf.errors import DeviationBoundViolated, NoConvergence, NoPeriodFound
from mlcf.matprod import MatrixSeq, companion, inf_norm, min_period, partial_product, product_limit
from mlcf.roots import RootOfUnity


def test_min_period_examples():
    assert min_period(-np.eye(2)) == 2
    assert min_period(np.eye(3)) == 1
    assert min_period(companion([-1, 1])) == 6
    assert min_period(companion([-1, 0])) == 4
    assert min_period(None, roots=[RootOfUnity(1, 4), RootOfUnity(1, 6)]) == 12


def test_min_period_failure():
    with pytest.raises(NoPeriodFound):
        min_period(np.array([[2.0]]), m_max=50)


def test_companion_shape():
    assert np.array_equal(companion([-1, 1]), np.array([[1, -1], [1, 0]]))
    w = RootOfUnity(1, 5).value
    assert np.array_equal(companion([w]), np.array([[w]]))
    M = companion([2, -3, 5])
    # characteristic polynomial t^3 - 5t^2 + 3t - 2
    assert np.allclose(np.poly(M), [1, -5, 3, -2])


def test_constant_sequence_limit_is_identity():
    M = companion([-1, 1])
    res = product_limit(MatrixSeq(lambda n: M, M))
    assert np.allclose(res.F, np.eye(2))
    for j, L in enumerate(res.residue_limits):
        assert np.allclose(L, np.linalg.matrix_power(M, j))


def _swap_seq():
    M = np.array([[0, 1], [1, 0]], dtype=complex)
    return MatrixSeq(lambda n: M + np.diag([3.0**-n, 0]), M, lambda n: 3.0**-n)


def test_swap_example_matches_brute_force():
    seq = _swap_seq()
    F, limits = product_limit(seq, "right", 1e-14)
    assert inf_norm(F - partial_product(seq, 120, "right")) < 1e-12
    Fl, _ = product_limit(seq, "left", 1e-14)
    assert inf_norm(Fl - partial_product(seq, 120, "left")) < 1e-12
    assert inf_norm(F - Fl) > 1e-3  # different matrices, both limits exist


def test_bound_violation_detected():
    M = np.eye(2)
    seq = MatrixSeq(lambda n: M + 1.0 / n, M, lambda n: 0.1 / n)
    with pytest.raises(DeviationBoundViolated):
        product_limit(seq)


def test_non_summable_does_not_converge():
    M = np.array([[0, 1], [1, 0]], dtype=complex)
    seq = MatrixSeq(lambda n: M + np.diag([1.0 / n, 0]), M)
    with pytest.raises(NoConvergence):
        product_limit(seq, k_max=300, tol=1e-14)


def test_observed_block_constant_finite():
    A = matprod.observed_block_constant(_swap_seq())
    assert 0 < A < 10


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(1, 6), (1, 4), (1, 3), (1, 2)]), st.integers(0, 2**32 - 1))
def test_residue_relation_right_and_left(root, seed):
    rng = np.random.default_rng(seed)
    w = RootOfUnity(*root)
    M = companion([-1, (w.value + w.inverse().value)]) if root[1] > 2 else companion([1, 0])
    P = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    seq = MatrixSeq(lambda n: M + P * 2.0**-n, M, lambda n: inf_norm(P) * 2.0**-n)
    for direction in ("right", "left"):
        res = product_limit(seq, direction, 1e-13)
        m = res.period
        for j in range(m):
            brute = partial_product(seq, 60 * m + j, direction)
            assert inf_norm(brute - res.residue_limits[j]) < 1e-9 * max(1, inf_norm(res.F))
