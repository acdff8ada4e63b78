"""Continued fractions whose approximants converge separately modulo ``m``.

The central object is

    G = K_{n>=1} (-w1*w2 + q_n) / (w1 + w2 + p_n)

for distinct roots of unity ``w1, w2`` and absolutely summable ``p, q``.  Its
canonical numerators and denominators converge along every residue class
modulo ``m = lcm(ord w1, ord w2)``; the limits ``A_i, B_i`` obey a two-term
closed form and a determinant identity, and exactly
``r = m / gcd(b - a, m)`` of the ``m`` ratios ``A_i/B_i`` are distinct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import matprod
from .cf_core import CFSpec, ProjectivePoint
from .errors import EqualRoots, MismatchBeyondTolerance, NoConvergence, ZeroPartialNumerator
from .roots import RootOfUnity, common_order, exponents_mod
from .sequences import SPOT_CHECK_TERMS, PerturbationSeq

__all__ = [
    "RootOfUnity",
    "PerturbationSeq",
    "MultiLimitCF",
    "LimitProfile",
    "build",
    "residue_limits",
    "iterate_residue_limits",
    "extend_limits",
    "det_pairing",
    "det_pairing_closed_form",
    "rank",
    "stern_stolz",
    "family_cf",
    "limit_matrix",
    "mpower_closed_form",
    "matrix_sequence",
    "residue_limits_via_matrices",
    "count_distinct",
]

DISTINCT_SEPARATION = 1e-6
DEFAULT_K_MAX = 200_000


@dataclass(frozen=True)
class MultiLimitCF:
    omega1: RootOfUnity
    omega2: RootOfUnity
    p: PerturbationSeq
    q: PerturbationSeq
    m: int
    cf: CFSpec

    @property
    def b0(self) -> complex:
        return self.cf.b0

    @property
    def rank(self) -> int:
        return rank(self.omega1, self.omega2)


@dataclass(frozen=True)
class LimitProfile:
    """Residue-class limits ``A_i = lim P_{mk+i}``, ``B_i = lim Q_{mk+i}``, ``0 <= i < m``."""

    m: int
    A: tuple[complex, ...]
    B: tuple[complex, ...]
    rank: int
    limits: tuple[ProjectivePoint, ...]
    blocks: int = 0
    points: tuple[ProjectivePoint, ...] = field(default=(), repr=False)

    def a(self, i: int) -> complex:
        """``A_i`` extended periodically over all integers."""
        return self.A[i % self.m]

    def b(self, i: int) -> complex:
        return self.B[i % self.m]

    def point(self, i: int) -> ProjectivePoint:
        return ProjectivePoint(self.a(i), self.b(i))

    def pairing(self, i: int, j: int) -> complex:
        """Iterated ``A_i B_j - A_j B_i``."""
        return self.a(i) * self.b(j) - self.a(j) * self.b(i)

    def distinct_count(self, sep: float = DISTINCT_SEPARATION) -> int:
        return count_distinct([self.point(i) for i in range(self.m)], sep)


def count_distinct(points: Sequence[ProjectivePoint], sep: float = DISTINCT_SEPARATION) -> int:
    """Number of clusters among ``points`` at chordal separation ``sep``."""
    reps: list[ProjectivePoint] = []
    for pt in points:
        if all(pt.chordal_distance(r) > sep for r in reps):
            reps.append(pt)
    return len(reps)


def rank(omega1: RootOfUnity, omega2: RootOfUnity) -> int:
    """``m / gcd(b - a, m)`` where ``w1 = e(a/m)``, ``w2 = e(b/m)``."""
    if omega1 == omega2:
        raise EqualRoots(f"roots must be distinct, both are e(2 pi i {omega1})")
    m = common_order(omega1, omega2)
    a, b = sorted(exponents_mod(m, omega1, omega2))
    return m // math.gcd(b - a, m)


def build(
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    p: PerturbationSeq,
    q: PerturbationSeq,
    b0: complex = 0,
) -> MultiLimitCF:
    """Assemble ``b0 + K((-w1 w2 + q_n)/(w1 + w2 + p_n))``.

    ``b0`` shifts every numerator by ``b0 * Q``; it changes no limit structure
    and is only here so fractions like ``1 + K(...)`` can be built directly.
    """
    if omega1 == omega2:
        raise EqualRoots(f"roots must be distinct, both are e(2 pi i {omega1})")
    w1, w2 = omega1.value, omega2.value
    prod = (omega1 * omega2).value
    total = w1 + w2
    for n in range(1, SPOT_CHECK_TERMS + 1):
        if -prod + q(n) == 0:
            raise ZeroPartialNumerator(f"q({n}) equals w1*w2, so partial numerator {n} vanishes")
    p.check()
    q.check()
    cf = CFSpec(a=lambda n: -prod + q(n), b=lambda n: total + p(n), b0=b0)
    return MultiLimitCF(omega1, omega2, p, q, common_order(omega1, omega2), cf)


def iterate_residue_limits(
    cf: CFSpec,
    m: int,
    tol: float = 1e-12,
    k_max: int = DEFAULT_K_MAX,
) -> tuple[list[complex], list[complex], int]:
    """Cauchy-detect ``lim P_{mk+i}`` and ``lim Q_{mk+i}`` for ``0 <= i < m``.

    Works on any fraction; the caller asserts the period ``m``.  Iteration
    stops once the largest change between consecutive blocks of ``m``
    indices stays below ``tol * max(1, block size)`` for three blocks in a
    row, and raises :class:`NoConvergence` after ``k_max`` blocks.
    """
    if m < 1:
        raise ValueError(f"period must be positive, got {m}")
    state = [1 + 0j, complex(cf.b0), 0j, 1 + 0j]  # P(n-1), P(n), Q(n-1), Q(n)
    n = 0

    def advance() -> tuple[complex, complex]:
        nonlocal n
        n += 1
        an = cf.a(n)
        if an == 0:
            raise ZeroPartialNumerator(f"a({n}) = 0 truncates the continued fraction")
        bn = cf.b(n)
        p2, p1, q2, q1 = state
        state[:] = [p1, bn * p1 + an * p2, q1, bn * q1 + an * q2]
        return state[1], state[3]

    # Block k holds indices mk .. mk+m-1; block 0 starts at the wall P(0), Q(0).
    cur = [(state[1], state[3])] + [advance() for _ in range(m - 1)]
    hits = 0
    for k in range(1, k_max + 1):
        prev, cur = cur, [advance() for _ in range(m)]
        size = max(max(abs(p), abs(q)) for p, q in cur)
        if not math.isfinite(size):
            raise NoConvergence(f"canonical numerators overflowed after {n} steps; no residue-class limits mod {m}")
        delta = max(max(abs(p - pp), abs(q - qq)) for (p, q), (pp, qq) in zip(cur, prev))
        hits = hits + 1 if delta < tol * max(1.0, size) else 0
        if hits >= matprod.CONSECUTIVE_HITS:
            return [p for p, _ in cur], [q for _, q in cur], k
    raise NoConvergence(
        f"numerators/denominators did not converge in residue classes mod {m} within {k_max} blocks"
    )


def _profile(m: int, A: Sequence[complex], B: Sequence[complex], r: int, blocks: int) -> LimitProfile:
    points = tuple(ProjectivePoint(a, b) for a, b in zip(A, B))
    limits = tuple(points[j % m] for j in range(1, r + 1))
    return LimitProfile(m, tuple(A), tuple(B), r, limits, blocks, points)


def residue_limits(
    mlcf: MultiLimitCF,
    tol: float = 1e-12,
    k_max: int = DEFAULT_K_MAX,
) -> LimitProfile:
    A, B, blocks = iterate_residue_limits(mlcf.cf, mlcf.m, tol, k_max)
    return _profile(mlcf.m, A, B, mlcf.rank, blocks)


def extend_limits(
    A0: complex,
    A1: complex,
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    i: int,
) -> complex:
    """Continue ``A_0, A_1`` to ``A_i`` by the two-root closed form (same for ``B``)."""
    if omega1 == omega2:
        raise EqualRoots("closed form needs distinct roots")
    w1, w2 = omega1.value, omega2.value
    d = w1 - w2
    return (A1 - w2 * A0) / d * omega1.power_value(i) + (w1 * A0 - A1) / d * omega2.power_value(i)


def _root_difference_quotient(omega1: RootOfUnity, omega2: RootOfUnity, k: int) -> complex:
    """``(w1**k - w2**k) / (w1 - w2)`` with exact exponent reduction."""
    return (omega1.power_value(k) - omega2.power_value(k)) / (omega1.value - omega2.value)


def _product_one_minus(q: PerturbationSeq, unit: complex, tol: float) -> complex:
    """``prod_{n>=1}(1 - q_n/unit)`` for ``|unit| = 1``, truncated so the relative error is below ``tol/10``."""
    N = q.truncation_index(tol / 10, start=1)
    out = 1 + 0j
    for n in range(1, N + 1):
        out *= 1 - q(n) / unit
    return out


def det_pairing_closed_form(
    i: int,
    j: int,
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    q: PerturbationSeq,
    tol: float = 1e-12,
) -> complex:
    """``-(w1 w2)^(j+1) (w1^(i-j) - w2^(i-j))/(w1 - w2) prod(1 - q_n/(w1 w2))``."""
    if omega1 == omega2:
        raise EqualRoots("closed form needs distinct roots")
    w12 = omega1 * omega2
    return -w12.power_value(j + 1) * _root_difference_quotient(omega1, omega2, i - j) * _product_one_minus(q, w12.value, tol)


def det_pairing(
    profile: LimitProfile,
    i: int,
    j: int,
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    q: PerturbationSeq,
    tol: float = 1e-9,
) -> complex:
    """Closed-form ``A_i B_j - A_j B_i``, checked against the iterated profile."""
    closed = det_pairing_closed_form(i, j, omega1, omega2, q, tol)
    iterated = profile.pairing(i, j)
    if abs(closed - iterated) > tol * max(1.0, abs(closed)):
        raise MismatchBeyondTolerance(
            f"determinant pairing ({i},{j}): closed form {closed:.12g} vs iterated {iterated:.12g}"
        )
    return closed


def stern_stolz(
    b: PerturbationSeq,
    a: PerturbationSeq,
    b0: complex = 0,
    tol: float = 1e-10,
    k_max: int = DEFAULT_K_MAX,
) -> LimitProfile:
    """Two-limit profile of ``b0 + K((1 + a_n)/b_n)`` with ``A_1 B_0 - A_0 B_1 = prod(1 + a_n)`` verified."""
    mlcf = build(RootOfUnity(0, 1), RootOfUnity(1, 2), p=b, q=a, b0=b0)
    profile = residue_limits(mlcf, tol, k_max)
    det_pairing(profile, 1, 0, mlcf.omega1, mlcf.omega2, a, tol)
    return profile


def family_cf(
    mth: int,
    a: PerturbationSeq,
    b: PerturbationSeq,
    b0: complex = 0,
) -> MultiLimitCF:
    """``b0 + K((-1 + a_n)/(w + 1/w + b_n))`` with ``w = e(1/mth)``.

    Rank ``mth`` for odd ``mth`` and ``mth/2`` for even; for even ``mth`` the
    limits change sign half a period apart.
    """
    if mth < 3:
        raise ValueError(f"family needs mth >= 3, got {mth}")
    w = RootOfUnity(1, mth)
    return build(w, w.inverse(), p=b, q=a, b0=b0)


def limit_matrix(omega1: RootOfUnity, omega2: RootOfUnity) -> np.ndarray:
    w1, w2 = omega1.value, omega2.value
    return np.array([[w1 + w2, 1], [-w1 * w2, 0]], dtype=complex)


def mpower_closed_form(omega1: RootOfUnity, omega2: RootOfUnity, j: int) -> np.ndarray:
    """Entrywise formula for ``limit_matrix(w1, w2) ** j``."""
    w1, w2 = omega1.value, omega2.value
    s_j1 = _root_difference_quotient(omega1, omega2, j + 1)
    s_j = _root_difference_quotient(omega1, omega2, j)
    bottom_right = (-omega1.power_value(j) * w2 + w1 * omega2.power_value(j)) / (w1 - w2)
    return np.array([[s_j1, s_j], [-w1 * w2 * s_j, bottom_right]], dtype=complex)


def matrix_sequence(mlcf: MultiLimitCF) -> matprod.MatrixSeq:
    """Factors ``D_n = [[w1 + w2 + p_n, 1], [-w1 w2 + q_n, 0]]`` whose right products give the convergents."""
    M = limit_matrix(mlcf.omega1, mlcf.omega2)
    p, q = mlcf.p, mlcf.q

    def D(n: int) -> np.ndarray:
        return M + np.array([[p(n), 0], [q(n), 0]], dtype=complex)

    def bound(n: int) -> float:
        return max(p.bound(n), q.bound(n)) if n >= max(p.cutoff, q.cutoff) else math.inf

    return matprod.MatrixSeq(D, M, bound, mlcf.m)


def residue_limits_via_matrices(mlcf: MultiLimitCF, tol: float = 1e-12, k_max: int = DEFAULT_K_MAX) -> LimitProfile:
    """Independent route: ``[[P_n, P_{n-1}], [Q_n, Q_{n-1}]] = X_0 D_1 ... D_n``."""
    seq = matrix_sequence(mlcf)
    result = matprod.product_limit(seq, "right", tol, k_max)
    X0 = np.array([[mlcf.b0, 1], [1, 0]], dtype=complex)
    A, B = [], []
    for lim in result.residue_limits:
        top = X0 @ lim
        A.append(complex(top[0, 0]))
        B.append(complex(top[1, 0]))
    return _profile(mlcf.m, A, B, mlcf.rank, result.blocks)
