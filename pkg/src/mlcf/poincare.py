"""Poincare-type recurrences whose characteristic roots are distinct roots of unity.

For ``x_{n+p} = sum_r a_{n,r} x_{n+r}`` with ``sum_n |a_r - a_{n,r}| < inf`` and
limit polynomial ``t^p - a_{p-1} t^{p-1} - ... - a_0`` having distinct roots
of unity ``alpha_1..alpha_p``, every subsequence ``x_{mn+j}`` converges.  The
limits ``l_j`` satisfy the limit recurrence and are a combination
``l_n = sum c_i alpha_i^n``.

The characteristic roots are inputs, never computed: the period ``m`` must be
exact, and root finding would make it a floating-point guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import matprod
from .errors import (
    EqualRoots,
    InvalidInput,
    MismatchBeyondTolerance,
    NoConvergence,
    RecurrenceOverflow,
    SingularVandermonde,
    ZeroInitialPair,
)
from .roots import RootOfUnity, common_order
from .sequences import PerturbationSeq

DEFAULT_N_MAX = 1_000_000


@dataclass(frozen=True)
class PoincareRecurrence:
    """``x_{n+p} = sum_{r<p} coeff(n, r) x_{n+r}`` started from ``init = (x_0..x_{p-1})``."""

    p: int
    coeff: Callable[[int, int], complex]
    limit_coeff: tuple[complex, ...]
    init: tuple[complex, ...]
    deviation_bound: Callable[[int], float] | None = None

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidInput(f"order must be positive, got {self.p}")
        if len(self.limit_coeff) != self.p or len(self.init) != self.p:
            raise InvalidInput("limit_coeff and init must both have length p")

    def check_bound(self, upto: int = 200) -> None:
        if self.deviation_bound is None:
            return
        for n in range(upto):
            dev = max(abs(self.limit_coeff[r] - self.coeff(n, r)) for r in range(self.p))
            bnd = self.deviation_bound(n)
            if dev > bnd * (1 + 1e-12) + 1e-14:
                raise InvalidInput(f"max_r |a_r - a_(n,r)| = {dev:.3e} at n={n} exceeds declared bound {bnd:.3e}")


@dataclass(frozen=True)
class LimitVector:
    """Residue-class limits ``l_j = lim x_{nm+j}`` and the coefficients ``c`` with ``l_n = sum c_i alpha_i^n``."""

    m: int
    l: tuple[complex, ...]
    c: tuple[complex, ...]
    roots: tuple[RootOfUnity, ...]

    def at(self, n: int) -> complex:
        return self.l[n % self.m]

    def reconstruct(self, n: int) -> complex:
        return sum(ci * a.power_value(n) for ci, a in zip(self.c, self.roots))


def characteristic_coefficients(roots: Sequence[RootOfUnity]) -> list[complex]:
    """``(a_0, ..., a_{p-1})`` with ``prod(t - alpha) = t^p - sum a_r t^r``."""
    poly = np.poly([r.value for r in roots])  # leading coefficient first
    p = len(roots)
    return [complex(-poly[p - r]) for r in range(p)]


def validate_roots(rec: PoincareRecurrence, roots: Sequence[RootOfUnity], tol: float = 1e-12) -> int:
    """Check the roots against the limit polynomial and return the exact period."""
    if len(roots) != rec.p:
        raise InvalidInput(f"expected {rec.p} characteristic roots, got {len(roots)}")
    if len(set(roots)) != len(roots):
        raise EqualRoots("characteristic roots must be distinct")
    expected = characteristic_coefficients(roots)
    worst = max(abs(e - complex(a)) for e, a in zip(expected, rec.limit_coeff))
    if worst > tol:
        raise InvalidInput(f"limit coefficients do not match the given roots (max deviation {worst:.3e})")
    return common_order(*roots)


def iterate(rec: PoincareRecurrence, N: int) -> list[complex]:
    """``x_0 .. x_N`` by direct recurrence."""
    if N < rec.p - 1:
        raise ValueError(f"N must be at least p - 1 = {rec.p - 1}")
    x = [complex(v) for v in rec.init]
    for n in range(N + 1 - rec.p):
        nxt = sum(rec.coeff(n, r) * x[n + r] for r in range(rec.p))
        if not math.isfinite(abs(nxt)):
            raise RecurrenceOverflow(f"x_{n + rec.p} overflowed")
        x.append(nxt)
    return x[: N + 1]


def _vandermonde_coefficients(l: Sequence[complex], roots: Sequence[RootOfUnity]) -> list[complex]:
    p = len(roots)
    V = np.array([[a.power_value(j) for a in roots] for j in range(p)], dtype=complex)
    if np.linalg.cond(V) > 1e12:
        raise SingularVandermonde("Vandermonde matrix of the roots is numerically singular")
    return [complex(c) for c in np.linalg.solve(V, np.array(l[:p], dtype=complex))]


def residue_class_limits(
    rec: PoincareRecurrence,
    roots: Sequence[RootOfUnity],
    tol: float = 1e-12,
    n_max: int = DEFAULT_N_MAX,
) -> LimitVector:
    """Cauchy-detect ``l_j`` for ``0 <= j < m`` and solve for ``c``.

    Both structural identities are verified at ``10 * tol``: the limit
    recurrence over one full period, and the root-power representation for
    every ``j`` (not only the ``p`` used to solve for ``c``).
    """
    m = validate_roots(rec, roots)
    rec.check_bound()
    p = rec.p
    x = [complex(v) for v in rec.init]
    window = list(x)
    n = 0

    def advance() -> complex:
        nonlocal n
        nxt = sum(rec.coeff(n, r) * window[r] for r in range(p))
        window.pop(0)
        window.append(nxt)
        n += 1
        return window[0]

    # window[0] is x_n; block k collects x_{mk} .. x_{mk+m-1}.
    cur = [window[0]] + [advance() for _ in range(m - 1)]
    hits = 0
    for k in range(1, n_max // m + 1):
        prev, cur = cur, [advance() for _ in range(m)]
        size = max(map(abs, cur))
        if not math.isfinite(size):
            raise NoConvergence("recurrence overflowed; no residue-class limits")
        delta = max(abs(a - b) for a, b in zip(cur, prev))
        hits = hits + 1 if delta < tol * max(1.0, size) else 0
        if hits >= matprod.CONSECUTIVE_HITS:
            break
    else:
        raise NoConvergence(f"subsequences mod {m} did not settle within {n_max} terms")

    l = tuple(cur)
    c = tuple(_vandermonde_coefficients(l, roots))
    vec = LimitVector(m, l, c, tuple(roots))
    _verify(vec, rec.limit_coeff, 10 * tol)
    return vec


def limit_recurrence_residual(vec: LimitVector, limit_coeff: Sequence[complex]) -> float:
    p = len(limit_coeff)
    return max(abs(vec.at(n + p) - sum(limit_coeff[r] * vec.at(n + r) for r in range(p))) for n in range(vec.m))


def representation_residual(vec: LimitVector) -> float:
    return max(abs(vec.at(n) - vec.reconstruct(n)) for n in range(vec.m))


def _verify(vec: LimitVector, limit_coeff: Sequence[complex], tol: float) -> None:
    scale = max(1.0, max(map(abs, vec.l)))
    res = limit_recurrence_residual(vec, limit_coeff)
    if res > tol * scale:
        raise MismatchBeyondTolerance(f"limits violate the limit recurrence (residual {res:.3e})")
    res = representation_residual(vec)
    if res > tol * scale:
        raise MismatchBeyondTolerance(f"root-power representation misses the limits (residual {res:.3e})")


def companion_sequence(rec: PoincareRecurrence, roots: Sequence[RootOfUnity] | None = None) -> matprod.MatrixSeq:
    """``D_n`` = companion matrix of ``coeff(n-1, .)`` so that ``X_n = D_n ... D_1 X_0`` (left products)."""
    M = matprod.companion(rec.limit_coeff)

    def D(n: int) -> np.ndarray:
        return matprod.companion([rec.coeff(n - 1, r) for r in range(rec.p)])

    bound = None
    if rec.deviation_bound is not None:
        db = rec.deviation_bound
        bound = lambda n: db(n - 1)  # noqa: E731
    period = common_order(*roots) if roots is not None else None
    return matprod.MatrixSeq(D, M, bound, period)


def limits_via_matrices(
    rec: PoincareRecurrence,
    roots: Sequence[RootOfUnity],
    tol: float = 1e-12,
    k_max: int = 100_000,
) -> list[complex]:
    """``l_j`` read off the last entry of ``M^j F X_0`` with ``X_0 = (x_{p-1}, ..., x_0)``."""
    seq = companion_sequence(rec, roots)
    result = matprod.product_limit(seq, "left", tol, k_max)
    X0 = np.array(list(reversed(rec.init)), dtype=complex)
    return [complex((lim @ X0)[-1]) for lim in result.residue_limits]


def order_two(
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    a: PerturbationSeq,
    b: PerturbationSeq,
    u: complex,
    v: complex,
    tol: float = 1e-12,
    n_max: int = DEFAULT_N_MAX,
) -> LimitVector:
    """Limits of ``x_n = (w1 + w2 + a_{n-1}) x_{n-1} - (w1 w2 + b_n) x_{n-2}``, ``x_0 = u``, ``x_1 = v``.

    The index offset between ``a`` and ``b`` is deliberate.  Besides the
    generic checks this verifies the two-term limit relation, the sign flip
    half a period apart (even ``m``, both roots primitive) and that no two of
    three consecutive limits vanish (adjacent ones only when ``w2 = -w1``).
    """
    if u == 0 and v == 0:
        raise ZeroInitialPair("(u, v) = (0, 0) gives the zero sequence")
    if omega1 == omega2:
        raise EqualRoots("roots must be distinct")
    rec = order_two_recurrence(omega1, omega2, a, b, u, v)
    vec = residue_class_limits(rec, [omega1, omega2], tol, n_max)
    check_order_two(vec, omega1, omega2, tol)
    return vec


def order_two_recurrence(
    omega1: RootOfUnity,
    omega2: RootOfUnity,
    a: PerturbationSeq,
    b: PerturbationSeq,
    u: complex,
    v: complex,
) -> PoincareRecurrence:
    s = omega1.value + omega2.value
    prod = (omega1 * omega2).value

    # x_{n+2} = (s + a_{n+1}) x_{n+1} - (prod + b_{n+2}) x_n
    def coeff(n: int, r: int) -> complex:
        return s + a(n + 1) if r == 1 else -(prod + b(n + 2))

    def bound(n: int) -> float:
        return max(a.bound(n + 1), b.bound(n + 2))

    return PoincareRecurrence(2, coeff, (-prod, s), (complex(u), complex(v)), bound)


def check_order_two(vec: LimitVector, omega1: RootOfUnity, omega2: RootOfUnity, tol: float) -> None:
    m = vec.m
    s = omega1.value + omega2.value
    prod = (omega1 * omega2).value
    scale = max(1.0, max(map(abs, vec.l)))
    for j in range(m):
        res = abs(vec.at(j + 1) - (s * vec.at(j) - prod * vec.at(j - 1)))
        if res > 10 * tol * scale:
            raise MismatchBeyondTolerance(f"two-term limit relation fails at j={j} (residual {res:.3e})")
    if m % 2 == 0 and omega1.order == m and omega2.order == m:
        for j in range(m // 2):
            res = abs(vec.at(m // 2 + j) + vec.at(j))
            if res > 10 * tol * scale:
                raise MismatchBeyondTolerance(f"l_(m/2+{j}) != -l_{j} (residual {res:.3e})")
    # Two adjacent zeros would make every limit vanish.  Zeros at j-1 and j+1
    # only force (w1 + w2) l_j = 0, so that pattern is legitimate when w2 = -w1.
    zero = [abs(vec.at(i)) < tol * scale for i in range(m)]
    for j in range(1, m - 1):
        window = (j - 1, j, j + 1) if abs(s) > tol else (j - 1, j)
        if sum(zero[i] for i in window) > 1 and any(not z for z in zero):
            raise MismatchBeyondTolerance(f"two of l_{j - 1}, l_{j}, l_{j + 1} vanish")
