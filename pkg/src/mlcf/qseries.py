"""q-products, Gaussian binomials and the root-of-unity sums F and G.

The sums are over roots of unity ``alpha`` of order ``m``::

    G_k(alpha, i, j, q) = sum_{u=0}^{mk+i} alpha^u (q^{u+1}; q)_j
    F_k(alpha, i, j, q) = sum'_{u=0}^{floor((mk+i)/2)} (q^{u+1}; q)_j (alpha^{2u-i} + alpha^{i-2u})

where the primed sum counts the last term once (not twice) when ``mk+i`` is
even.  Both converge as ``k -> inf`` with explicit geometric error bounds,
which is what every truncation here is built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .cf_core import CFSpec, ProjectivePoint, approximants
from .errors import InvalidInput, NoConvergence, PoleInFormula
from .roots import RootOfUnity

# Keep |q| away from 1 so that truncation depths stay bounded.
Q_MARGIN = 1e-6
# Hard cap on the number of outer terms in the limit series.
J_CAP = 200


@dataclass(frozen=True)
class QParam:
    q: complex

    def __post_init__(self) -> None:
        if not abs(self.q) <= 1 - Q_MARGIN:
            raise InvalidInput(f"|q| must be at most 1 - {Q_MARGIN:g}, got |q| = {abs(self.q)}")

    @property
    def abs(self) -> float:
        return abs(self.q)


QLike = Union[QParam, complex, float]


def _q(q: QLike) -> QParam:
    return q if isinstance(q, QParam) else QParam(complex(q))


def qpochhammer(a: complex, q: QLike, n: int | float | None = None, tol: float = 1e-17) -> complex:
    """``(a; q)_n``; ``n=None`` or ``math.inf`` gives the infinite product.

    The infinite product stops once ``|a q^k| < tol (1 - |q|)``, which bounds
    the neglected factor by roughly ``tol`` in relative terms.
    """
    qq = _q(q).q
    if n is None or n == math.inf:
        aq = abs(qq)
        out = 1 + 0j
        term = complex(a)
        k = 0
        while abs(term) >= tol * (1 - aq):
            out *= 1 - term
            term *= qq
            k += 1
            if k > 10**7:  # unreachable with the |q| margin
                raise NoConvergence("infinite q-product did not truncate")
        return out
    if n < 0 or int(n) != n:
        raise InvalidInput(f"n must be a nonnegative integer or infinity, got {n}")
    out = 1 + 0j
    term = complex(a)
    for _ in range(int(n)):
        out *= 1 - term
        term *= qq
    return out


def gaussian_binomial(n: int, k: int, q: QLike) -> complex:
    """``[n, k]_q``; zero unless ``0 <= k <= n``."""
    if not 0 <= k <= n:
        return 0j
    qq = _q(q).q
    k = min(k, n - k)
    out = 1 + 0j
    for t in range(1, k + 1):
        out *= (1 - qq ** (n - k + t)) / (1 - qq**t)
    return out


@dataclass(frozen=True)
class FSumSpec:
    """Arguments ``(alpha, i, j, q)`` of F and G; ``alpha`` must have order at least 3."""

    omega: RootOfUnity
    i: int
    j: int
    q: QParam

    def __post_init__(self) -> None:
        if self.omega.order < 3:
            raise InvalidInput(f"root must have order m >= 3, got m = {self.omega.order}")
        if self.j < 0:
            raise InvalidInput(f"j must be nonnegative, got {self.j}")
        if not isinstance(self.q, QParam):
            object.__setattr__(self, "q", _q(self.q))

    @property
    def m(self) -> int:
        return self.omega.order

    @property
    def canonical_i(self) -> int:
        return self.i % self.m

    def canonical(self) -> FSumSpec:
        return FSumSpec(self.omega, self.canonical_i, self.j, self.q)


def _shifted_poch(q: complex, u: int, j: int) -> complex:
    """``(q^{u+1}; q)_j``."""
    out = 1 + 0j
    for t in range(j):
        out *= 1 - q ** (u + 1 + t)
    return out


def G_partial(spec: FSumSpec, k: int) -> complex:
    top = spec.m * k + spec.i
    if top < 0:
        raise InvalidInput(f"mk + i must be nonnegative, got {top}")
    q = spec.q.q
    return sum(spec.omega.power_value(u) * _shifted_poch(q, u, spec.j) for u in range(top + 1))


def G_tail_bound(spec: FSumSpec, k: int) -> float:
    """Bound for ``|G - G_k|`` from ``|G_{k+1} - G_k| <= m 2^j |q|^{mk+i}``."""
    aq, m = spec.q.abs, spec.m
    return m * 2.0**spec.j * aq ** (m * k + spec.i) / (1 - aq**m)


def G_limit(spec: FSumSpec, tol: float = 1e-12) -> complex:
    k = max(0, -(spec.i // spec.m))
    while G_tail_bound(spec, k) >= tol:
        k += 1
    return G_partial(spec, k)


def primed_terms(top: int) -> list[tuple[int, float]]:
    """``(u, weight)`` pairs of the primed sum ``sum'_{u=0}^{floor(top/2)}``.

    Every weight is 1 except the last when ``top`` is even, which is 1/2.
    A negative ``top`` gives the empty sum.
    """
    if top < 0:
        return []
    last = top // 2
    return [(u, 0.5 if (top % 2 == 0 and u == last) else 1.0) for u in range(last + 1)]


def F_partial(spec: FSumSpec, k: int) -> complex:
    """``F_k`` with the given ``i`` taken literally; ``mk + i < 0`` is the empty sum."""
    q, i = spec.q.q, spec.i
    total = 0j
    for u, w in primed_terms(spec.m * k + i):
        pair = spec.omega.power_value(2 * u - i) + spec.omega.power_value(i - 2 * u)
        total += w * _shifted_poch(q, u, spec.j) * pair
    return total


def F_tail_bound(spec: FSumSpec, k: int) -> float:
    """``m 2^j |q|^{(mk+i)/2} / (1 - |q|^{m/2})`` bounding ``|F - F_k|``."""
    aq, m = spec.q.abs, spec.m
    return m * 2.0**spec.j * aq ** ((m * k + spec.i) / 2) / (1 - aq ** (m / 2))


def F_majorant(spec: FSumSpec) -> float:
    """``2^j (|i| + 2 + m |q|^{i/2} / (1 - |q|^{m/2}))`` bounding ``|F|``, at the canonical ``i``."""
    aq, m, i = spec.q.abs, spec.m, spec.canonical_i
    return 2.0**spec.j * (abs(i) + 2 + m * aq ** (i / 2) / (1 - aq ** (m / 2)))


def F_truncation_index(spec: FSumSpec, tol: float) -> int:
    """Least ``k`` for which the tail bound at the canonical ``i`` is below ``tol``."""
    c = spec.canonical()
    k = 0
    while F_tail_bound(c, k) >= tol:
        k += 1
    return k


def F_limit(spec: FSumSpec, tol: float = 1e-12) -> complex:
    c = spec.canonical()
    return F_partial(c, F_truncation_index(c, tol))


def pn_sum(omega: RootOfUnity, N: int, q: QLike) -> complex:
    """``sum_{r+j+s+1=N} q^{j(j+1)/2} omega^{r-s} [j+r, j][j+s, j]``."""
    return _triple_sum(omega, N - 1, q, lambda j: j * (j + 1) // 2)


def qn_sum(omega: RootOfUnity, N: int, q: QLike) -> complex:
    """``pn_sum`` minus ``sum_{r+j+s+2=N} q^{j(j+3)/2} omega^{r-s} [j+r, j][j+s, j]``."""
    return pn_sum(omega, N, q) - _triple_sum(omega, N - 2, q, lambda j: j * (j + 3) // 2)


def _triple_sum(omega: RootOfUnity, total: int, q: QLike, expo) -> complex:
    if total < 0:
        return 0j
    qq = _q(q)
    out = 0j
    for j in range(total + 1):
        weight = qq.q ** expo(j)
        for r in range(total - j + 1):
            s = total - j - r
            out += weight * omega.power_value(r - s) * gaussian_binomial(j + r, j, qq) * gaussian_binomial(j + s, j, qq)
    return out


def recurrence_PQ(omega: RootOfUnity, N: int, q: QLike) -> tuple[list[complex], list[complex]]:
    """``P_0..P_N`` and ``Q_0..Q_N`` from ``X_n = (omega + 1/omega + q^{n-1}) X_{n-1} - X_{n-2}``."""
    qq = _q(q).q
    c = omega.value + omega.inverse().value
    P, Q = [0j, 1 + 0j], [1 + 0j, 1 + 0j]
    for n in range(2, N + 1):
        b = c + qq ** (n - 1)
        P.append(b * P[-1] - P[-2])
        Q.append(b * Q[-1] - Q[-2])
    return P[: N + 1], Q[: N + 1]


def _outer_terms(omega: RootOfUnity, q: QParam, tol: float) -> int:
    """Number ``J`` of outer terms so the neglected tail of either limit series is below ``tol / 2``.

    With ``T_j = |q|^{j(j+1)/2} 2^j C / |(q;q)_j|^2`` (``C`` the largest
    majorant constant over canonical ``i``) the ratio ``T_{j+1}/T_j`` is at
    most ``rho_j = 2|q|^{j+1}/(1-|q|^{j+1})^2``, which decreases in ``j``.
    Once ``rho_J < 1`` the tail is at most ``T_J / (1 - rho_J)``.
    """
    m, aq = omega.order, q.abs
    C = (m - 1) + 2 + m / (1 - aq ** (m / 2))
    poch = 1.0  # lower bound prod (1 - |q|^t) for |(q;q)_j|
    for J in range(J_CAP + 1):
        T = aq ** (J * (J + 1) / 2) * 2.0**J * C / poch**2
        rho = 2 * aq ** (J + 1) / (1 - aq ** (J + 1)) ** 2
        if rho < 1 and T / (1 - rho) < tol / 2:
            return J
        poch *= 1 - aq ** (J + 1)
    raise NoConvergence(f"limit series needs more than {J_CAP} outer terms at |q| = {aq}")


def _limit_series(omega: RootOfUnity, i: int, q: QLike, tol: float, shift: int, expo) -> complex:
    qq = _q(q)
    J = max(_outer_terms(omega, qq, tol), 1)
    out = 0j
    qpoch = 1 + 0j
    for j in range(J):
        if j:
            qpoch *= 1 - qq.q**j
        weight = qq.q ** expo(j) / qpoch**2
        # Each inner limit gets an equal share of the remaining tol / 2.
        inner_tol = tol / (2 * J * max(abs(weight), 1e-300))
        out += weight * F_limit(FSumSpec(omega, i - j - shift, j, qq), min(inner_tol, 1.0))
    return out


def _check_i(omega: RootOfUnity, i: int) -> None:
    if omega.order < 3:
        raise InvalidInput(f"root must have order m >= 3, got m = {omega.order}")
    if not 1 <= i <= omega.order:
        raise InvalidInput(f"i must lie in 1..{omega.order}, got {i}")


def limit_P(omega: RootOfUnity, i: int, q: QLike, tol: float = 1e-12) -> complex:
    """``lim_k P_{mk+i} = sum_j q^{j(j+1)/2} / (q;q)_j^2 F(omega, i-j-1, j, q)``."""
    _check_i(omega, i)
    return _limit_series(omega, i, q, tol, 1, lambda j: j * (j + 1) // 2)


def limit_Q(omega: RootOfUnity, i: int, q: QLike, tol: float = 1e-12) -> complex:
    """``lim_k Q_{mk+i}``: ``limit_P`` minus ``sum_j q^{j(j+3)/2} / (q;q)_j^2 F(omega, i-j-2, j, q)``."""
    _check_i(omega, i)
    return limit_P(omega, i, q, tol / 2) - _limit_series(omega, i, q, tol / 2, 2, lambda j: j * (j + 3) // 2)


def ramanujan_general_limit(mth: int, i: int, q: QLike, tol: float = 1e-12) -> ProjectivePoint:
    """Limit along ``mk + i`` of ``1/(c+q) - 1/(c+q^2) - ...`` with ``c = omega + 1/omega``, ``omega = e(1/m)``.

    Returned projectively since the denominator series may vanish.
    """
    omega = RootOfUnity.primitive(mth)
    _check_i(omega, i)
    num = _limit_series(omega, i, q, tol, 2, lambda j: j * (j + 3) // 2)
    den = _limit_series(omega, i, q, tol, 1, lambda j: j * (j + 1) // 2)
    if num == 0 and den == 0:
        raise PoleInFormula("numerator and denominator series both vanish")
    return ProjectivePoint(num, den)


def ramanujan_three_limit_rhs(q: QLike, n: int, a: complex = 0) -> complex:
    """``-w^2 (Omega - w^{n+1}) / (Omega - w^{n-1}) (q^2;q^3)_inf / (q;q^3)_inf`` with ``w = e(1/3)``.

    ``Omega = (1 - a w^2)/(1 - a w) (w^2 q; q)_inf / (w q; q)_inf``.
    """
    qq = _q(q).q
    w = RootOfUnity(1, 3)
    w1, w2 = w.value, w.power_value(2)
    if abs(1 - a * w1) < 1e-15:
        raise PoleInFormula("1 - a w vanishes in Omega")
    den_prod = qpochhammer(w1 * qq, qq)
    if den_prod == 0:
        raise PoleInFormula("(w q; q)_inf vanishes")
    omega_ = (1 - a * w2) / (1 - a * w1) * qpochhammer(w2 * qq, qq) / den_prod
    den = omega_ - w.power_value(n - 1)
    if abs(den) < 1e-14 * max(1.0, abs(omega_)):
        raise PoleInFormula(f"Omega = w^{n - 1}; the right side has a pole")
    q3 = qq**3
    ratio = qpochhammer(qq * qq, q3) / qpochhammer(qq, q3)
    return -w2 * (omega_ - w.power_value(n + 1)) / den * ratio


def three_limit_lhs_cf(q: QLike, a: complex = 0) -> Callable[[int], complex]:
    """Approximants of ``1/1 - 1/(1+q) - 1/(1+q^2) - ...``; index ``n+1`` ends in ``q^n``.

    Returns a function of ``N`` producing the value with ``a`` added to the
    last partial denominator.
    """
    qq = _q(q).q
    cf = CFSpec(a=lambda n: 1 if n == 1 else -1, b=lambda n: 1 if n == 1 else 1 + qq ** (n - 1))

    def value(N: int) -> complex:
        t = approximants(cf, N)
        return (t.numerator(N) + a * t.numerator(N - 1)) / (t.denominator(N) + a * t.denominator(N - 1))

    return value


__all__ = [
    "QParam",
    "qpochhammer",
    "gaussian_binomial",
    "FSumSpec",
    "G_partial",
    "G_limit",
    "F_partial",
    "F_limit",
    "pn_sum",
    "qn_sum",
    "limit_P",
    "limit_Q",
    "ramanujan_general_limit",
    "ramanujan_three_limit_rhs",
]
