"""Continued fractions with prescribed approximants, after Daniel Bernoulli.

Any sequence ``K_0, K_1, ...`` with ``K_i != K_{i-1}`` is the approximant
sequence of

    K_0 + (K_1-K_0)/1 + (K_1-K_2)/(K_2-K_0) + ... + (K_{n-2}-K_{n-3})(K_{n-1}-K_n)/(K_n-K_{n-2}) + ...

so a sequence built from ``m`` interleaved convergent sequences gives a
continued fraction with ``m`` limits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cf_core import CFSpec
from .errors import (
    DegenerateLimit,
    EqualConsecutiveTerms,
    FunctionalEquationViolated,
    GBoundViolated,
    IndexOutOfRange,
    InvalidInput,
    PoleInFormula,
)

AnalyticFunction = Callable[[complex], complex]

# Residual allowed in F + G + wFG = 1 at sampled points.
FG_TOL = 1e-10
POLE_TOL = 1e-14


@dataclass
class TargetSequence:
    """``K(i)`` for ``i >= 0``; values are cached and ``K(i) != K(i-1)`` is checked on first use."""

    K: Callable[[int], complex]
    _cache: dict[int, complex] = field(default_factory=dict, repr=False)

    @classmethod
    def from_list(cls, values: Sequence[complex]) -> TargetSequence:
        vals = tuple(complex(v) for v in values)

        def K(i: int) -> complex:
            if not 0 <= i < len(vals):
                raise IndexOutOfRange(f"K({i}) outside 0..{len(vals) - 1}")
            return vals[i]

        return cls(K)

    def __call__(self, i: int) -> complex:
        if i in self._cache:
            return self._cache[i]
        if i < 0:
            raise IndexOutOfRange(f"K({i}) has negative index")
        v = complex(self.K(i))
        if i >= 1 and v == self(i - 1):
            raise EqualConsecutiveTerms(f"K({i}) = K({i - 1}) = {v}")
        self._cache[i] = v
        return v


def bernoulli_cf(K: TargetSequence, N: int) -> CFSpec:
    """The continued fraction whose ``n``-th approximant is ``K(n)`` for ``0 <= n <= N``."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    for i in range(N + 1):
        K(i)  # validates consecutive terms

    def check(n: int) -> None:
        if not 1 <= n <= N:
            raise IndexOutOfRange(f"partial quotient {n} outside 1..{N}")

    def a(n: int) -> complex:
        check(n)
        if n == 1:
            return K(1) - K(0)
        if n == 2:
            return K(1) - K(2)
        return (K(n - 2) - K(n - 3)) * (K(n - 1) - K(n))

    def b(n: int) -> complex:
        check(n)
        if n == 1:
            return 1
        return K(n) - K(n - 2)

    return CFSpec(a, b, K(0))


@dataclass(frozen=True)
class ConvergentSequence:
    """``terms(n)`` for ``n >= 1`` together with its limit."""

    terms: Callable[[int], complex]
    limit: complex

    @classmethod
    def constant(cls, v: complex) -> ConvergentSequence:
        return cls(lambda n: v, v)


def rational_multi_limit(
    a: ConvergentSequence,
    c: ConvergentSequence,
    d: ConvergentSequence,
    e: ConvergentSequence,
    m: int,
    N: int,
) -> tuple[CFSpec, list[complex]]:
    """Bernoulli fraction of ``K_{(n-1)m+j} = (d_n + j e_n)/(a_n + j c_n)`` and its ``m`` limits."""
    if m < 2:
        raise InvalidInput(f"m must be at least 2, got {m}")
    # Only a + jc != 0 and pairwise distinct limits matter; a zero limit of d
    # (say) still gives m distinct values.
    limits = []
    for j in range(m):
        den = a.limit + j * c.limit
        if abs(den) < POLE_TOL:
            raise DegenerateLimit(f"a + {j}c = 0")
        limits.append((d.limit + j * e.limit) / den)
    for i in range(m):
        for j in range(i):
            if abs(limits[i] - limits[j]) <= 1e-12 * max(1.0, abs(limits[i])):
                raise DegenerateLimit(f"limits {j} and {i} coincide ({limits[i]})")

    def K(idx: int) -> complex:
        n, j = divmod(idx, m)
        n += 1
        den = a.terms(n) + j * c.terms(n)
        if den == 0:
            raise DegenerateLimit(f"a_{n} + {j} c_{n} = 0")
        return (d.terms(n) + j * e.terms(n)) / den

    return bernoulli_cf(TargetSequence(K), N), limits


def check_half_bound(G: AnalyticFunction, radius: float = 0.99, rings: int = 8, spokes: int = 8) -> None:
    """Sample ``|G| < 1/2`` on ``rings * spokes`` points of the disc ``|z| <= radius``."""
    for r in range(1, rings + 1):
        rho = radius * r / rings
        for s in range(spokes):
            w = rho * cmath.exp(2j * math.pi * (s + 0.5 * (r % 2)) / spokes)
            g = G(w)
            if not abs(g) < 0.5:
                raise GBoundViolated(f"|G({w:.4g})| = {abs(g):.6g} is not below 1/2")


def theorem4_cf(G: AnalyticFunction, z: complex, m: int, N: int) -> tuple[CFSpec, list[complex]]:
    """Continued fraction with the ``m`` limits ``G(0) - G(z) + i``.

    It is Bernoulli's fraction for ``K_i = G(z^{i+1}) - G(z) + (i mod m)``,
    written with ``gamma_n = 1 - m`` for ``n = 0 (mod m)`` and ``1`` otherwise.
    """
    if m < 2:
        raise InvalidInput(f"m must be at least 2, got {m}")
    if not abs(z) < 1:
        raise InvalidInput(f"need |z| < 1, got |z| = {abs(z)}")
    check_half_bound(G)
    Gz: dict[int, complex] = {}

    def g(k: int) -> complex:  # G(z^k)
        if k not in Gz:
            Gz[k] = complex(G(z**k))
        return Gz[k]

    def gamma(n: int) -> int:
        return 1 - m if n % m == 0 else 1

    def a(n: int) -> complex:
        if n == 1:
            return g(2) - g(1) + gamma(1)
        if n == 2:
            return -(g(3) - g(2) + gamma(2))
        return -(g(n + 1) - g(n) + gamma(n)) * (g(n - 1) - g(n - 2) + gamma(n - 2))

    def b(n: int) -> complex:
        if n == 1:
            return 1
        return g(n + 1) - g(n - 1) + gamma(n) + gamma(n - 1)

    cf = CFSpec(a, b, 0)
    for n in range(1, N + 1):
        if a(n) == 0:
            raise EqualConsecutiveTerms(f"K({n}) = K({n - 1})")
    g0 = complex(G(0))
    return cf, [g0 - g(1) + i for i in range(m)]


def theorem4_targets(G: AnalyticFunction, z: complex, m: int) -> TargetSequence:
    """``K_i = G(z^{i+1}) - G(z) + (i mod m)``."""
    gz = complex(G(z))
    return TargetSequence(lambda i: complex(G(z ** (i + 1))) - gz + (i % m))


def _fg_pair(G: AnalyticFunction, F: AnalyticFunction | None) -> AnalyticFunction:
    if F is not None:
        return F

    def derived(w: complex) -> complex:
        den = 1 + w * G(w)
        if abs(den) < POLE_TOL:
            raise PoleInFormula(f"1 + wG(w) = 0 at w = {w}; F has a pole")
        return (1 - G(w)) / den

    return derived


def three_limits(G: AnalyticFunction, z: complex) -> tuple[complex, complex, complex]:
    """``(L0, L1, L2)`` in terms of ``G(0)`` and ``G(z)``."""
    g0, gz = complex(G(0)), complex(G(z))
    d0 = 2 * z - z * gz - 1
    t1 = z + z * g0 - 1
    d1 = t1 * (1 - gz) + (z - 1) * g0
    t2 = 1 - z * g0
    d2 = t2 * (1 - gz) + (z - 1) * (1 - g0)
    for name, d in (("L0", d0), ("L1", d1), ("L2", d2)):
        if abs(d) < POLE_TOL:
            raise PoleInFormula(f"denominator of {name} vanishes at z = {z}")
    return z / d0, t1 / d1, t2 / d2


def three_limit_analytic(
    G: AnalyticFunction,
    z: complex,
    N: int,
    F: AnalyticFunction | None = None,
) -> tuple[CFSpec, complex, complex, complex]:
    """``1/1 - 1/(1+zF(z)) - 1/(1+zG(z)) - 1/(F(z)+G(z^2)) - 1/(1+z^2F(z^2)) - ...``.

    ``F`` defaults to ``(1 - G)/(1 + wG)``; a supplied ``F`` must satisfy
    ``F + G + wFG = 1`` at ``w = z^n`` for ``n`` up to the ``N`` terms checked.
    The approximants at indices ``0, 1, 2 (mod 3)`` tend to ``L0, L1, L2``.
    """
    if not abs(z) < 1:
        raise InvalidInput(f"need |z| < 1, got |z| = {abs(z)}")
    Fn = _fg_pair(G, F)
    cache: dict[tuple[str, int], complex] = {}

    def val(kind: str, k: int) -> complex:
        key = (kind, k)
        if key not in cache:
            cache[key] = complex((Fn if kind == "F" else G)(z**k))
        return cache[key]

    def b(n: int) -> complex:
        if n == 1:
            return 1
        k, r = divmod(n + 1, 3)  # n = 3k - 1, 3k, 3k + 1
        if r == 0:
            return 1 + z**k * val("F", k)
        if r == 1:
            return 1 + z**k * val("G", k)
        return val("F", k) + val("G", k + 1)

    cf = CFSpec(lambda n: 1 if n == 1 else -1, b, 0)
    for k in range(1, N // 3 + 2):
        w = z**k
        fw, gw = val("F", k), val("G", k)
        if F is not None:
            res = abs(fw + gw + w * fw * gw - 1)
            if res > FG_TOL:
                raise FunctionalEquationViolated(f"F + G + wFG - 1 = {res:.3e} at w = z^{k}")
    L0, L1, L2 = three_limits(G, z)
    return cf, L0, L1, L2


def three_limit_simplified(G: AnalyticFunction, z: complex) -> CFSpec:
    """The equivalent form with ``F`` eliminated (``G_n = G(z^n)``).

    ``1/1 - (1+zG_1)/(1+z) - 1/1 - 1/(1-G_1+(1+zG_1)G_2) - (1+zG_1)(1+z^2G_2)/(1+z^2) - ...``
    """
    cache: dict[int, complex] = {}

    def g(k: int) -> complex:
        if k not in cache:
            cache[k] = complex(G(z**k))
        return cache[k]

    def u(k: int) -> complex:  # 1 + z^k G_k
        return 1 + z**k * g(k)

    def a(n: int) -> complex:
        if n == 1:
            return 1
        k, r = divmod(n + 1, 3)
        if r == 0:
            return -u(1) if k == 1 else -u(k - 1) * u(k)
        return -1

    def b(n: int) -> complex:
        if n == 1:
            return 1
        k, r = divmod(n + 1, 3)
        if r == 0:
            return 1 + z**k
        if r == 1:
            return 1
        return 1 - g(k) + u(k) * g(k + 1)

    return CFSpec(a, b, 0)
