"""Continued fractions ``b0 + K(a_n / b_n)`` and their canonical recurrences.

Partial numerators and denominators are index -> value callables, so a
fraction of unbounded length costs no storage.  Convergents follow the
usual three-term recurrence with the initial wall

    P(-1) = 1, P(0) = b0, Q(-1) = 0, Q(0) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import IndexOutOfRange, RecurrenceOverflow, ZeroPartialNumerator, ZeroScaleFactor

Generator = Callable[[int], complex]

RENORM_HIGH = 1e100
RENORM_LOW = 1e-100


@dataclass(frozen=True)
class CFSpec:
    """``b0 + a(1)/(b(1) + a(2)/(b(2) + ...))``."""

    a: Generator
    b: Generator
    b0: complex = 0

    @classmethod
    def from_lists(cls, a: Sequence[complex], b: Sequence[complex], b0: complex = 0) -> CFSpec:
        """Finite fraction given by explicit lists (index 1 is ``a[0]``)."""
        a_, b_ = tuple(a), tuple(b)

        def _get(seq: tuple, name: str) -> Generator:
            def gen(n: int) -> complex:
                if not 1 <= n <= len(seq):
                    raise IndexOutOfRange(f"{name}({n}) outside 1..{len(seq)}")
                return seq[n - 1]

            return gen

        return cls(_get(a_, "a"), _get(b_, "b"), b0)

    @classmethod
    def constant(cls, a: complex, b: complex, b0: complex = 0) -> CFSpec:
        return cls(lambda n: a, lambda n: b, b0)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point ``[P : Q]`` of the extended complex plane; ``Q == 0`` is infinity."""

    P: complex
    Q: complex

    def __post_init__(self) -> None:
        if self.P == 0 and self.Q == 0:
            raise ValueError("[0 : 0] is not a point of the extended plane")

    @classmethod
    def from_value(cls, z: complex) -> ProjectivePoint:
        if cmath.isinf(z):
            return cls(1, 0)
        return cls(z, 1)

    @property
    def is_infinite(self) -> bool:
        return self.Q == 0

    def value(self) -> complex:
        """``P/Q``, or ``complex('inf')`` for the point at infinity."""
        if self.Q == 0:
            return complex(math.inf, 0)
        return self.P / self.Q

    def equals(self, other: ProjectivePoint, tol: float = 1e-12) -> bool:
        cross = abs(self.P * other.Q - other.P * self.Q)
        return cross <= tol * max(abs(self.P), abs(self.Q)) * max(abs(other.P), abs(other.Q))

    def chordal_distance(self, other: ProjectivePoint) -> float:
        """Chordal distance on the Riemann sphere, normalised to lie in [0, 1]."""
        cross = abs(self.P * other.Q - other.P * self.Q)
        return cross / (math.hypot(abs(self.P), abs(self.Q)) * math.hypot(abs(other.P), abs(other.Q)))

    def __str__(self) -> str:
        return "inf" if self.is_infinite else f"{self.value():.17g}"


@dataclass(frozen=True)
class ConvergentTable:
    """Canonical numerators/denominators for indices -1..N.

    When ``renormalized`` is set the stored pair at index ``n`` equals the true
    pair divided by ``exp(log_scale[n])``; ratios are unaffected.
    """

    P: tuple[complex, ...]
    Q: tuple[complex, ...]
    renormalized: bool
    log_scale: tuple[float, ...]

    @property
    def N(self) -> int:
        return len(self.P) - 2

    def _slot(self, n: int) -> int:
        if not -1 <= n <= self.N:
            raise IndexOutOfRange(f"index {n} outside -1..{self.N}")
        return n + 1

    def numerator(self, n: int) -> complex:
        return self.P[self._slot(n)]

    def denominator(self, n: int) -> complex:
        return self.Q[self._slot(n)]

    def scale(self, n: int) -> float:
        return self.log_scale[self._slot(n)]

    def ratios(self, start: int = 0) -> list[complex]:
        return [value_at(self, n).value() for n in range(start, self.N + 1)]


def approximants(cf: CFSpec, N: int, renormalize: bool = False) -> ConvergentTable:
    """Run the three-term recurrence up to index ``N``.

    With ``renormalize`` the working pairs are rescaled whenever
    ``max(|P(n)|, |Q(n)|)`` leaves ``[1e-100, 1e100]``; the accumulated log
    factor is recorded per index.  Without it a non-finite value raises
    :class:`RecurrenceOverflow`.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    b0 = complex(cf.b0)
    P = [1 + 0j, b0]
    Q = [0j, 1 + 0j]
    logs = [0.0, 0.0]
    p2, p1, q2, q1 = P[0], P[1], Q[0], Q[1]
    acc = 0.0
    for n in range(1, N + 1):
        an = complex(cf.a(n))
        if an == 0:
            raise ZeroPartialNumerator(f"a({n}) = 0 truncates the continued fraction")
        bn = complex(cf.b(n))
        p0 = bn * p1 + an * p2
        q0 = bn * q1 + an * q2
        size = max(abs(p0), abs(q0))
        if not math.isfinite(size):
            raise RecurrenceOverflow(f"canonical numerator/denominator overflowed at n={n}")
        if renormalize and size > 0 and not RENORM_LOW <= size <= RENORM_HIGH:
            p0, q0, p1, q1 = p0 / size, q0 / size, p1 / size, q1 / size
            acc += math.log(size)
        P.append(p0)
        Q.append(q0)
        logs.append(acc)
        p2, p1, q2, q1 = p1, p0, q1, q0
    return ConvergentTable(tuple(P), tuple(Q), renormalize, tuple(logs))


def value_at(table: ConvergentTable, n: int) -> ProjectivePoint:
    return ProjectivePoint(table.numerator(n), table.denominator(n))


def determinant(table: ConvergentTable, n: int) -> complex:
    """``P(n)Q(n-1) - P(n-1)Q(n)`` for the stored (possibly scaled) values."""
    return table.numerator(n) * table.denominator(n - 1) - table.numerator(n - 1) * table.denominator(n)


def equivalence_transform(cf: CFSpec, c: Generator) -> CFSpec:
    """Rescale by ``c``: ``a'(n) = c(n)c(n-1)a(n)``, ``b'(n) = c(n)b(n)``, ``c(0) = 1``.

    Every approximant of the result equals the corresponding one of ``cf``.
    """

    def scale(n: int) -> complex:
        if n == 0:
            return 1
        cn = c(n)
        if cn == 0:
            raise ZeroScaleFactor(f"c({n}) = 0")
        return cn

    return CFSpec(
        a=lambda n: scale(n) * scale(n - 1) * cf.a(n),
        b=lambda n: scale(n) * cf.b(n),
        b0=cf.b0,
    )


def tail(cf: CFSpec, k: int) -> CFSpec:
    """The ``k``-th tail ``K_{n>=1}(a(k+n)/b(k+n))`` (``b0`` dropped)."""
    if k < 0:
        raise ValueError(f"tail index must be nonnegative, got {k}")
    return CFSpec(a=lambda n: cf.a(k + n), b=lambda n: cf.b(k + n), b0=0)
