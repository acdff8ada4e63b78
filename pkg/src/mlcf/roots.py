"""Exact roots of unity stored as reduced fractions of a full turn."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The number ``exp(2*pi*i*num/den)``.

    Construction reduces the fraction and wraps ``num`` into ``[0, den)``, so
    two instances compare equal exactly when they denote the same root.
    """

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")
        frac = Fraction(self.num % self.den, self.den)
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @classmethod
    def parse(cls, text: str) -> RootOfUnity:
        """Parse a turn fraction such as ``"1/6"`` or ``"-1/6"`` or ``"0"``."""
        frac = Fraction(text.strip())
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def primitive(cls, m: int) -> RootOfUnity:
        return cls(1, m)

    @property
    def order(self) -> int:
        return self.den

    @property
    def turn(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        t = self.turn + other.turn
        return RootOfUnity(t.numerator, t.denominator)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.num * k, self.den)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.num, self.den)

    def power_value(self, k: int) -> complex:
        """``self**k`` as a complex number, reduced exactly before evaluation."""
        return (self**k).value

    @property
    def value(self) -> complex:
        return _turn_to_complex(self.num, self.den)

    def __complex__(self) -> complex:
        return self.value

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def _turn_to_complex(num: int, den: int) -> complex:
    # Exact values on the axes keep sums like 1 + (-1) free of rounding.
    if num == 0:
        return 1 + 0j
    if 2 * num == den:
        return -1 + 0j
    if 4 * num == den:
        return 1j
    if 4 * num == 3 * den:
        return -1j
    # Evaluate with the angle folded into (-pi, pi] for symmetry.
    if 2 * num > den:
        num -= den
    theta = 2.0 * math.pi * num / den
    return complex(math.cos(theta), math.sin(theta))


def common_order(*roots: RootOfUnity) -> int:
    """Least ``m`` with ``w**m == 1`` for every root, computed exactly."""
    return reduce(math.lcm, (r.den for r in roots), 1)


def exponents_mod(m: int, *roots: RootOfUnity) -> list[int]:
    """Write each root as ``exp(2*pi*i*a/m)`` and return the integers ``a``."""
    out = []
    for r in roots:
        if m % r.den:
            raise ValueError(f"{r} is not an m-th root of unity for m={m}")
        out.append(r.num * (m // r.den))
    return out


def power_table(root: RootOfUnity) -> list[complex]:
    """Values ``root**e`` for ``e`` in ``range(root.order)``."""
    return [root.power_value(e) for e in range(root.order)]
