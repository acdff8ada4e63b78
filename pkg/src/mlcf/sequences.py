"""Absolutely summable sequences with a declared majorant.

Every sequence carries three callables: the terms, a termwise bound
``|terms(n)| <= bound(n)`` (for ``n >= cutoff``), and ``remainder(n)``, an
upper bound for ``sum_{k > n} bound(k)``.  The remainder is what lets
infinite products be truncated with a guaranteed error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DeviationBoundViolated

# How far spot checks of a declared bound reach.
SPOT_CHECK_TERMS = 200


@dataclass(frozen=True)
class PerturbationSeq:
    terms: Callable[[int], complex]
    bound: Callable[[int], float]
    remainder: Callable[[int], float]
    cutoff: int = 1
    label: str = "custom"

    def __call__(self, n: int) -> complex:
        return self.terms(n)

    @classmethod
    def zero(cls) -> PerturbationSeq:
        return cls(lambda n: 0j, lambda n: 0.0, lambda n: 0.0, label="zero")

    @classmethod
    def geometric(cls, r: complex, c: complex = 1) -> PerturbationSeq:
        """``c * r**n``; requires ``|r| < 1``."""
        ar, ac = abs(r), abs(c)
        if ar >= 1:
            raise ValueError(f"geometric ratio must satisfy |r| < 1, got {r}")
        return cls(
            terms=lambda n: c * r**n,
            bound=lambda n: ac * ar**n,
            remainder=lambda n: ac * ar ** (n + 1) / (1 - ar),
            label=f"geometric(r={r}, c={c})",
        )

    @classmethod
    def power(cls, s: float, c: complex = 1) -> PerturbationSeq:
        """``c / n**s``; requires ``s > 1``."""
        if s <= 1:
            raise ValueError(f"c/n**s is summable only for s > 1, got s={s}")
        ac = abs(c)
        # Integral comparison: sum_{k>n} k^-s <= n^(1-s)/(s-1).
        return cls(
            terms=lambda n: c / n**s,
            bound=lambda n: ac / n**s,
            remainder=lambda n: ac * max(n, 1) ** (1 - s) / (s - 1) if n >= 1 else math.inf,
            label=f"power(s={s}, c={c})",
        )

    @classmethod
    def paired_geometric(cls, r: complex, c: complex = 1) -> PerturbationSeq:
        """``c * r**ceil(n/2)``: each power appears twice."""
        ar, ac = abs(r), abs(c)
        if ar >= 1:
            raise ValueError(f"ratio must satisfy |r| < 1, got {r}")
        return cls(
            terms=lambda n: c * r ** ((n + 1) // 2),
            bound=lambda n: ac * ar ** ((n + 1) // 2),
            remainder=lambda n: 2 * ac * ar ** ((n + 1) // 2) / (1 - ar),
            label=f"paired_geometric(r={r}, c={c})",
        )

    @classmethod
    def finite(cls, values: Sequence[complex]) -> PerturbationSeq:
        """``values[n-1]`` for ``1 <= n <= len(values)``, zero afterwards."""
        vals = tuple(complex(v) for v in values)
        mags = [abs(v) for v in vals]

        def terms(n: int) -> complex:
            return vals[n - 1] if 1 <= n <= len(vals) else 0j

        def bound(n: int) -> float:
            return mags[n - 1] if 1 <= n <= len(vals) else 0.0

        def remainder(n: int) -> float:
            return float(sum(mags[max(n, 0):]))

        return cls(terms, bound, remainder, label=f"finite({len(vals)})")

    @classmethod
    def custom(
        cls,
        terms: Callable[[int], complex],
        bound: Callable[[int], float],
        remainder: Callable[[int], float],
        cutoff: int = 1,
    ) -> PerturbationSeq:
        return cls(terms, bound, remainder, cutoff)

    def check(self, upto: int = SPOT_CHECK_TERMS) -> None:
        """Spot-check the declared bound on ``cutoff..cutoff+upto``."""
        for n in range(self.cutoff, self.cutoff + upto):
            t, b = abs(self.terms(n)), self.bound(n)
            if t > b * (1 + 1e-12) + 1e-300:
                raise DeviationBoundViolated(f"|term({n})| = {t:.3e} exceeds declared bound {b:.3e} ({self.label})")

    def truncation_index(self, rel_err: float, start: int = 0, limit: int = 10**7) -> int:
        """Smallest ``N >= start`` (and past the cutoff) with ``exp(remainder(N)) - 1 <= rel_err``.

        Past that index ``prod_{n > N}(1 + x_n)`` differs from 1 by at most
        ``rel_err`` whenever ``|x_n| <= bound(n)``.
        """
        n = max(start, self.cutoff - 1, 0)
        step = 1
        while math.expm1(self.remainder(n)) > rel_err:
            n += step
            step *= 2
            if n > limit:
                raise ValueError(f"remainder of {self.label} does not fall below {rel_err:g}")
        # Step back with a binary search to the least admissible index.
        lo = max(start, self.cutoff - 1, 0, n - step // 2)
        hi = n
        while lo < hi:
            mid = (lo + hi) // 2
            if math.expm1(self.remainder(mid)) <= rel_err:
                hi = mid
            else:
                lo = mid + 1
        return hi
