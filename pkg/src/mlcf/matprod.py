"""Infinite products of square matrices that converge along residue classes.

If ``D(n) -> M`` summably and ``M**m = I`` with ``M`` diagonalizable, then
the partial products over ``k*m`` factors converge to a matrix ``F`` and those
over ``k*m + j`` factors converge to ``F @ M**j`` (right products
``D1 D2 ...``) or ``M**j @ F`` (left products ``... D2 D1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import DeviationBoundViolated, NoConvergence, NoPeriodFound
from .roots import RootOfUnity, common_order

Direction = Literal["left", "right"]

# Consecutive small block deltas required before declaring convergence.
CONSECUTIVE_HITS = 3


def inf_norm(G: np.ndarray) -> float:
    """Largest entry modulus (not the operator infinity norm)."""
    return float(np.max(np.abs(G))) if G.size else 0.0


def companion(coeffs: Sequence[complex]) -> np.ndarray:
    """Companion matrix of ``t**p - a_{p-1} t**(p-1) - ... - a_0``.

    ``coeffs`` is ``(a_0, ..., a_{p-1})``; the top row holds them in reverse
    order and the subdiagonal is all ones.
    """
    p = len(coeffs)
    if p < 1:
        raise ValueError("companion matrix needs at least one coefficient")
    M = np.zeros((p, p), dtype=complex)
    M[0, :] = list(reversed([complex(c) for c in coeffs]))
    for r in range(1, p):
        M[r, r - 1] = 1
    return M


def min_period(
    M: np.ndarray,
    m_max: int = 10_000,
    tol: float = 1e-9,
    roots: Sequence[RootOfUnity] | None = None,
) -> int:
    """Least ``m`` with ``M**m = I``.

    When the eigenvalues are supplied as exact roots the answer is the lcm of
    their orders and no tolerance is involved.
    """
    if roots is not None:
        m = common_order(*roots)
        if m > m_max:
            raise NoPeriodFound(f"exact period {m} exceeds m_max={m_max}")
        return m
    M = np.asarray(M, dtype=complex)
    eye = np.eye(M.shape[0], dtype=complex)
    power = eye.copy()
    for m in range(1, m_max + 1):
        power = power @ M
        if inf_norm(power - eye) <= tol:
            return m
    raise NoPeriodFound(f"no m <= {m_max} with ||M^m - I|| <= {tol:g}; eigenvalues are not roots of unity of small order")


@dataclass(frozen=True)
class MatrixSeq:
    """``D(n)`` for ``n >= 1`` approaching ``M`` with ``||D(n) - M|| <= deviation_bound(n)``."""

    D: Callable[[int], np.ndarray]
    M: np.ndarray
    deviation_bound: Callable[[int], float] | None = None
    period: int | None = None

    @property
    def order(self) -> int:
        return int(np.asarray(self.M).shape[0])

    def check_bound(self, upto: int = 200) -> None:
        if self.deviation_bound is None:
            return
        M = np.asarray(self.M, dtype=complex)
        # D(n) - M is computed in floating point; allow rounding at the scale of M.
        slack = 1e-14 * max(1.0, inf_norm(M))
        for n in range(1, upto + 1):
            dev = inf_norm(np.asarray(self.D(n), dtype=complex) - M)
            bnd = self.deviation_bound(n)
            if dev > bnd * (1 + 1e-12) + slack:
                raise DeviationBoundViolated(f"||D({n}) - M|| = {dev:.3e} exceeds declared bound {bnd:.3e}")


@dataclass(frozen=True)
class ProductLimit:
    F: np.ndarray
    residue_limits: list[np.ndarray]
    period: int
    blocks: int
    direction: Direction

    def __iter__(self):
        # Allows ``F, limits = product_limit(...)``.
        yield self.F
        yield self.residue_limits


def _period_of(seq: MatrixSeq) -> int:
    return seq.period if seq.period is not None else min_period(seq.M)


def block(seq: MatrixSeq, n: int, m: int, direction: Direction = "right") -> np.ndarray:
    """``U_n``: the product of ``D(mn+1), ..., D(mn+m)`` in the given direction."""
    U = np.eye(seq.order, dtype=complex)
    for j in range(1, m + 1):
        Dj = np.asarray(seq.D(m * n + j), dtype=complex)
        U = U @ Dj if direction == "right" else Dj @ U
    return U


def partial_product(seq: MatrixSeq, count: int, direction: Direction = "right") -> np.ndarray:
    """Brute-force product of the first ``count`` factors."""
    out = np.eye(seq.order, dtype=complex)
    for n in range(1, count + 1):
        Dn = np.asarray(seq.D(n), dtype=complex)
        out = out @ Dn if direction == "right" else Dn @ out
    return out


def product_limit(
    seq: MatrixSeq,
    direction: Direction = "right",
    tol: float = 1e-12,
    k_max: int = 100_000,
) -> ProductLimit:
    """Limit ``F`` of the block products and the ``m`` residue-class limits.

    Blocks are accumulated until the entry-wise change of the running product
    stays below ``tol * max(1, ||F_r||)`` for three blocks in a row.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    seq.check_bound()
    m = _period_of(seq)
    M = np.asarray(seq.M, dtype=complex)
    F = np.eye(seq.order, dtype=complex)
    hits = 0
    for r in range(k_max):
        U = block(seq, r, m, direction)
        F_next = F @ U if direction == "right" else U @ F
        delta = inf_norm(F_next - F)
        F = F_next
        if not np.all(np.isfinite(F)):
            raise NoConvergence("matrix product overflowed; deviations are not summable or M is wrong")
        hits = hits + 1 if delta < tol * max(1.0, inf_norm(F)) else 0
        if hits >= CONSECUTIVE_HITS:
            limits = []
            Mj = np.eye(seq.order, dtype=complex)
            for _ in range(m):
                limits.append(F @ Mj if direction == "right" else Mj @ F)
                Mj = Mj @ M
            return ProductLimit(F, limits, m, r + 1, direction)
    raise NoConvergence(f"block products did not settle within {k_max} blocks of {m} factors")


def observed_block_constant(seq: MatrixSeq, n_blocks: int = 50) -> float:
    """Empirical ``sup ||U_n - I|| / eps_n`` with ``eps_n = max_j ||D(mn+j) - M||``.

    Only an observation over the sampled blocks; no certificate is implied.
    """
    m = _period_of(seq)
    M = np.asarray(seq.M, dtype=complex)
    eye = np.eye(seq.order, dtype=complex)
    best = 0.0
    for n in range(n_blocks):
        eps = max(inf_norm(np.asarray(seq.D(m * n + j), dtype=complex) - M) for j in range(1, m + 1))
        if eps == 0:
            continue
        best = max(best, inf_norm(block(seq, n, m) - eye) / eps)
    return best
