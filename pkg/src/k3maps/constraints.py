"""Arithmetic constraints linking the topological degree and the algebraic degree.

A dominant self-rational map of a generic genus ``g`` K3 surface with
topological degree ``deg`` and algebraic degree ``l`` needs

* ``deg = lambda^2`` for an integer ``lambda`` of unknown sign,
* ``(2g - 2) | (l - lambda)``,
* positive integers ``beta_i`` with ``l^2 = deg + (2g - 2) * sum beta_i^2``
  and ``sum beta_i`` even,
* under a mild hypothesis on the elimination of indeterminacies,
  ``deg <= 1 + (p + 4(g - 1) sum beta_i) / 24``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterator, Optional, Sequence


@dataclass(frozen=True)
class BetaPartition:
    """Multiset of positive integers, stored in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(b < 1 for b in parts):
            raise ValueError(f"beta values must be positive, got {parts}")
        if sum(parts) % 2:
            raise ValueError(f"sum of betas must be even, got {parts}")

    @property
    def p(self) -> int:
        return len(self.parts)

    @property
    def sum(self) -> int:
        return sum(self.parts)

    @property
    def sum_sq(self) -> int:
        return sum(b * b for b in self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def compact(self) -> str:
        """``(2x6,1x6)`` style rendering."""
        out = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            out.append(str(self.parts[i]) if j - i == 1 else f"{self.parts[i]}x{j - i}")
            i = j
        return "(" + ",".join(out) + ")"


@dataclass(frozen=True)
class LambdaWitness:
    """Integer eigenvalue on transcendental cohomology; only ``lambda^2`` is known a priori."""

    value: int

    @property
    def deg(self) -> int:
        return self.value * self.value


def square_root_degree(deg: int) -> Optional[int]:
    if deg < 1:
        raise ValueError(f"deg must be >= 1, got {deg}")
    r = isqrt(deg)
    return r if r * r == deg else None


def lambda_candidates(g: int, deg: int, l: int) -> list[LambdaWitness]:
    """Signs of ``sqrt(deg)`` compatible with ``(2g - 2) | (l - lambda)``, positive first."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    root = square_root_degree(deg)
    if root is None:
        raise ValueError(f"deg={deg} is not a perfect square")
    m = 2 * g - 2
    out = []
    for lam in (root, -root):
        if (l - lam) % m == 0:
            out.append(LambdaWitness(lam))
    return out


def required_sum_sq(g: int, deg: int, l: int) -> Optional[int]:
    """``N = (l^2 - deg) / (2g - 2)`` when that is a non-negative integer."""
    num = l * l - deg
    m = 2 * g - 2
    if num < 0 or num % m:
        return None
    return num // m


def iter_beta_partitions(
    N: int,
    p_cap: Optional[int] = None,
    prune: Optional[Callable[[int, int, int, int], bool]] = None,
) -> Iterator[BetaPartition]:
    """Square partitions of ``N`` with even part sum, in descending lexicographic order.

    ``prune(remaining, largest_allowed, parts_so_far, sum_so_far)`` may cut a
    branch; it must only return True when no completion of the branch is wanted.
    """
    if N < 1 or N % 2:
        # sum b = sum b^2 mod 2, so an odd N has no even-sum partition
        return
    parts: list[int] = []

    def rec(remaining: int, largest: int, total: int) -> Iterator[BetaPartition]:
        if remaining == 0:
            if total % 2 == 0:
                yield BetaPartition(tuple(parts))
            return
        if p_cap is not None and len(parts) + -(-remaining // (largest * largest)) > p_cap:
            return
        if prune is not None and prune(remaining, largest, len(parts), total):
            return
        for b in range(min(largest, isqrt(remaining)), 0, -1):
            parts.append(b)
            yield from rec(remaining - b * b, b, total + b)
            parts.pop()

    yield from rec(N, isqrt(N), 0)


def enumerate_beta_partitions(N: int, p_cap: Optional[int] = None) -> list[BetaPartition]:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return list(iter_beta_partitions(N, p_cap))


def min_square_count(n: int) -> int:
    """Fewest positive squares summing to ``n`` (Lagrange / Legendre)."""
    if n == 0:
        return 0
    if isqrt(n) ** 2 == n:
        return 1
    m = n
    while m % 4 == 0:
        m //= 4
    if m % 8 == 7:
        return 4
    for a in range(1, isqrt(n // 2) + 1):
        r = n - a * a
        if isqrt(r) ** 2 == r:
            return 2
    return 3


def partition_exists(N: int, p_cap: Optional[int] = None) -> bool:
    """Whether a square partition of ``N`` with even sum exists, without listing them.

    The part sum has the parity of ``N`` because ``b^2 = b mod 2``, so the
    question reduces to ``N`` even and positive plus the minimal part count.
    """
    if N < 1 or N % 2:
        return False
    return p_cap is None or min_square_count(N) <= p_cap


def amerik_score(g: int, partition: BetaPartition) -> int:
    """``p + 4(g - 1) sum beta``; the bound reads ``24(deg - 1) <= score``."""
    return partition.p + 4 * (g - 1) * partition.sum


def amerik_bound(g: int, partition: BetaPartition) -> Fraction:
    return 1 + Fraction(amerik_score(g, partition), 24)


def amerik_ok(g: int, deg: int, partition: BetaPartition) -> bool:
    return deg <= amerik_bound(g, partition)


def amerik_admits(
    g: int,
    deg: int,
    N: int,
    shape_constraints: bool = False,
    shape_ok: Optional[Callable[[BetaPartition], bool]] = None,
    p_cap: Optional[int] = None,
) -> Optional[BetaPartition]:
    """First partition of ``N`` (descending lexicographic) meeting the Chern-class bound.

    With ``shape_constraints`` the partition must also fit a tree shape:
    either ``p <= 8(deg - 1)`` for a depth-one tree, or ``shape_ok`` accepts
    it. Branches whose best attainable score misses the target are cut,
    using that each part ``b`` costs ``b^2`` of ``N`` and adds ``1 + c*b``
    to the score, a ratio maximised at ``b = 1``. ``p_cap`` bounds the
    number of parts.
    """
    if N < 1:
        return None
    target = 24 * (deg - 1)
    c = 4 * (g - 1)

    def prune(remaining: int, largest: int, nparts: int, total: int) -> bool:
        return nparts + c * total + (1 + c) * remaining < target

    for part in iter_beta_partitions(N, p_cap, prune=prune):
        if amerik_score(g, part) < target:
            continue
        if not shape_constraints:
            return part
        if part.p <= 8 * (deg - 1) or (shape_ok is not None and shape_ok(part)):
            return part
    return None


def max_amerik_score(g: int, N: int) -> Optional[int]:
    """Largest ``p + 4(g - 1) sum beta`` over partitions of ``N``; the all-ones partition when it exists."""
    if not partition_exists(N):
        return None
    return N + 4 * (g - 1) * N
