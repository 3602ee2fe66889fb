"""Picard lattice of an iterated blow-up of a generic polarized K3 surface.

The lattice of the blown-up surface has the orthogonal basis
``(tau*L, E_1, ..., E_p)`` with Gram matrix ``diag(2g-2, -1, ..., -1)``.
Classes are plain integer vectors over that basis; Python integers are
arbitrary precision, so no product can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class PolarizedGenus:
    """Genus ``g`` of a polarization ``L`` with ``L^2 = 2g - 2``."""

    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or isinstance(self.g, bool):
            raise TypeError(f"genus must be an int, got {self.g!r}")
        if self.g < 2:
            raise ValueError(f"genus must be >= 2, got {self.g}")

    @property
    def selfint(self) -> int:
        return 2 * self.g - 2


@dataclass(frozen=True)
class BlowupContext:
    genus: PolarizedGenus
    p: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"number of blow-ups must be >= 0, got {self.p}")

    @classmethod
    def of(cls, g: int, p: int) -> "BlowupContext":
        return cls(PolarizedGenus(g), p)

    @property
    def rank(self) -> int:
        return self.p + 1

    def pullback_L(self) -> "DivisorClass":
        return DivisorClass(self, 1, (0,) * self.p)

    def exceptional(self, i: int) -> "DivisorClass":
        """Total transform ``E_i`` (1-based)."""
        if not 1 <= i <= self.p:
            raise IndexError(f"exceptional index {i} outside 1..{self.p}")
        coeffs = [0] * self.p
        coeffs[i - 1] = 1
        return DivisorClass(self, 0, tuple(coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, 0, (0,) * self.p)


@dataclass(frozen=True)
class DivisorClass:
    """Integer class ``coeff_L * tau*L + sum coeff_E[i] * E_{i+1}``."""

    context: BlowupContext
    coeff_L: int
    coeff_E: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff_E", tuple(self.coeff_E))
        if len(self.coeff_E) != self.context.p:
            raise ValueError(
                f"expected {self.context.p} exceptional coefficients, got {len(self.coeff_E)}"
            )

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"not a divisor class: {other!r}")
        if other.context != self.context:
            raise ValueError("divisor classes live on different blow-ups")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            self.context,
            self.coeff_L + other.coeff_L,
            tuple(a + b for a, b in zip(self.coeff_E, other.coeff_E)),
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.context, -self.coeff_L, tuple(-a for a in self.coeff_E))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, k: int) -> "DivisorClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.context, k * self.coeff_L, tuple(k * a for a in self.coeff_E))

    __rmul__ = __mul__

    def as_vector(self) -> tuple[int, ...]:
        return (self.coeff_L,) + self.coeff_E

    def __str__(self) -> str:
        return f"({self.coeff_L}; {', '.join(map(str, self.coeff_E))})"


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    a._check(b)
    selfint = a.context.genus.selfint
    return selfint * a.coeff_L * b.coeff_L - sum(x * y for x, y in zip(a.coeff_E, b.coeff_E))


def self_intersection(a: DivisorClass) -> int:
    return intersect(a, a)


def gram_matrix(context: BlowupContext) -> list[list[int]]:
    n = context.rank
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = context.genus.selfint
    for i in range(1, n):
        gram[i][i] = -1
    return gram


def canonical_class(context: BlowupContext) -> DivisorClass:
    """``K = E_1 + ... + E_p``; the K3 itself contributes nothing."""
    return DivisorClass(context, 0, (1,) * context.p)


def pullback_polarization(context: BlowupContext, l: int, betas: Sequence[int]) -> DivisorClass:
    """Class ``l tau*L - sum (2g-2) beta_i E_i`` of the pulled-back polarization."""
    betas = tuple(betas)
    if len(betas) != context.p:
        raise ValueError(f"expected {context.p} betas, got {len(betas)}")
    if l < 1:
        raise ValueError(f"algebraic degree must be positive, got {l}")
    if any(b < 1 for b in betas):
        raise ValueError(f"all betas must be positive, got {betas}")
    selfint = context.genus.selfint
    return DivisorClass(context, l, tuple(-selfint * b for b in betas))


def degree_from_pullback(context: BlowupContext, l: int, betas: Sequence[int]) -> Fraction:
    """Topological degree implied by ``(phi~*L)^2 = deg * L^2``.

    Returned as a rational so that inconsistent inputs show up as a
    non-integral or non-positive value instead of an exception.
    """
    cls = pullback_polarization(context, l, betas)
    return Fraction(self_intersection(cls), context.genus.selfint)
