"""Genus, node-count and dimension formulas for curves in ``|kL|``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _check(g: int, k: int) -> None:
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def arithmetic_genus(g: int, k: int) -> int:
    """``p_a(k) = 1 + k^2 (g - 1)``, the genus of a smooth curve in ``|kL|``."""
    _check(g, k)
    return 1 + k * k * (g - 1)


def node_count(g: int, k: int, l: int) -> int:
    """Nodes of the image in ``|klL|`` of a smooth curve of ``|kL|``."""
    _check(g, k)
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return (g - 1) * k * k * (l * l - 1)


def nodes_after_one_node_source(g: int, k: int, l: int) -> int:
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    return node_count(g, k, l) + 1


@dataclass(frozen=True)
class SeveriDimension:
    dimension: int
    delta: int


def expected_severi_dimension(g: int, k: int, h: int) -> SeveriDimension:
    """Expected dimension of ``V_{k,h}`` and the number of nodes it imposes.

    ``h = 0`` is accepted; the family is then finite.
    """
    pa = arithmetic_genus(g, k)
    if not 0 <= h <= pa:
        raise ValueError(f"geometric genus must lie in 0..{pa}, got {h}")
    return SeveriDimension(dimension=h, delta=pa - h)


def genus_ratio(g: int, k: int, l: int) -> Fraction:
    """``p_a(k) / p_a(lk)``; tends to ``1/l^2`` as ``k`` grows."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return Fraction(arithmetic_genus(g, k), arithmetic_genus(g, l * k))


def epsilon_window_holds(g: int, k: int, l: int, epsilon: Fraction) -> bool:
    """``eps * p_a(kl) <= p_a(k) <= p_a(kl)``, compared exactly."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    small, big = arithmetic_genus(g, k), arithmetic_genus(g, k * l)
    return epsilon * big <= small <= big


def genericity_threshold(g: int) -> int:
    """Smallest ``k`` from which the two-point argument on ``|kL|`` applies."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    return 6 if g == 2 else 4
