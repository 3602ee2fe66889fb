from fractions import Fraction

import pytest

from k3maps.severi import (
    arithmetic_genus,
    epsilon_window_holds,
    expected_severi_dimension,
    genericity_threshold,
    genus_ratio,
    node_count,
    nodes_after_one_node_source,
)


def test_arithmetic_genus():
    assert arithmetic_genus(2, 1) == 2
    assert arithmetic_genus(3, 2) == 9
    assert arithmetic_genus(5, 3) == 37
    for g in range(2, 20):
        assert arithmetic_genus(g, 1) == g
    with pytest.raises(ValueError):
        arithmetic_genus(1, 1)


def test_node_count():
    assert node_count(7, 3, 1) == 0
    assert node_count(2, 1, 2) == 3
    assert node_count(3, 2, 3) == 64


def test_node_count_grid():
    for g in range(2, 11):
        for k in range(1, 21):
            for l in range(1, 11):
                assert node_count(g, k, l) == arithmetic_genus(g, k * l) - arithmetic_genus(g, k)


def test_nodes_after_one_node_source():
    assert nodes_after_one_node_source(2, 1, 2) == 4
    assert nodes_after_one_node_source(3, 1, 2) == 7
    assert nodes_after_one_node_source(2, 2, 2) == 13
    with pytest.raises(ValueError):
        nodes_after_one_node_source(2, 1, 1)


def test_expected_dimension():
    assert expected_severi_dimension(4, 2, arithmetic_genus(4, 2)).dimension == arithmetic_genus(4, 2)
    assert expected_severi_dimension(4, 2, arithmetic_genus(4, 2)).delta == 0
    assert expected_severi_dimension(3, 2, 0).dimension == 0
    d = expected_severi_dimension(2, 3, 5)
    assert (d.dimension, d.delta) == (5, 5)
    with pytest.raises(ValueError):
        expected_severi_dimension(2, 1, 3)
    for g in range(2, 8):
        for k in range(1, 6):
            for h in range(0, arithmetic_genus(g, k) + 1):
                d = expected_severi_dimension(g, k, h)
                assert d.dimension + d.delta == arithmetic_genus(g, k)


def test_genus_ratio():
    r = genus_ratio(2, 1000, 2)
    assert isinstance(r, Fraction)
    assert abs(r - Fraction(1, 4)) <= Fraction(1, 1000)
    assert genus_ratio(5, 7, 1) == 1
    for g in (2, 3, 6):
        for l in (2, 3, 5):
            gaps = [abs(genus_ratio(g, k, l) - Fraction(1, l * l)) for k in (1, 10, 100, 1000)]
            assert gaps == sorted(gaps, reverse=True) and gaps[-1] < gaps[0]


def test_genus_ratio_rate():
    for g in range(2, 11):
        C = Fraction(2, g - 1)
        for l in range(1, 6):
            for k in list(range(1, 200)) + [500, 1000, 5000, 10**4]:
                assert abs(genus_ratio(g, k, l) - Fraction(1, l * l)) <= C / (k * k)


def test_epsilon_window():
    assert epsilon_window_holds(2, 10, 2, Fraction(1, 5))  # 401/5 <= 101 <= 401
    for k in range(1, 30):
        assert not epsilon_window_holds(3, k, 2, Fraction(1))
    eps = Fraction(1, 5)  # below 1/4
    held = [epsilon_window_holds(2, k, 2, eps) for k in (1, 10, 100, 1000)]
    assert held[-1]
    # just above 1/l^2 the window eventually fails
    assert not epsilon_window_holds(2, 1000, 2, Fraction(26, 100))
    with pytest.raises(ValueError):
        epsilon_window_holds(2, 1, 2, Fraction(0))


def test_genericity_threshold():
    assert [genericity_threshold(g) for g in (2, 3, 4, 5)] == [6, 4, 4, 4]
    assert genericity_threshold(17) == 4
