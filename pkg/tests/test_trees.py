import random

import pytest

from k3maps.lattice import BlowupContext, DivisorClass, canonical_class, intersect
from k3maps.trees import (
    ExceptionalTree,
    ShapeDescriptor,
    TreeError,
    beta_from_gamma,
    check_depth,
    check_leaf_pairs,
    check_width,
    classify_shapes,
    is_minimal,
    node_depth,
    proper_transform,
    total_transform,
    total_transform_expansion,
    tree_report,
)

from oracles import all_parent_arrays, descendant_sets, forest_code, forest_passes, random_parents

# F1, F2 roots; F3 on F1; F4 on F2; F5, F6 on F3
EXAMPLE_PARENTS = [None, None, 1, 2, 3, 3]
EXAMPLE_GAMMAS = [0, 0, 0, 1, 1, 1]


@pytest.fixture
def example_tree():
    return ExceptionalTree.from_parents(EXAMPLE_PARENTS, EXAMPLE_GAMMAS)


def chain(n, gammas=None):
    return ExceptionalTree.from_parents([None] + list(range(1, n)), gammas)


def roots(n, gammas=None):
    return ExceptionalTree.from_parents([None] * n, gammas)


def random_forest(rng, p):
    return ExceptionalTree.from_parents(random_parents(rng, p), [rng.randint(0, 3) for _ in range(p)])


def test_validation():
    with pytest.raises(TreeError):
        ExceptionalTree.from_parents([None, 2])  # parent after child
    with pytest.raises(TreeError):
        ExceptionalTree.from_parents([None, 1], [1, -1])
    with pytest.raises(TreeError):
        ExceptionalTree.from_parents([1])  # self-loop
    with pytest.raises(KeyError):
        node_depth(chain(2), 3)


def test_six_node_example_depths(example_tree):
    assert node_depth(example_tree, 3) == 2
    assert node_depth(example_tree, 5) == 3
    assert example_tree.depths == (1, 1, 2, 2, 3, 3)
    assert example_tree.tree_depth == 3
    assert node_depth(example_tree, 1) == node_depth(example_tree, 2) == 1
    assert example_tree.descendants(3) == [3, 5, 6]
    assert example_tree.ancestors(3) == [1, 3]


def test_total_transform(example_tree):
    assert total_transform_expansion(example_tree, 3) == [3, 5, 6]
    ctx = BlowupContext.of(2, 6)
    e3 = total_transform(example_tree, 3, ctx)
    assert e3 == ctx.exceptional(3)
    summed = ctx.zero()
    for j in total_transform_expansion(example_tree, 3):
        summed = summed + proper_transform(example_tree, j, ctx)
    assert summed == e3
    iso = roots(1)
    assert proper_transform(iso, 1) == total_transform(iso, 1)


def test_proper_transform_intersections_small():
    tree = ExceptionalTree.from_parents([None, 1])
    f1, f2 = proper_transform(tree, 1), proper_transform(tree, 2)
    assert intersect(f1, f2) == 1
    assert intersect(f1, f1) == -2
    assert intersect(f2, f2) == -1


def test_beta_from_gamma(example_tree):
    assert beta_from_gamma(roots(1, [3])) == [3]
    assert beta_from_gamma(example_tree) == [2, 1, 2, 1, 1, 1]
    assert beta_from_gamma(chain(2, [0, 1])) == [1, 1]
    with pytest.raises(TreeError):
        beta_from_gamma(chain(2))


def test_is_minimal(example_tree):
    assert not is_minimal(roots(1, [0]))
    assert is_minimal(roots(1, [1]))
    assert is_minimal(example_tree)
    assert example_tree.leaves() == [4, 5, 6]


def test_check_depth():
    assert check_depth(chain(2), 4)
    two = ExceptionalTree.from_parents([None, 1, None])
    assert not check_depth(two, 4)
    assert not check_depth(roots(1), 2)
    assert not check_depth(chain(3), 4)


def test_check_leaf_pairs():
    assert check_leaf_pairs(roots(5), 4)
    assert not check_leaf_pairs(ExceptionalTree.from_parents([None, 1, None]), 4)
    for deg in range(2, 8):
        assert check_leaf_pairs(chain(3), deg)
    # two leaves below a common ancestor count as well
    cherry = ExceptionalTree.from_parents([None, 1, 1])
    assert not check_leaf_pairs(cherry, 5)
    assert check_leaf_pairs(cherry, 6)


def test_check_width():
    assert check_width(roots(24), 4)
    assert not check_width(roots(25), 4)
    assert check_width(ExceptionalTree.from_parents([None, 1] + [None] * 40), 9)


def test_report(example_tree):
    rep = tree_report(example_tree, 9)
    assert rep.passed and rep.minimal and rep.betas == (2, 1, 2, 1, 1, 1)
    rep4 = tree_report(example_tree, 4)
    assert not rep4.depth_ok and not rep4.passed
    unlabeled = tree_report(chain(2), 4)
    assert unlabeled.betas is None and unlabeled.minimal is None and unlabeled.passed


def test_expansion_identity_random():
    rng = random.Random(12)
    for _ in range(1000):
        tree = random_forest(rng, rng.randint(1, 12))
        ctx = BlowupContext.of(rng.randint(2, 9), tree.p)
        weighted = ctx.zero()
        for i in range(1, tree.p + 1):
            weighted = weighted + node_depth(tree, i) * proper_transform(tree, i, ctx)
        assert weighted == canonical_class(ctx)


def test_beta_consistency_random():
    rng = random.Random(5)
    for _ in range(500):
        tree = random_forest(rng, rng.randint(1, 12))
        desc = descendant_sets([n.parent for n in tree.nodes])
        gam = tree.gammas()
        expected = [sum(gam[j - 1] for j in desc[i]) for i in range(1, tree.p + 1)]
        assert beta_from_gamma(tree) == expected


def test_intersection_matrix_all_small_forests():
    for p in range(1, 9):
        ctx = BlowupContext.of(3, p)
        for parents in all_parent_arrays(p):
            tree = ExceptionalTree.from_parents(parents)
            F = [proper_transform(tree, i, ctx) for i in range(1, p + 1)]
            for i in range(1, p + 1):
                for j in range(1, p + 1):
                    got = intersect(F[i - 1], F[j - 1])
                    if i == j:
                        assert got == -1 - len(tree.children(i))
                    else:
                        adjacent = parents[j - 1] == i or parents[i - 1] == j
                        assert got == (1 if adjacent else 0)


def test_shape_descriptor_roundtrip(example_tree):
    shape = example_tree.shape()
    assert str(shape) == "((()())) + (())"
    assert ShapeDescriptor.parse(str(shape)) == shape
    assert shape.to_tree().shape() == shape
    assert shape.size == 6 and shape.depth == 3
    assert str(ShapeDescriptor.parse("3*()+(())")) == "(()) + 3*()"


def test_classify_deg4():
    shapes = classify_shapes(4, 25)
    expected = {ShapeDescriptor.from_codes(["()"] * k) for k in range(1, 25)}
    expected.add(ShapeDescriptor.from_codes(["(())"]))
    assert set(shapes) == expected
    assert len(shapes) == 25


def test_classify_deg2_empty():
    for p_max in (1, 5, 30):
        assert classify_shapes(2, p_max) == []


@pytest.mark.parametrize("deg,p_max", [(3, 4), (4, 6), (5, 5), (6, 6), (9, 3), (9, 6), (10, 6)])
def test_classify_matches_bruteforce(deg, p_max):
    expected = set()
    for p in range(1, p_max + 1):
        for parents in all_parent_arrays(p):
            if forest_passes(parents, deg):
                expected.add(forest_code(parents))
    got = {tuple(sorted(s.components)) for s in classify_shapes(deg, p_max)}
    assert got == expected


def test_classify_deg9_small():
    got = [str(s) for s in classify_shapes(9, 3)]
    assert got == ["()", "(())", "2*()", "((()))", "(()())", "(()) + ()", "3*()"]
