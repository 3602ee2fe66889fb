"""Brute-force references, written independently of the package code paths."""

from itertools import product


def square_partitions_bruteforce(n):
    """Every multiset of positive squares summing to n, built by ascending parts."""
    out = []

    def rec(remaining, smallest, acc):
        if remaining == 0:
            out.append(tuple(sorted(acc, reverse=True)))
            return
        b = smallest
        while b * b <= remaining:
            rec(remaining - b * b, b, acc + [b])
            b += 1

    rec(n, 1, [])
    return out


def even_square_partitions(n):
    return {p for p in square_partitions_bruteforce(n) if sum(p) % 2 == 0}


def all_parent_arrays(p):
    """All forests on nodes 1..p with parent id below child id, as parent tuples."""
    choices = [[None] + list(range(1, i)) for i in range(1, p + 1)]
    return list(product(*choices))


def depth_of(parents, i):
    d = 1
    while parents[i - 1] is not None:
        i = parents[i - 1]
        d += 1
    return d


def descendant_sets(parents):
    p = len(parents)
    desc = {i: {i} for i in range(1, p + 1)}
    for j in range(1, p + 1):
        a = parents[j - 1]
        while a is not None:
            desc[a].add(j)
            a = parents[a - 1]
    return desc


def forest_code(parents):
    p = len(parents)
    kids = {i: [] for i in range(1, p + 1)}
    for j, a in enumerate(parents, start=1):
        if a is not None:
            kids[a].append(j)

    def code(v):
        return "(" + "".join(sorted(code(c) for c in kids[v])) + ")"

    return tuple(sorted(code(r) for r, a in enumerate(parents, start=1) if a is None))


def forest_passes(parents, deg):
    """Depth, component-pair, leaf-pair and width bounds, from first principles."""
    p = len(parents)
    depths = [depth_of(parents, i) for i in range(1, p + 1)]
    has_child = {a for a in parents if a is not None}
    leaves = [i for i in range(1, p + 1) if i not in has_child]
    roots = [i for i in range(1, p + 1) if parents[i - 1] is None]
    desc = descendant_sets(parents)
    comp = [max(depths[j - 1] for j in desc[r]) for r in roots]
    if max(depths) > deg - 2:
        return False
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            if comp[a] + comp[b] > deg - 2:
                return False
    for a in range(len(leaves)):
        for b in range(a + 1, len(leaves)):
            if depths[leaves[a] - 1] + depths[leaves[b] - 1] + 2 > deg:
                return False
    if max(depths) == 1 and p > 8 * (deg - 1):
        return False
    return True


def random_parents(rng, p, root_prob=0.3):
    """Random parent array on 1..p; node 1 is always a root."""
    return [None if i == 1 or rng.random() < root_prob else rng.randint(1, i - 1) for i in range(1, p + 1)]
