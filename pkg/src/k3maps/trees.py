"""Exceptional trees of an elimination of indeterminacies.

Nodes are the proper transforms ``F^_i`` of the exceptional curves, numbered
in blow-up order, so a parent always has a smaller id than its children.
``gamma`` is the multiplier in ``phi~_* F^_i = gamma_i L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .lattice import BlowupContext, DivisorClass


class TreeError(ValueError):
    """Malformed exceptional tree."""


@dataclass(frozen=True)
class TreeNode:
    id: int
    parent: Optional[int] = None
    gamma: Optional[int] = None


@dataclass(frozen=True)
class ExceptionalTree:
    nodes: tuple[TreeNode, ...]

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        object.__setattr__(self, "nodes", nodes)
        ids = [n.id for n in nodes]
        if ids != list(range(1, len(nodes) + 1)):
            raise TreeError(f"node ids must be exactly 1..{len(nodes)}, got {ids}")
        for n in nodes:
            if n.parent is not None:
                if not 1 <= n.parent <= len(nodes):
                    raise TreeError(f"node {n.id}: unknown parent {n.parent}")
                if n.parent >= n.id:
                    raise TreeError(
                        f"node {n.id}: parent {n.parent} must be blown up before its child"
                    )
            if n.gamma is not None and n.gamma < 0:
                raise TreeError(f"node {n.id}: gamma must be >= 0, got {n.gamma}")

    @classmethod
    def from_parents(
        cls, parents: Sequence[Optional[int]], gammas: Optional[Sequence[int]] = None
    ) -> "ExceptionalTree":
        """Build from a parent list where ``parents[i]`` is the parent of node ``i+1``."""
        if gammas is not None and len(gammas) != len(parents):
            raise TreeError("gamma list and parent list differ in length")
        return cls(
            tuple(
                TreeNode(i + 1, par, None if gammas is None else gammas[i])
                for i, par in enumerate(parents)
            )
        )

    @property
    def p(self) -> int:
        return len(self.nodes)

    @property
    def labeled(self) -> bool:
        return all(n.gamma is not None for n in self.nodes)

    def node(self, id: int) -> TreeNode:
        if not 1 <= id <= self.p:
            raise KeyError(f"no node with id {id}")
        return self.nodes[id - 1]

    @cached_property
    def _children(self) -> dict[int, tuple[int, ...]]:
        kids: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            if n.parent is not None:
                kids[n.parent].append(n.id)
        return {k: tuple(v) for k, v in kids.items()}

    def children(self, id: int) -> tuple[int, ...]:
        self.node(id)
        return self._children[id]

    def roots(self) -> list[int]:
        return [n.id for n in self.nodes if n.parent is None]

    def leaves(self) -> list[int]:
        return [n.id for n in self.nodes if not self._children[n.id]]

    def descendants(self, id: int) -> list[int]:
        """The node itself together with everything below it, sorted."""
        out, stack = [], [id]
        self.node(id)
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self._children[v])
        return sorted(out)

    def ancestors(self, id: int) -> list[int]:
        """The node itself together with everything above it, root first."""
        chain = []
        cur: Optional[int] = id
        while cur is not None:
            chain.append(cur)
            cur = self.node(cur).parent
        return chain[::-1]

    def root_of(self, id: int) -> int:
        return self.ancestors(id)[0]

    @cached_property
    def depths(self) -> tuple[int, ...]:
        out: list[int] = []
        for n in self.nodes:
            # parents precede children, so the parent depth is already known
            out.append(1 if n.parent is None else out[n.parent - 1] + 1)
        return tuple(out)

    @property
    def tree_depth(self) -> int:
        return max(self.depths, default=0)

    def component_depths(self) -> list[int]:
        best: dict[int, int] = {}
        for n in self.nodes:
            r = self.root_of(n.id)
            best[r] = max(best.get(r, 0), self.depths[n.id - 1])
        return [best[r] for r in sorted(best)]

    def gammas(self) -> tuple[int, ...]:
        if not self.labeled:
            raise TreeError("tree has nodes without a gamma label")
        return tuple(n.gamma for n in self.nodes)  # type: ignore[misc]

    def shape(self) -> "ShapeDescriptor":
        def code(v: int) -> str:
            return "(" + "".join(sorted(code(c) for c in self._children[v])) + ")"

        return ShapeDescriptor.from_codes(code(r) for r in self.roots())

    def __str__(self) -> str:
        parts = []
        for n in self.nodes:
            s = f"{n.id}"
            if n.parent is not None:
                s += f"<-{n.parent}"
            if n.gamma is not None:
                s += f"[{n.gamma}]"
            parts.append(s)
        return " ".join(parts)


def node_depth(tree: ExceptionalTree, id: int) -> int:
    """Depth counting the node itself, so a root has depth 1."""
    tree.node(id)
    return tree.depths[id - 1]


def total_transform(tree: ExceptionalTree, id: int, context: Optional[BlowupContext] = None) -> DivisorClass:
    """``E_i`` as a unit vector of the blow-up lattice."""
    tree.node(id)
    if context is None:
        context = BlowupContext.of(2, tree.p)
    if context.p != tree.p:
        raise ValueError(f"context has {context.p} blow-ups, tree has {tree.p} nodes")
    return context.exceptional(id)


def total_transform_expansion(tree: ExceptionalTree, id: int) -> list[int]:
    """Ids ``j`` with ``E_i = sum F^_j``: the descendants of ``i``."""
    return tree.descendants(id)


def proper_transform(tree: ExceptionalTree, id: int, context: Optional[BlowupContext] = None) -> DivisorClass:
    """``F^_i = E_i - sum over children j of E_j``."""
    if context is None:
        context = BlowupContext.of(2, tree.p)
    cls = total_transform(tree, id, context)
    for c in tree.children(id):
        cls = cls - context.exceptional(c)
    return cls


def beta_from_gamma(tree: ExceptionalTree) -> list[int]:
    gammas = tree.gammas()
    betas = list(gammas)
    # children have larger ids, so a reverse sweep accumulates subtrees
    for n in reversed(tree.nodes):
        if n.parent is not None:
            betas[n.parent - 1] += betas[n.id - 1]
    return betas


def is_minimal(tree: ExceptionalTree) -> bool:
    """No leaf is contracted: every leaf carries ``gamma >= 1``."""
    gammas = tree.gammas()
    return all(gammas[v - 1] >= 1 for v in tree.leaves())


def _pairs_ok(values: Sequence[int], bound: int) -> bool:
    top = sorted(values, reverse=True)[:2]
    return len(top) < 2 or top[0] + top[1] <= bound


def check_depth(tree: ExceptionalTree, deg: int) -> bool:
    if deg < 2:
        raise ValueError(f"deg must be >= 2, got {deg}")
    return tree.tree_depth <= deg - 2 and _pairs_ok(tree.component_depths(), deg - 2)


def check_leaf_pairs(tree: ExceptionalTree, deg: int) -> bool:
    if deg < 2:
        raise ValueError(f"deg must be >= 2, got {deg}")
    return _pairs_ok([tree.depths[v - 1] for v in tree.leaves()], deg - 2)


def check_width(tree: ExceptionalTree, deg: int) -> bool:
    if deg < 2:
        raise ValueError(f"deg must be >= 2, got {deg}")
    return tree.tree_depth != 1 or tree.p <= 8 * (deg - 1)


def shape_predicates_hold(tree: ExceptionalTree, deg: int) -> bool:
    if deg < 2:
        return False
    return check_depth(tree, deg) and check_leaf_pairs(tree, deg) and check_width(tree, deg)


@dataclass(frozen=True)
class TreeReport:
    depths: tuple[int, ...]
    tree_depth: int
    betas: Optional[tuple[int, ...]]
    minimal: Optional[bool]
    depth_ok: bool
    width_ok: bool
    leaf_pair_ok: bool

    @property
    def passed(self) -> bool:
        checks = [self.depth_ok, self.width_ok, self.leaf_pair_ok]
        if self.minimal is not None:
            checks.append(self.minimal)
        return all(checks)


def tree_report(tree: ExceptionalTree, deg: int) -> TreeReport:
    labeled = tree.labeled
    return TreeReport(
        depths=tree.depths,
        tree_depth=tree.tree_depth,
        betas=tuple(beta_from_gamma(tree)) if labeled else None,
        minimal=is_minimal(tree) if labeled else None,
        depth_ok=check_depth(tree, deg),
        width_ok=check_width(tree, deg),
        leaf_pair_ok=check_leaf_pairs(tree, deg),
    )


# -- shapes ------------------------------------------------------------------


def _parse_code(code: str) -> list:
    """Nested-parenthesis code to a nested list of children."""
    stack: list[list] = [[]]
    for ch in code:
        if ch == "(":
            stack.append([])
        elif ch == ")":
            if len(stack) < 2:
                raise ValueError(f"unbalanced shape code {code!r}")
            done = stack.pop()
            stack[-1].append(done)
        else:
            raise ValueError(f"bad character {ch!r} in shape code {code!r}")
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"shape code {code!r} is not a single rooted tree")
    return stack[0][0]


def _code_size(code: str) -> int:
    return code.count("(")


def _code_depth(code: str) -> int:
    cur = best = 0
    for ch in code:
        cur += 1 if ch == "(" else -1
        best = max(best, cur)
    return best


@dataclass(frozen=True, order=True)
class ShapeDescriptor:
    """Isomorphism class of a rooted forest.

    Each component is a nested-parenthesis code whose children are sorted,
    so equal forests have equal descriptors.
    """

    components: tuple[str, ...] = field(default=())

    @classmethod
    def from_codes(cls, codes: Iterable[str]) -> "ShapeDescriptor":
        return cls(tuple(sorted(codes, key=lambda c: (-_code_size(c), c))))

    @classmethod
    def parse(cls, text: str) -> "ShapeDescriptor":
        codes: list[str] = []
        text = text.strip()
        if not text:
            return cls()
        for part in text.split("+"):
            part = part.strip()
            count = 1
            if "*" in part:
                k, part = part.split("*", 1)
                count = int(k)
            tree = _parse_code(part)

            def canon(t: list) -> str:
                return "(" + "".join(sorted(canon(c) for c in t)) + ")"

            codes.extend([canon(tree)] * count)
        return cls.from_codes(codes)

    @property
    def size(self) -> int:
        return sum(_code_size(c) for c in self.components)

    @property
    def depth(self) -> int:
        return max((_code_depth(c) for c in self.components), default=0)

    def to_tree(self, gammas: Optional[Sequence[int]] = None) -> ExceptionalTree:
        """A tree of this shape; ids follow preorder so parents come first."""
        parents: list[Optional[int]] = []

        def walk(t: list, parent: Optional[int]) -> None:
            parents.append(parent)
            me = len(parents)
            for c in t:
                walk(c, me)

        for code in self.components:
            walk(_parse_code(code), None)
        return ExceptionalTree.from_parents(parents, gammas)

    def __str__(self) -> str:
        out = []
        i = 0
        comps = self.components
        while i < len(comps):
            j = i
            while j < len(comps) and comps[j] == comps[i]:
                j += 1
            out.append(comps[i] if j - i == 1 else f"{j - i}*{comps[i]}")
            i = j
        return " + ".join(out)


@dataclass(frozen=True)
class _Rooted:
    code: str
    size: int
    height: int
    leaf_top: tuple[int, ...]  # two deepest leaf depths, root at depth 1


def _top2(values: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(values, reverse=True)[:2])


@lru_cache(maxsize=None)
def _rooted_trees(height: int, max_size: int, leaf_bound: int) -> tuple[_Rooted, ...]:
    """Rooted trees of bounded height and size whose leaves pass the pair bound.

    A subtree violating the leaf-pair bound can never appear in a valid
    forest, since embedding only deepens its leaves.
    """
    if height < 1 or max_size < 1:
        return ()
    single = _Rooted("()", 1, 1, (1,))
    if height == 1:
        return (single,)
    subs = _rooted_trees(height - 1, max_size - 1, leaf_bound)
    out = [single]

    def extend(start: int, chosen: list[_Rooted], size: int, top: tuple[int, ...]):
        for idx in range(start, len(subs)):
            s = subs[idx]
            if size + s.size > max_size:
                continue
            new_top = _top2(top + tuple(d + 1 for d in s.leaf_top))
            if len(new_top) == 2 and new_top[0] + new_top[1] > leaf_bound:
                continue
            chosen.append(s)
            code = "(" + "".join(sorted(c.code for c in chosen)) + ")"
            out.append(
                _Rooted(code, size + s.size, 1 + max(c.height for c in chosen), new_top)
            )
            extend(idx, chosen, size + s.size, new_top)
            chosen.pop()

    extend(0, [], 1, ())
    # identical multisets are reached once, since indices are non-decreasing
    return tuple(out)


def iter_shapes(deg: int, p_max: int, p_min: int = 1) -> Iterator[ShapeDescriptor]:
    """Forests with ``p_min..p_max`` nodes passing the depth, leaf-pair and width bounds."""
    if deg < 3 or p_max < 1:
        return
    bound = deg - 2
    trees = sorted(_rooted_trees(bound, p_max, bound), key=lambda t: (-t.size, t.code))

    def extend(start: int, chosen: list[_Rooted], size: int, comp_top: tuple[int, ...], leaf_top: tuple[int, ...]):
        if chosen and size >= p_min:
            depth = comp_top[0]
            if depth != 1 or size <= 8 * (deg - 1):
                yield ShapeDescriptor.from_codes(t.code for t in chosen)
        for idx in range(start, len(trees)):
            t = trees[idx]
            if size + t.size > p_max:
                continue
            new_comp = _top2(comp_top + (t.height,))
            if len(new_comp) == 2 and sum(new_comp) > bound:
                continue
            new_leaf = _top2(leaf_top + t.leaf_top)
            if len(new_leaf) == 2 and sum(new_leaf) > bound:
                continue
            chosen.append(t)
            yield from extend(idx, chosen, size + t.size, new_comp, new_leaf)
            chosen.pop()

    yield from extend(0, [], 0, (), ())


def classify_shapes(deg: int, p_max: int) -> list[ShapeDescriptor]:
    """All admissible forest shapes with at most ``p_max`` nodes, canonically ordered."""
    if deg < 2:
        raise ValueError(f"deg must be >= 2, got {deg}")
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    return sorted(set(iter_shapes(deg, p_max)), key=lambda s: (s.size, str(s)))
