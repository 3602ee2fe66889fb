"""Admissibility of ``(g, deg, l)`` triples under a selectable set of constraints."""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

from .constraints import (
    BetaPartition,
    amerik_admits,
    amerik_score,
    enumerate_beta_partitions,
    iter_beta_partitions,
    lambda_candidates,
    partition_exists,
    square_root_degree,
)
from .trees import ExceptionalTree, ShapeDescriptor, iter_shapes, shape_predicates_hold

log = logging.getLogger(__name__)

DEFAULT_SHAPE_BUDGET = 8


class Reason(str, Enum):
    TRIVIAL_IDENTITY = "TrivialIdentity"
    NOT_SQUARE = "NotSquare"
    NO_LAMBDA = "NoLambda"
    MORPHISM_EXCLUDED = "MorphismExcluded"
    NO_PARTITION = "NoPartition"
    AMERIK_EXCLUDED = "AmerikExcluded"
    NO_TREE_SHAPE = "NoTreeShape"


_FLAGS = ("square", "divisibility", "partition", "amerik", "tree_shapes")


@dataclass(frozen=True)
class ConstraintProfile:
    name: str
    use_square: bool = True
    use_divisibility: bool = True
    use_partition: bool = True
    use_amerik: bool = False
    use_tree_shapes: bool = False

    @classmethod
    def resolve(cls, spec: "str | ConstraintProfile") -> "ConstraintProfile":
        """A built-in profile name, or a comma-separated subset of the constraint flags."""
        if isinstance(spec, ConstraintProfile):
            return spec
        if spec in PROFILES:
            return PROFILES[spec]
        flags = {f.strip() for f in spec.split(",") if f.strip()}
        unknown = flags - set(_FLAGS)
        if unknown or not flags:
            raise ValueError(
                f"unknown profile {spec!r}; use one of {sorted(PROFILES)} "
                f"or a comma-separated subset of {list(_FLAGS)}"
            )
        name = ",".join(f for f in _FLAGS if f in flags)
        return cls(name, **{f"use_{f}": f in flags for f in _FLAGS})

    def active(self) -> list[str]:
        return [f for f in _FLAGS if getattr(self, f"use_{f}")]

    def __le__(self, other: "ConstraintProfile") -> bool:
        return set(self.active()) <= set(other.active())


PROFILES = {
    "basic": ConstraintProfile("basic"),
    "amerik": ConstraintProfile("amerik", use_amerik=True),
    "full": ConstraintProfile("full", use_amerik=True, use_tree_shapes=True),
}


@dataclass(frozen=True)
class FeasibilityVerdict:
    g: int
    deg: int
    l: int
    profile: str
    admissible: bool
    reason: Optional[Reason] = None
    lambdas: tuple[int, ...] = ()
    n_value: Optional[int] = None
    witness_partition: Optional[BetaPartition] = None
    witness_shape: Optional[ShapeDescriptor] = None
    witness_tree: Optional[ExceptionalTree] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "deg": self.deg,
            "l": self.l,
            "profile": self.profile,
            "admissible": self.admissible,
            "reason": None if self.reason is None else self.reason.value,
            "lambda": list(self.lambdas),
            "N": self.n_value,
            "witness_partition": None if self.witness_partition is None else list(self.witness_partition.parts),
            "witness_shape": None if self.witness_shape is None else str(self.witness_shape),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeasibilityVerdict":
        part = data.get("witness_partition")
        shape = data.get("witness_shape")
        return cls(
            g=data["g"],
            deg=data["deg"],
            l=data["l"],
            profile=data["profile"],
            admissible=data["admissible"],
            reason=None if data.get("reason") is None else Reason(data["reason"]),
            lambdas=tuple(data.get("lambda") or ()),
            n_value=data.get("N"),
            witness_partition=None if part is None else BetaPartition(tuple(part)),
            witness_shape=None if shape is None else ShapeDescriptor.parse(shape),
        )


# -- witness trees ------------------------------------------------------------


@lru_cache(maxsize=256)
def _core_shapes(deg: int, k: int) -> tuple[ShapeDescriptor, ...]:
    """Forests on exactly ``k`` nodes with no isolated roots."""
    return tuple(
        s
        for s in sorted(set(iter_shapes(deg, k, p_min=k)), key=str)
        if s.size == k and "()" not in s.components
    )


def _label(tree: ExceptionalTree, core: int, values: Counter) -> Optional[dict[int, int]]:
    """Give core nodes ``1..core`` beta values with each parent at least the sum of its children."""
    order = list(range(core, 0, -1))  # children before parents
    assigned: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        need = sum(assigned[c] for c in tree.children(v))
        for x in sorted(values):
            if values[x] == 0 or x < need or x < 1:
                continue
            values[x] -= 1
            assigned[v] = x
            if rec(i + 1):
                return True
            values[x] += 1
            del assigned[v]
        return False

    return dict(assigned) if rec(0) else None


def witness_tree(
    g: int,
    deg: int,
    partition: "BetaPartition | Sequence[int]",
    budget: int = DEFAULT_SHAPE_BUDGET,
    allow_flat: bool = True,
) -> Optional[ExceptionalTree]:
    """A minimal labelled tree realising ``partition`` as its beta vector.

    The tree has one node per part. Shapes are tried from simplest up: the
    depth-one forest (unless ``allow_flat`` is off), then forests whose
    non-isolated part has ``2..budget`` nodes. Returns None when nothing
    within that budget passes the depth, leaf-pair and width bounds.
    ``g`` does not enter the shape bounds; it is accepted for symmetry with
    the other witness searches.
    """
    parts = tuple(sorted(partition.parts if isinstance(partition, BetaPartition) else partition, reverse=True))
    if any(b < 1 for b in parts):
        raise ValueError(f"beta values must be positive, got {parts}")
    p = len(parts)
    if deg < 3 or p == 0:
        return None
    flat = ShapeDescriptor.from_codes(["()"] * p)
    if allow_flat and shape_predicates_hold(flat.to_tree(), deg):
        return flat.to_tree(list(parts))
    for k in range(2, min(budget, p) + 1):
        for core in _core_shapes(deg, k):
            shape = ShapeDescriptor.from_codes(core.components + ("()",) * (p - k))
            tree = shape.to_tree()
            if not shape_predicates_hold(tree, deg):
                continue
            values = Counter(parts)
            betas = _label(tree, k, values)
            if betas is None:
                continue
            rest = sorted(values.elements(), reverse=True)
            for i, b in enumerate(rest, start=k + 1):
                betas[i] = b
            gammas = [betas[v] - sum(betas[c] for c in tree.children(v)) for v in range(1, p + 1)]
            return shape.to_tree(gammas)
    return None


# -- verdicts -----------------------------------------------------------------


def check(
    g: int,
    deg: int,
    l: int,
    profile: "str | ConstraintProfile" = "basic",
    shape_budget: int = DEFAULT_SHAPE_BUDGET,
) -> FeasibilityVerdict:
    """Apply the active constraints in order; the first failure is the verdict."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if deg < 1:
        raise ValueError(f"deg must be >= 1, got {deg}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    prof = ConstraintProfile.resolve(profile)
    base = dict(g=g, deg=deg, l=l, profile=prof.name)

    def fail(reason: Reason, **extra) -> FeasibilityVerdict:
        return FeasibilityVerdict(admissible=False, reason=reason, **base, **extra)

    if deg == 1 and l == 1:
        return fail(Reason.TRIVIAL_IDENTITY, lambdas=(1, -1), n_value=0)

    root = square_root_degree(deg)
    lambdas: tuple[int, ...] = ()
    if prof.use_square:
        if root is None:
            return fail(Reason.NOT_SQUARE)
        lambdas = (root, -root)
    if prof.use_divisibility:
        if root is None:
            return fail(Reason.NO_LAMBDA)
        lambdas = tuple(w.value for w in lambda_candidates(g, deg, l))
        if not lambdas:
            return fail(Reason.NO_LAMBDA)

    num = l * l - deg
    n_value = num // (2 * g - 2) if num % (2 * g - 2) == 0 else None
    partial = dict(lambdas=lambdas, n_value=n_value)

    witness: Optional[BetaPartition] = None
    if prof.use_partition:
        if n_value == 0:
            # no blow-up at all: phi is a morphism of degree > 1
            return fail(Reason.MORPHISM_EXCLUDED, **partial)
        if n_value is None or not partition_exists(n_value):
            return fail(Reason.NO_PARTITION, **partial)
        witness = next(iter_beta_partitions(n_value))

    n_ok = n_value is not None and n_value > 0
    # below deg 4 only depth-one forests fit, so the width bound caps p
    shape_cap = 8 * (deg - 1) if deg < 4 else None
    shape_ok = lambda part: witness_tree(g, deg, part, shape_budget) is not None  # noqa: E731
    tree: Optional[ExceptionalTree] = None

    if prof.use_amerik:
        found = amerik_admits(
            g, deg, n_value, shape_constraints=True, shape_ok=shape_ok, p_cap=shape_cap
        ) if n_ok else None
        if found is None:
            return fail(Reason.AMERIK_EXCLUDED, **partial)
        witness = found

    if prof.use_tree_shapes:
        found = None
        if n_ok:
            target = 24 * (deg - 1) if prof.use_amerik else None
            for part in iter_beta_partitions(n_value, shape_cap):
                if target is not None and amerik_score(g, part) < target:
                    continue
                tree = witness_tree(g, deg, part, shape_budget)
                if tree is not None:
                    found = part
                    break
        if found is None:
            return fail(Reason.NO_TREE_SHAPE, **partial)
        witness = found

    return FeasibilityVerdict(
        admissible=True,
        witness_partition=witness,
        witness_shape=None if tree is None else tree.shape(),
        witness_tree=tree,
        **base,
        **partial,
    )


@dataclass(frozen=True)
class AdmissibilityTable:
    g: int
    deg: int
    l_max: int
    profile: str
    admissible_l: tuple[int, ...]
    verdicts: tuple[FeasibilityVerdict, ...]

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "deg": self.deg,
            "l_max": self.l_max,
            "profile": self.profile,
            "admissible_l": list(self.admissible_l),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def _check_args(args: tuple) -> FeasibilityVerdict:
    return check(*args)


def admissible_l(
    g: int,
    deg: int,
    l_max: int,
    profile: "str | ConstraintProfile" = "basic",
    workers: int = 1,
) -> AdmissibilityTable:
    if l_max < 2:
        raise ValueError(f"l_max must be >= 2, got {l_max}")
    prof = ConstraintProfile.resolve(profile)
    jobs = [(g, deg, l, prof) for l in range(2, l_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_check_args, jobs))
    else:
        verdicts = [_check_args(j) for j in jobs]
    return AdmissibilityTable(
        g=g,
        deg=deg,
        l_max=l_max,
        profile=prof.name,
        admissible_l=tuple(v.l for v in verdicts if v.admissible),
        verdicts=tuple(verdicts),
    )


def first_admissible(
    g: int, deg: int, count: int, profile: "str | ConstraintProfile" = "basic", l_limit: int = 500
) -> list[int]:
    """The ``count`` smallest admissible ``l >= 2``, scanning no further than ``l_limit``."""
    out = []
    for l in range(2, l_limit + 1):
        if check(g, deg, l, profile).admissible:
            out.append(l)
            if len(out) == count:
                break
    return out


# -- comparison with the published tables -------------------------------------

PAPER_ROWS: dict[tuple[int, int], tuple[int, ...]] = {
    (4, 2): (6, 8, 10),
    (4, 3): (6, 10, 14),
    (4, 4): (8, 10, 14),
    (4, 5): (6, 10, 14),
    (9, 2): (5, 7, 9),
    (9, 3): (5, 7, 9),
    (9, 4): (9, 15, 21),
    (9, 5): (5, 11, 13, 19),
}

# The Chern-class bound is only guaranteed for deg 4, where every
# admissible tree has total depth at most 2.
ROW_PROFILE = {4: "amerik", 9: "basic"}


@dataclass(frozen=True)
class ProfileResult:
    profile: str
    computed: tuple[int, ...]
    match: bool

    @property
    def status(self) -> str:
        return "MATCH" if self.match else "MISMATCH"


@dataclass(frozen=True)
class ReportRow:
    deg: int
    g: int
    paper: tuple[int, ...]
    row_profile: str
    results: tuple[ProfileResult, ...]
    note: str = ""

    def result(self, profile: str) -> ProfileResult:
        for r in self.results:
            if r.profile == profile:
                return r
        raise KeyError(profile)

    @property
    def status(self) -> str:
        return self.result(self.row_profile).status


@dataclass(frozen=True)
class PaperReport:
    l_terms: int
    rows: tuple[ReportRow, ...]
    narrative: tuple[str, ...]

    @property
    def flagged(self) -> list[ReportRow]:
        return [r for r in self.rows if r.status != "MATCH"]

    def to_dict(self) -> dict:
        return {
            "l_terms": self.l_terms,
            "rows": [
                {
                    "deg": r.deg,
                    "g": r.g,
                    "paper": list(r.paper),
                    "row_profile": r.row_profile,
                    "status": r.status,
                    "note": r.note,
                    "profiles": {
                        p.profile: {"computed": list(p.computed), "status": p.status} for p in r.results
                    },
                }
                for r in self.rows
            ],
            "narrative": list(self.narrative),
        }


def _exclusion_note(g: int, deg: int, missing: list[int], profile: str) -> str:
    notes = []
    for l in missing:
        v = check(g, deg, l, profile)
        if v.reason is Reason.AMERIK_EXCLUDED and v.n_value:
            best = max(amerik_score(g, p) for p in enumerate_beta_partitions(v.n_value))
            notes.append(
                f"l={l}: N={v.n_value}, best p+4(g-1)*sum(beta) is {best} < {24 * (deg - 1)}"
            )
        else:
            notes.append(f"l={l}: {v.reason.value if v.reason else 'admissible'}")
    return "; ".join(notes)


def paper_table_report(l_terms: int = 3) -> PaperReport:
    if l_terms < 3:
        raise ValueError(f"l_terms must be >= 3, got {l_terms}")
    rows = []
    narrative = []
    for (deg, g), paper in PAPER_ROWS.items():
        m = min(len(paper), l_terms)
        results = []
        for name in PROFILES:
            computed = tuple(first_admissible(g, deg, l_terms, name))
            results.append(ProfileResult(name, computed, computed[:m] == paper[:m]))
        row_profile = ROW_PROFILE[deg]
        chosen = next(r for r in results if r.profile == row_profile)
        note = ""
        if not chosen.match:
            missing = sorted(set(paper[:m]) - set(chosen.computed))
            note = _exclusion_note(g, deg, missing, row_profile)
        rows.append(ReportRow(deg, g, paper, row_profile, tuple(results), note))
        matching = [r.profile for r in results if r.match]
        line = f"deg={deg} g={g}: paper {', '.join(map(str, paper))}; "
        line += f"reproduced by {', '.join(matching)}" if matching else "reproduced by no profile"
        line += f"; row profile {row_profile} -> {chosen.status}"
        if note:
            line += f" ({note})"
        narrative.append(line)
    log.debug("paper report built with %d rows", len(rows))
    return PaperReport(l_terms, tuple(rows), tuple(narrative))
