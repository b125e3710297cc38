"""Sunflower-driven 3-SAT sparsification with recursion-tree diagnostics.

A (k,h)-sunflower is a set of k-literal clauses whose exact common
intersection (the heart) has h literals; the per-clause remainders are the
petals. A sunflower is *good* when it is a (2,1)- or (3,2)-sunflower of
size >= theta1, or a (3,1)-sunflower of size >= theta2. Splitting on a
good sunflower branches the formula into a heart instance and a petal
instance whose disjunction equals the original pointwise; recursing until
no good sunflower remains yields the leaf list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyFormula, InvalidSunflower, RecursionBudgetExceeded
from .formula import Clause, Formula, Literal, length, reduce

DEFAULT_NODE_BUDGET = 10_000_000

# priority order of sunflower kinds: (clause size k, heart size h)
KIND_2_1 = (2, 1)
KIND_3_2 = (3, 2)
KIND_3_1 = (3, 1)


@dataclass(frozen=True)
class ThetaParams:
    """Size thresholds: (2,1)/(3,2)-sunflowers need theta1, (3,1) need theta2."""

    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        if not 1 <= self.theta1 <= self.theta2:
            raise ValueError(
                f"need 1 <= theta1 <= theta2, got ({self.theta1}, {self.theta2})"
            )


@dataclass(frozen=True)
class SunflowerFind:
    kind: tuple[int, int]
    clause_ids: tuple[int, ...]
    heart: Clause

    @property
    def size(self) -> int:
        return len(self.clause_ids)


@dataclass(frozen=True)
class RecursionStats:
    node_count: int
    leaf_count: int
    max_depth: int
    max_r2: int
    immigrant_1_total: int
    immigrant_2_total: int
    petal_steps_per_path_max: int


@dataclass(frozen=True)
class SparsifyResult:
    leaves: tuple[Formula, ...]
    stats: RecursionStats
    thetas: ThetaParams


def _scan_groups(
    groups: dict, kind: tuple[int, int], threshold: float
) -> SunflowerFind | None:
    """Pick the qualifying candidate with the smallest encoded heart key.

    Each group holds ALL clauses sharing the key; the candidate is kept
    only when the exact intersection of the members equals the key, i.e.
    the heart size matches the kind. Larger hearts belong to a
    higher-priority kind and are found by that scan instead.
    """
    _, h = kind
    for key in sorted(groups):
        members = groups[key]
        if len(members) < threshold:
            continue
        heart_encs = frozenset.intersection(*(c.enc_set for c, _ in members))
        if len(heart_encs) != h:
            continue
        key_encs = key if isinstance(key, tuple) else (key,)
        if heart_encs != frozenset(key_encs):
            continue
        ids = tuple(sorted(i for _, i in members))
        heart = Clause(tuple(Literal.from_enc(e) for e in sorted(heart_encs)))
        return SunflowerFind(kind, ids, heart)
    return None


def find_good_sunflower(
    formula: Formula, thetas: ThetaParams
) -> SunflowerFind | None:
    """Highest-priority good sunflower, or None when the formula is a leaf.

    Priority: (2,1) before (3,2) before (3,1). Within a class the
    candidate with the smallest canonically-encoded heart wins.
    """
    by_lit_2: dict[int, list[tuple[Clause, int]]] = {}
    by_pair_3: dict[tuple[int, int], list[tuple[Clause, int]]] = {}
    by_lit_3: dict[int, list[tuple[Clause, int]]] = {}
    for i, c in enumerate(formula.clauses):
        encs = c.encs
        if len(encs) == 2:
            for e in encs:
                by_lit_2.setdefault(e, []).append((c, i))
        elif len(encs) == 3:
            for e in encs:
                by_lit_3.setdefault(e, []).append((c, i))
            for pair in combinations(encs, 2):
                by_pair_3.setdefault(pair, []).append((c, i))

    for groups, kind, threshold in (
        (by_lit_2, KIND_2_1, thetas.theta1),
        (by_pair_3, KIND_3_2, thetas.theta1),
        (by_lit_3, KIND_3_1, thetas.theta2),
    ):
        found = _scan_groups(groups, kind, threshold)
        if found is not None:
            return found
    return None


def _validate(formula: Formula, s: SunflowerFind) -> tuple[Clause, ...]:
    k, h = s.kind
    if (k, h) not in (KIND_2_1, KIND_3_2, KIND_3_1):
        raise InvalidSunflower(f"unknown sunflower kind {s.kind}")
    if len(set(s.clause_ids)) != len(s.clause_ids) or not s.clause_ids:
        raise InvalidSunflower("clause ids must be nonempty and distinct")
    try:
        members = tuple(formula.clauses[i] for i in s.clause_ids)
    except IndexError as exc:
        raise InvalidSunflower("clause id out of range") from exc
    if any(len(c) != k for c in members):
        raise InvalidSunflower(f"members must all have size {k}")
    heart_encs = frozenset.intersection(*(c.enc_set for c in members))
    if heart_encs != s.heart.enc_set or len(heart_encs) != h:
        raise InvalidSunflower("heart is not the exact intersection of the members")
    return members


def split(formula: Formula, s: SunflowerFind) -> tuple[Formula, Formula]:
    """Branch on a sunflower: (heart instance, petal instance), both reduced.

    The heart instance replaces the members by the single heart clause;
    the petal instance replaces each member by member-minus-heart. Their
    pointwise disjunction equals the input formula.
    """
    members = _validate(formula, s)
    member_set = set(s.clause_ids)
    rest = tuple(c for i, c in enumerate(formula.clauses) if i not in member_set)
    heart_branch = Formula(formula.n, rest + (s.heart,))
    petals = tuple(
        Clause(tuple(l for l in c.literals if l.enc not in s.heart.enc_set))
        for c in members
    )
    petal_branch = Formula(formula.n, rest + petals)
    return reduce(heart_branch), reduce(petal_branch)


def _pairwise_intersecting_max(immigrant_2: list[frozenset[int]]) -> int:
    """Largest pairwise-intersecting family among immigrant 2-clauses.

    A pairwise-intersecting family of 2-element sets is either a star
    (all share one literal) or a triangle of 3, so the exact maximum is
    cheap to compute.
    """
    if not immigrant_2:
        return 0
    star: dict[int, int] = {}
    for encs in immigrant_2:
        for e in encs:
            star[e] = star.get(e, 0) + 1
    best = max(star.values())
    if best < 3 and len(immigrant_2) >= 3:
        present = set(immigrant_2)
        for a, b in combinations(immigrant_2, 2):
            shared = a & b
            if len(shared) == 1 and frozenset(a ^ b) in present:
                return 3
    return best


def sparsify(
    formula: Formula,
    thetas: ThetaParams,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SparsifyResult:
    """Depth-first recursion on good sunflowers, heart branch first.

    The root is reduced before recursion (harmless by idempotence).
    Leaves are collected in deterministic depth-first order; immigrant
    clauses (clauses absent from the root) are tracked for diagnostics.
    """
    if formula.m == 0:
        raise EmptyFormula("cannot sparsify an empty formula")
    root = reduce(formula)
    root_set = root.clause_set

    leaves: list[Formula] = []
    node_count = 0
    max_depth = 0
    max_r2 = 0
    immigrant_1_total = 0
    immigrant_2_total = 0
    petal_max = 0

    # stack entries: (formula, depth, petal_steps_on_path)
    stack: list[tuple[Formula, int, int]] = [(root, 0, 0)]
    while stack:
        node, depth, petal_steps = stack.pop()
        node_count += 1
        if node_count > node_budget:
            raise RecursionBudgetExceeded(
                f"recursion visited more than {node_budget} nodes"
            )
        max_depth = max(max_depth, depth)
        immigrant_2 = [
            c.enc_set for c in node.clauses if len(c) == 2 and c not in root_set
        ]
        max_r2 = max(max_r2, _pairwise_intersecting_max(immigrant_2))

        found = find_good_sunflower(node, thetas)
        if found is None:
            leaves.append(node)
            petal_max = max(petal_max, petal_steps)
            continue
        heart_branch, petal_branch = split(node, found)
        for child in (heart_branch, petal_branch):
            for c in child.clause_set - node.clause_set - root_set:
                if len(c) == 1:
                    immigrant_1_total += 1
                elif len(c) == 2:
                    immigrant_2_total += 1
        # petal pushed first so the heart branch is explored first
        stack.append((petal_branch, depth + 1, petal_steps + 1))
        stack.append((heart_branch, depth + 1, petal_steps))

    stats = RecursionStats(
        node_count=node_count,
        leaf_count=len(leaves),
        max_depth=max_depth,
        max_r2=max_r2,
        immigrant_1_total=immigrant_1_total,
        immigrant_2_total=immigrant_2_total,
        petal_steps_per_path_max=petal_max,
    )
    return SparsifyResult(tuple(leaves), stats, thetas)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    observed: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class BoundReport:
    checks: tuple[BoundCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "all_ok": self.all_ok,
            "checks": [
                {"name": c.name, "observed": c.observed, "bound": c.bound, "ok": c.ok}
                for c in self.checks
            ],
        }


def check_leaf_bounds(result: SparsifyResult, n: int) -> BoundReport:
    """Compare the run against its guarantees: leaf length < 2(t1+t2)n,
    leaf count <= 2^(gamma*n), recursion depth < 4*t1*n.

    A failed check indicates an implementation bug, not a bad input.
    """
    from .bounds import gamma  # local import; bounds imports ThetaParams from here

    t = result.thetas
    max_len = max(length(leaf) for leaf in result.leaves)
    len_bound = 2 * (t.theta1 + t.theta2) * n
    log2_leaves = math.log2(result.stats.leaf_count)
    gamma_n = gamma(t) * n
    depth_bound = 4 * t.theta1 * n
    checks = (
        BoundCheck("max_leaf_length", max_len, len_bound, max_len < len_bound),
        BoundCheck("log2_leaf_count", log2_leaves, gamma_n, log2_leaves <= gamma_n),
        BoundCheck(
            "max_depth",
            result.stats.max_depth,
            depth_bound,
            result.stats.max_depth < depth_bound,
        ),
    )
    return BoundReport(checks)
