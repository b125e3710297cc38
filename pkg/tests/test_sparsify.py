"""Sunflower detection, splitting, and the sparsification recursion."""

import random

import numpy as np
import pytest

from conftest import random_formula
from sat2ct.errors import (
    EmptyFormula,
    InvalidSunflower,
    RecursionBudgetExceeded,
)
from sat2ct.formula import Formula, emit_dimacs, length, reduce, satisfying_mask
from sat2ct.sparsify import (
    SunflowerFind,
    ThetaParams,
    check_leaf_bounds,
    find_good_sunflower,
    sparsify,
    split,
)


def leaf_disjunction_mask(leaves):
    acc = None
    for leaf in leaves:
        m = satisfying_mask(leaf)
        acc = m if acc is None else (acc | m)
    return acc


# ---------------------------------------------------------------------------
# ThetaParams
# ---------------------------------------------------------------------------


def test_theta_validation():
    ThetaParams(2.5, 7.5)  # non-integral thresholds are fine
    with pytest.raises(ValueError):
        ThetaParams(0.5, 2)
    with pytest.raises(ValueError):
        ThetaParams(3, 2)


# ---------------------------------------------------------------------------
# find_good_sunflower
# ---------------------------------------------------------------------------


def test_find_21_sunflower():
    phi = Formula.from_ints(4, [[1, 2], [1, 3], [1, -4]])
    found = find_good_sunflower(phi, ThetaParams(3, 3))
    assert found is not None
    assert found.kind == (2, 1)
    assert found.heart.encs == (2,)  # heart {x1}
    assert found.size == 3


def test_find_nothing_below_threshold():
    phi = Formula.from_ints(4, [[1, 2], [1, 3], [1, -4]])
    assert find_good_sunflower(phi, ThetaParams(4, 4)) is None


def test_priority_21_beats_31():
    # (3,1)-sunflower of size 4 around x2 with pairwise-disjoint petals,
    # plus a (2,1)-sunflower of size 2 around x1: the (2,1) must win.
    phi = Formula.from_ints(
        6,
        [[2, 3, 4], [2, 5, 6], [2, -3, -4], [2, -5, -6], [1, 5], [1, 6]],
    )
    thetas = ThetaParams(2, 4)
    found = find_good_sunflower(phi, thetas)
    assert found.kind == (2, 1)
    assert found.heart.encs == (2,)
    # without the 2-clauses the (3,1) is found
    phi31 = Formula.from_ints(6, [[2, 3, 4], [2, 5, 6], [2, -3, -4], [2, -5, -6]])
    found31 = find_good_sunflower(phi31, thetas)
    assert found31.kind == (3, 1)
    assert found31.heart.encs == (4,)
    assert found31.size == 4


def test_find_32_sunflower():
    phi = Formula.from_ints(5, [[1, 2, 3], [1, 2, -4], [1, 2, 5]])
    found = find_good_sunflower(phi, ThetaParams(3, 5))
    assert found.kind == (3, 2)
    assert found.heart.encs == (2, 4)  # {x1, x2}


def test_31_group_with_larger_heart_is_reported_as_32():
    # all 3-clauses containing x1 share the pair {x1, x2}: the (3,1) scan
    # must reject the group and the (3,2) scan takes it.
    phi = Formula.from_ints(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    found = find_good_sunflower(phi, ThetaParams(3, 3))
    assert found.kind == (3, 2)
    assert found.heart.encs == (2, 4)


def test_tie_break_smallest_heart():
    phi = Formula.from_ints(4, [[2, 3], [2, 4], [-1, 3], [-1, 4]])
    found = find_good_sunflower(phi, ThetaParams(2, 2))
    # hearts {not-x1} (enc 3) and {x2} (enc 4) both qualify; enc 3 wins
    assert found.heart.encs == (3,)


# ---------------------------------------------------------------------------
# split
# ---------------------------------------------------------------------------


def test_split_example():
    phi = Formula.from_ints(3, [[1, 2], [1, 3]])
    found = find_good_sunflower(phi, ThetaParams(2, 2))
    heart_branch, petal_branch = split(phi, found)
    assert {c.encs for c in heart_branch.clauses} == {(2,)}
    assert {c.encs for c in petal_branch.clauses} == {(4,), (6,)}


def test_split_pointwise_identity_and_length_monotonicity():
    rng = random.Random(3)
    checked = 0
    while checked < 25:
        phi = random_formula(rng, rng.randint(3, 8), rng.randint(4, 14))
        phi = reduce(phi)
        if phi.m == 0:
            continue
        found = find_good_sunflower(phi, ThetaParams(2, 3))
        if found is None:
            continue
        h, p = split(phi, found)
        root = satisfying_mask(phi)
        assert np.array_equal(root, satisfying_mask(h) | satisfying_mask(p))
        assert length(h) <= length(phi)
        assert length(p) <= length(phi)
        checked += 1


def test_split_rejects_invalid_sunflower():
    phi = Formula.from_ints(3, [[1, 2], [1, 3]])
    good = find_good_sunflower(phi, ThetaParams(2, 2))
    with pytest.raises(InvalidSunflower):
        split(phi, SunflowerFind((2, 1), (0, 5), good.heart))
    with pytest.raises(InvalidSunflower):
        split(phi, SunflowerFind((2, 1), (0, 1), Formula.from_ints(3, [[2]]).clauses[0]))
    with pytest.raises(InvalidSunflower):
        split(phi, SunflowerFind((3, 2), (0, 1), good.heart))


# ---------------------------------------------------------------------------
# sparsify
# ---------------------------------------------------------------------------


def test_sparsify_immediate_leaf():
    phi = Formula.from_ints(3, [[1, 2, 3]])
    result = sparsify(phi, ThetaParams(2, 4))
    assert result.leaves == (reduce(phi),)
    assert result.stats.node_count == 1
    assert result.stats.leaf_count == 1
    assert result.stats.max_depth == 0


def test_sparsify_example_disjunction():
    phi = Formula.from_ints(4, [[1, 2], [1, 3], [1, -4]])
    result = sparsify(phi, ThetaParams(2, 4))
    assert len(result.leaves) >= 2
    assert np.array_equal(leaf_disjunction_mask(result.leaves), satisfying_mask(phi))


def test_sparsify_rejects_empty():
    with pytest.raises(EmptyFormula):
        sparsify(Formula(3, ()), ThetaParams(2, 4))


def test_sparsify_budget():
    phi = Formula.from_ints(4, [[1, 2], [1, 3], [1, -4]])
    with pytest.raises(RecursionBudgetExceeded):
        sparsify(phi, ThetaParams(2, 4), node_budget=2)


def test_sparsify_deterministic_byte_for_byte():
    rng = random.Random(17)
    phi = random_formula(rng, 9, 25, weights=(0.1, 0.3, 0.6))
    a = sparsify(phi, ThetaParams(2, 4))
    b = sparsify(phi, ThetaParams(2, 4))
    assert [emit_dimacs(x) for x in a.leaves] == [emit_dimacs(x) for x in b.leaves]
    assert a.stats == b.stats


def test_sparsify_invariants_on_corpus():
    rng = random.Random(23)
    for _ in range(15):
        n = rng.randint(3, 9)
        phi = random_formula(rng, n, rng.randint(n, 3 * n), weights=(0.1, 0.3, 0.6))
        for thetas in (ThetaParams(2, 4), ThetaParams(3, 8)):
            result = sparsify(phi, thetas)
            # pointwise disjunction identity against the brute-force oracle
            assert np.array_equal(
                leaf_disjunction_mask(result.leaves), satisfying_mask(phi)
            )
            # no leaf contains a good sunflower; edge monotone lengths
            root_len = length(reduce(phi))
            for leaf in result.leaves:
                assert find_good_sunflower(leaf, thetas) is None
                assert length(leaf) <= root_len
            # immigrant bound from the recursion lemma
            assert result.stats.max_r2 <= 2 * thetas.theta1 - 1
            assert result.stats.leaf_count <= result.stats.node_count


def test_length_monotone_along_every_edge():
    rng = random.Random(29)
    phi = reduce(random_formula(rng, 8, 20, weights=(0.1, 0.3, 0.6)))
    thetas = ThetaParams(2, 4)
    queue = [phi]
    edges = 0
    while queue:
        node = queue.pop()
        found = find_good_sunflower(node, thetas)
        if found is None:
            continue
        h, p = split(node, found)
        assert length(h) <= length(node)
        assert length(p) <= length(node)
        edges += 2
        queue.extend((h, p))
    assert edges > 0


def test_contradictory_units_not_pruned():
    # both unit polarities may coexist in a branch; leaf solving catches it
    phi = Formula.from_ints(2, [[1], [-1], [1, 2]])
    result = sparsify(phi, ThetaParams(2, 4))
    assert all(satisfying_mask(leaf).sum() == 0 for leaf in result.leaves)


# ---------------------------------------------------------------------------
# check_leaf_bounds
# ---------------------------------------------------------------------------


def test_bounds_single_leaf():
    phi = Formula.from_ints(3, [[1, 2, 3]])
    result = sparsify(phi, ThetaParams(2, 4))
    report = check_leaf_bounds(result, phi.n)
    assert report.all_ok
    names = [c.name for c in report.checks]
    assert names == ["max_leaf_length", "log2_leaf_count", "max_depth"]


def test_bounds_random_instance_and_bound_values():
    rng = random.Random(41)
    phi = random_formula(rng, 10, 40, weights=(0.0, 0.15, 0.85))
    result = sparsify(phi, ThetaParams(2, 4))
    report = check_leaf_bounds(result, 10)
    assert report.all_ok
    length_check = report.checks[0]
    assert length_check.bound == 2 * (2 + 4) * 10 == 120
    depth_check = report.checks[2]
    assert depth_check.bound == 4 * 2 * 10
