"""Shared corpus generators, matrix oracles, and hypothesis configuration."""

from __future__ import annotations

import math
import random

import numpy as np
from hypothesis import HealthCheck, settings

from sat2ct.formula import Formula, length
from sat2ct.revcomp import ReversibleCircuit, simulate_reversible

settings.register_profile(
    "det",
    derandomize=True,
    max_examples=80,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("det")


def random_formula(
    rng: random.Random,
    n: int,
    m: int,
    weights: tuple[float, float, float] = (0.2, 0.4, 0.4),
) -> Formula:
    """Random formula with up to m clauses (duplicates merge away)."""
    clauses = []
    for _ in range(m):
        k = min(rng.choices((1, 2, 3), weights=weights)[0], n)
        vars_ = rng.sample(range(1, n + 1), k)
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return Formula.from_ints(n, clauses)


def random_formula_with_length(rng: random.Random, n: int, target: int) -> Formula:
    """Random formula with exactly the given length (sum of widths minus 1).

    Clause deduplication can shrink a draw, so sample until the target
    holds; infeasible (n, target) pairs would loop forever, so callers
    stay within n >= 2 for target > 1.
    """
    while True:
        widths: list[int] = []
        remaining = target + 1
        while remaining > 0:
            k = min(rng.randint(1, 3), n, remaining)
            widths.append(k)
            remaining -= k
        clauses = []
        for k in widths:
            vars_ = rng.sample(range(1, n + 1), k)
            clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
        formula = Formula.from_ints(n, clauses)
        if length(formula) == target:
            return formula


def all_formulas_up_to(n_max: int, m_max: int) -> list[Formula]:
    """Every formula (as a clause set) with n <= n_max and 1 <= m <= m_max."""
    from itertools import combinations

    out: list[Formula] = []
    for n in range(1, n_max + 1):
        clauses: list[tuple[int, ...]] = []
        for size in (1, 2, 3):
            if size > n:
                continue
            for vars_ in combinations(range(1, n + 1), size):
                for signs in range(1 << size):
                    clauses.append(
                        tuple(
                            v if not (signs >> i) & 1 else -v
                            for i, v in enumerate(vars_)
                        )
                    )
        for m in range(1, m_max + 1):
            for chosen in combinations(clauses, m):
                out.append(Formula.from_ints(n, [list(c) for c in chosen]))
    return out
