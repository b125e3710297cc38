"""Numeric lab for the hardness constants.

Reproduces the explicit sparsification coefficients and the exponent
arithmetic that turns a per-T-gate simulation cost into a 3-SAT running
time: the leaf-length coefficient eta = 2*(theta1+theta2), the leaf-count
coefficient gamma = 4*theta1*H(1/(4*theta1^2) + 1/theta2), and the budget
comparison against log2(1.3) bits per variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import DomainError, EmptyGrid, Overflow
from .sparsify import ThetaParams

# the 7-T Toffoli decomposition and the tidy doubling give 14 T-gates per
# unit of formula length; the headline simulator/solver exponents
T_GATES_PER_LENGTH = 14
SIM_EXPONENT_PER_T = 2.2451e-8
SOLVER_EXPONENT_PER_LENGTH = 3.1432e-7
DEFAULT_BUDGET_BITS = math.log2(1.3)

# reference operating point for the explicit-constant reduction
DEFAULT_THETA1 = 109.395
DEFAULT_THETA2 = 58367.2

_EXACT_SUM_CAP = 1_000_000


def binary_entropy(p: float) -> float:
    """H(p) = -p*log2(p) - (1-p)*log2(1-p), with H(0) = H(1) = 0."""
    if not 0 <= p <= 1:
        raise DomainError(f"entropy argument must lie in [0, 1], got {p}")
    if p in (0, 1):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def eta(thetas: ThetaParams) -> float:
    """Leaf-length coefficient per variable: 2*(theta1 + theta2)."""
    return 2 * (thetas.theta1 + thetas.theta2)


def _gamma_argument(thetas: ThetaParams) -> float:
    return 1 / (4 * thetas.theta1**2) + 1 / thetas.theta2


def gamma(thetas: ThetaParams) -> float:
    """log2 leaf-count coefficient per variable: 4*t1*H(1/(4*t1^2) + 1/t2)."""
    p = _gamma_argument(thetas)
    if p >= 1:
        raise DomainError(f"entropy argument {p} >= 1 for thetas {thetas}")
    return 4 * thetas.theta1 * binary_entropy(p)


def leafcount_bound_check(thetas: ThetaParams, n: int) -> bool:
    """Exact check of the binomial leaf-count inequality at (thetas, n):

        sum_{i=0}^{floor(n/t1 + 4*t1*n/t2)} C(floor(4*t1*n), i) <= 2^(gamma*n)

    The left side is exact big-integer arithmetic; the right side is
    evaluated with 50-digit precision so no float rounding can flip the
    comparison.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    top = math.floor(4 * thetas.theta1 * n)
    if top > _EXACT_SUM_CAP:
        raise Overflow(f"binomial top {top} exceeds exact-evaluation cap")
    cap = math.floor(n / thetas.theta1 + 4 * thetas.theta1 * n / thetas.theta2)
    total = sum(math.comb(top, i) for i in range(min(cap, top) + 1))
    with mp.workdps(50):
        t1, t2 = mp.mpf(thetas.theta1), mp.mpf(thetas.theta2)
        p = 1 / (4 * t1**2) + 1 / t2
        h = -p * mp.log(p, 2) - (1 - p) * mp.log(1 - p, 2)
        rhs_log2 = 4 * t1 * h * n
        return mp.log(mp.mpf(total), 2) <= rhs_log2


@dataclass(frozen=True)
class ExponentReport:
    """Composed running-time exponents, in bits per variable.

    ``total_exponent`` is the structural reading a*eta + gamma
    (2^(gamma*n) instances, each solved in 2^(a*eta*n) time); the
    product reading a*(eta + gamma) is reported alongside because the
    two differ wildly and only one can be meant.
    """

    thetas: ThetaParams
    a: float
    eta: float
    gamma: float
    total_exponent: float
    total_exponent_product_reading: float
    budget: float

    @property
    def within_budget(self) -> bool:
        return self.total_exponent < self.budget

    @property
    def within_budget_product_reading(self) -> bool:
        return self.total_exponent_product_reading < self.budget

    def to_json(self) -> dict:
        return {
            "thetas": {"theta1": self.thetas.theta1, "theta2": self.thetas.theta2},
            "a": self.a,
            "eta": self.eta,
            "gamma": self.gamma,
            "total_exponent": self.total_exponent,
            "total_exponent_product_reading": self.total_exponent_product_reading,
            "budget": self.budget,
            "within_budget": self.within_budget,
            "within_budget_product_reading": self.within_budget_product_reading,
        }


def compose_exponent(
    a: float, thetas: ThetaParams, budget: float = DEFAULT_BUDGET_BITS
) -> ExponentReport:
    """Combine a per-length solver exponent with the sparsification cost."""
    if a < 0:
        raise DomainError(f"per-length exponent must be >= 0, got {a}")
    e, g = eta(thetas), gamma(thetas)
    return ExponentReport(
        thetas=thetas,
        a=a,
        eta=e,
        gamma=g,
        total_exponent=a * e + g,
        total_exponent_product_reading=a * (e + g),
        budget=budget,
    )


@dataclass(frozen=True)
class ConsistencyReport:
    lowering_factor: int
    per_t_exponent: float
    product: float
    per_length_exponent: float
    rel_deviation: float
    tolerance: float
    ok: bool
    budget_bits: float

    def to_json(self) -> dict:
        return {
            "lowering_factor": self.lowering_factor,
            "per_t_exponent": self.per_t_exponent,
            "product": self.product,
            "per_length_exponent": self.per_length_exponent,
            "rel_deviation": self.rel_deviation,
            "tolerance": self.tolerance,
            "ok": self.ok,
            "budget_bits": self.budget_bits,
        }


def tcount_constant_check(tolerance: float = 3e-4) -> ConsistencyReport:
    """Audit the 14x relation between the per-T and per-length exponents."""
    product = T_GATES_PER_LENGTH * SIM_EXPONENT_PER_T
    rel = abs(product - SOLVER_EXPONENT_PER_LENGTH) / SOLVER_EXPONENT_PER_LENGTH
    return ConsistencyReport(
        lowering_factor=T_GATES_PER_LENGTH,
        per_t_exponent=SIM_EXPONENT_PER_T,
        product=product,
        per_length_exponent=SOLVER_EXPONENT_PER_LENGTH,
        rel_deviation=rel,
        tolerance=tolerance,
        ok=rel <= tolerance,
        budget_bits=DEFAULT_BUDGET_BITS,
    )


@dataclass(frozen=True)
class OptimizationResult:
    best: ExponentReport
    evaluations: int
    reference: ExponentReport | None = None

    @property
    def reference_within_1pct(self) -> bool | None:
        """Whether the reference objective is within 1% of the optimum found."""
        if self.reference is None:
            return None
        if self.best.total_exponent == 0:
            return self.reference.total_exponent == 0
        return (
            self.reference.total_exponent
            <= 1.01 * self.best.total_exponent
        )

    def to_json(self) -> dict:
        out = {"best": self.best.to_json(), "evaluations": self.evaluations}
        if self.reference is not None:
            out["reference"] = self.reference.to_json()
            out["reference_within_1pct"] = self.reference_within_1pct
        return out


def _grid_eval(
    a: float,
    budget: float,
    t1_values: np.ndarray,
    t2_values: np.ndarray,
) -> tuple[ExponentReport | None, int]:
    best: ExponentReport | None = None
    count = 0
    for t1 in t1_values:
        for t2 in t2_values:
            if t2 < t1 or t1 < 1:
                continue
            thetas = ThetaParams(float(t1), float(t2))
            if _gamma_argument(thetas) >= 1:
                continue
            report = compose_exponent(a, thetas, budget)
            count += 1
            if best is None or report.total_exponent < best.total_exponent:
                best = report
    return best, count


def optimize_thetas(
    a: float,
    budget: float = DEFAULT_BUDGET_BITS,
    theta1_range: tuple[float, float] = (1.0, 1e5),
    theta2_range: tuple[float, float] = (1.0, 1e9),
    grid_points: int = 48,
    refinements: int = 3,
    reference: ThetaParams | None = None,
) -> OptimizationResult:
    """Log-grid search minimizing total_exponent, with local refinement.

    When a reference point is given, its objective is evaluated and the
    report states whether it lies within 1% of the optimum found; this is
    informational, never asserted.
    """
    if grid_points < 2:
        raise EmptyGrid(f"grid needs at least 2 points per axis, got {grid_points}")
    if theta1_range[0] > theta1_range[1] or theta2_range[0] > theta2_range[1]:
        raise EmptyGrid(f"bad search ranges {theta1_range}, {theta2_range}")
    if a < 0:
        raise DomainError(f"per-length exponent must be >= 0, got {a}")

    lo1 = max(theta1_range[0], 1.0)
    t1_values = np.geomspace(lo1, theta1_range[1], grid_points)
    t2_values = np.geomspace(max(theta2_range[0], 1.0), theta2_range[1], grid_points)
    best, evals = _grid_eval(a, budget, t1_values, t2_values)
    if best is None:
        raise EmptyGrid("no feasible grid point (need theta1 <= theta2, gamma < 1)")

    span1 = t1_values[1] / t1_values[0] if len(t1_values) > 1 else 2.0
    span2 = t2_values[1] / t2_values[0] if len(t2_values) > 1 else 2.0
    for _ in range(refinements):
        c1, c2 = best.thetas.theta1, best.thetas.theta2
        t1_values = np.geomspace(max(c1 / span1, 1.0), c1 * span1, grid_points)
        t2_values = np.geomspace(max(c2 / span2, 1.0), c2 * span2, grid_points)
        refined, count = _grid_eval(a, budget, t1_values, t2_values)
        evals += count
        if refined is not None and refined.total_exponent < best.total_exponent:
            best = refined
        span1, span2 = span1 ** 0.5, span2 ** 0.5

    ref_report = compose_exponent(a, reference, budget) if reference else None
    return OptimizationResult(best=best, evaluations=evals, reference=ref_report)


@dataclass(frozen=True)
class EpsilonBudget:
    """Halved-budget composition: sparsify within epsilon/2 bits per
    variable, then solve each leaf with a per-length exponent small enough
    that the products add back to epsilon."""

    epsilon: float
    epsilon_prime: float
    per_length_exponent: float


def epsilon_budget(epsilon: float, length_coefficient: float) -> EpsilonBudget:
    if epsilon <= 0 or length_coefficient <= 0:
        raise DomainError("epsilon and length coefficient must be positive")
    half = epsilon / 2
    return EpsilonBudget(epsilon, half, half / length_coefficient)
