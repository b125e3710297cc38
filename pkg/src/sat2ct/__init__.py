"""sat2ct: 3-SAT sparsification and compilation to Clifford+T circuits.

The pipeline: parse DIMACS CNF, sparsify by sunflower splitting, compile
each instance to a tidy reversible circuit, lower to Clifford+T with an
audited T-count, and verify the all-zeros amplitude against brute-force
model counting. A numeric lab reproduces the explicit hardness constants.
"""

from .amplitude import AmplitudeReport, StateVector, verify_counting_identity
from .bounds import (
    ExponentReport,
    binary_entropy,
    compose_exponent,
    eta,
    gamma,
    leafcount_bound_check,
    optimize_thetas,
    tcount_constant_check,
)
from .cliffordt import (
    QGate,
    QuantumCircuit,
    build_counting_circuit,
    emit_qasm,
    lower_circuit,
    lower_toffoli,
    parse_qasm,
)
from .formula import (
    Assignment,
    Clause,
    Formula,
    Literal,
    count_satisfying,
    emit_dimacs,
    evaluate,
    length,
    parse_dimacs,
    reduce,
    satisfying_mask,
)
from .revcomp import (
    ReversibleCircuit,
    RevGate,
    compile_formula,
    compose_and,
    compose_not,
    compose_or,
    compile_literal,
    make_tidy,
    simulate_reversible,
)
from .sparsify import (
    BoundReport,
    RecursionStats,
    SparsifyResult,
    SunflowerFind,
    ThetaParams,
    check_leaf_bounds,
    find_good_sunflower,
    sparsify,
    split,
)

__version__ = "0.1.0"
