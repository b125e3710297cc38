"""Exception taxonomy shared across the toolchain.

The CLI maps these onto its exit-code contract, so subcommands catch the
base class and dispatch on the concrete type.
"""


class Sat2ctError(Exception):
    """Base class for all toolchain errors."""


class DimacsError(Sat2ctError):
    """Base class for DIMACS ingestion failures."""


class MalformedHeader(DimacsError):
    """Missing, duplicated, or unparseable ``p cnf <n> <m>`` header."""


class VariableOutOfRange(DimacsError):
    """A literal references a variable outside ``1..n``."""


class ClauseTooWide(DimacsError):
    """A clause has more than three distinct literals."""


class EmptyClause(DimacsError):
    """A clause terminated by ``0`` with no literals."""


class EmptyFormula(Sat2ctError):
    """An operation that needs at least one clause got none."""


class DimensionMismatch(Sat2ctError):
    """Assignment or bit-vector length does not match the expected width."""


class TooManyVariables(Sat2ctError):
    """Brute-force enumeration refused above the configured variable cap."""


class InvalidSunflower(Sat2ctError):
    """A sunflower descriptor does not validate against its formula."""


class RecursionBudgetExceeded(Sat2ctError):
    """The sparsification recursion visited more nodes than the budget allows."""


class DomainError(Sat2ctError):
    """Numeric argument outside the function's domain."""


class Overflow(Sat2ctError):
    """Exact integer evaluation would be too large at the requested size."""


class EmptyGrid(Sat2ctError):
    """Optimizer invoked with an empty or degenerate search grid."""


class IncompatibleInputRegisters(Sat2ctError):
    """Circuit composition requires operands over the same input register."""


class RepeatedQubit(Sat2ctError):
    """A gate lists the same qubit or wire more than once."""


class IndexOutOfRange(Sat2ctError):
    """Gate references a qubit index outside the register."""


class QubitBudgetExceeded(Sat2ctError):
    """Circuit would need more qubits than the configured cap."""
