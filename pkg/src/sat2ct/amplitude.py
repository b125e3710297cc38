"""Dense statevector oracle for the counting-circuit amplitude identity.

Deliberately the simplest trustworthy strong simulator: one complex128
amplitude per basis state, gates applied by strided slice updates. Basis
index bit k holds qubit k (little-endian), matching the assignment-index
convention of the formula module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import apply_cnot, apply_h, apply_phase, apply_x
from .cliffordt import CX, H, QGate, QuantumCircuit, S, SDG, T, TDG, X
from .errors import IndexOutOfRange, QubitBudgetExceeded
from .formula import Formula, count_satisfying

_PHASE = {
    S: 1j,
    SDG: -1j,
    T: complex(np.exp(1j * math.pi / 4)),
    TDG: complex(np.exp(-1j * math.pi / 4)),
}

DEFAULT_TOLERANCE = 1e-9


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def apply_gate(state: StateVector, gate: QGate) -> StateVector:
    """Apply one gate in place and return the same StateVector."""
    n = state.n_qubits
    if any(q >= n for q in gate.qubits):
        raise IndexOutOfRange(f"gate {gate} outside {n} qubits")
    amps = state.amplitudes
    if gate.kind == H:
        apply_h(amps, gate.qubits[0])
    elif gate.kind == X:
        apply_x(amps, gate.qubits[0])
    elif gate.kind in _PHASE:
        apply_phase(amps, gate.qubits[0], _PHASE[gate.kind])
    elif gate.kind == CX:
        apply_cnot(amps, gate.qubits[0], gate.qubits[1])
    else:  # unreachable: QGate validates kinds
        raise ValueError(f"cannot simulate gate kind {gate.kind!r}")
    return state


def run_circuit(
    circuit: QuantumCircuit,
    initial: StateVector | None = None,
    qubit_cap: int | None = None,
) -> StateVector:
    """Simulate the whole gate list; starts from |0...0> by default."""
    if qubit_cap is not None and circuit.n_qubits > qubit_cap:
        raise QubitBudgetExceeded(
            f"{circuit.n_qubits} qubits exceed the cap {qubit_cap}"
        )
    state = initial if initial is not None else StateVector.zero(circuit.n_qubits)
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


def zero_to_zero_amplitude(
    circuit: QuantumCircuit, qubit_cap: int | None = None
) -> complex:
    """<0...0| C |0...0> by dense simulation."""
    return complex(run_circuit(circuit, qubit_cap=qubit_cap).amplitudes[0])


@dataclass(frozen=True)
class AmplitudeReport:
    """Comparison of the simulated amplitude against #SAT / 2^n."""

    amplitude: complex
    expected: Fraction
    abs_error: float
    match: bool
    tolerance: float
    n: int

    @property
    def accuracy_threshold(self) -> float:
        """Half of 2^-n: the resolution needed to read off satisfiability."""
        return 0.5 * 2.0 ** (-self.n)

    @property
    def within_accuracy(self) -> bool:
        return self.abs_error < self.accuracy_threshold

    @property
    def nonzero_amplitude(self) -> bool:
        return abs(self.amplitude) > self.tolerance

    @property
    def satisfiable(self) -> bool:
        return self.expected > 0

    def to_json(self) -> dict:
        return {
            "amplitude_re": self.amplitude.real,
            "amplitude_im": self.amplitude.imag,
            "expected": str(self.expected),
            "expected_float": float(self.expected),
            "abs_error": self.abs_error,
            "match": self.match,
            "tolerance": self.tolerance,
            "n": self.n,
            "accuracy_threshold": self.accuracy_threshold,
            "within_accuracy": self.within_accuracy,
            "nonzero_amplitude": self.nonzero_amplitude,
            "satisfiable": self.satisfiable,
        }


def verify_counting_identity(
    formula: Formula,
    tolerance: float = DEFAULT_TOLERANCE,
    qubit_cap: int = 26,
    brute_force_cap: int = 24,
) -> AmplitudeReport:
    """Simulate the counting circuit and compare the all-zeros amplitude
    against the brute-force satisfying count."""
    from .cliffordt import build_counting_circuit

    circuit = build_counting_circuit(formula, qubit_cap=qubit_cap)
    amplitude = zero_to_zero_amplitude(circuit)
    expected = Fraction(count_satisfying(formula, cap=brute_force_cap), 1 << formula.n)
    abs_error = abs(amplitude - float(expected))
    return AmplitudeReport(
        amplitude=amplitude,
        expected=expected,
        abs_error=abs_error,
        match=abs_error <= tolerance,
        tolerance=tolerance,
        n=formula.n,
    )
