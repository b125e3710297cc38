"""Clifford+T circuit IR, Toffoli lowering, and OpenQASM 2.0 emission.

Each Toffoli lowers to a fixed 15-gate sequence with exactly 7 T-type
gates (T/Tdg) and 8 Clifford gates (H/CNOT); CNOT and NOT pass through.
The counting circuit wraps the lowered tidy circuit in a Hadamard layer
on the input qubits so the all-zeros amplitude equals #SAT / 2^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, QubitBudgetExceeded, RepeatedQubit
from .formula import Formula, length
from .revcomp import CNOT as REV_CNOT
from .revcomp import NOT as REV_NOT
from .revcomp import ReversibleCircuit, compile_formula

H = "H"
S = "S"
SDG = "Sdg"
T = "T"
TDG = "Tdg"
X = "X"
CX = "CNOT"

_ARITY = {H: 1, S: 1, SDG: 1, T: 1, TDG: 1, X: 1, CX: 2}
CLIFFORD_KINDS = frozenset({H, S, SDG, X, CX})
T_KINDS = frozenset({T, TDG})

_QASM_NAME = {H: "h", S: "s", SDG: "sdg", T: "t", TDG: "tdg", X: "x", CX: "cx"}
_FROM_QASM = {v: k for k, v in _QASM_NAME.items()}

DEFAULT_QUBIT_CAP = 26


@dataclass(frozen=True)
class QGate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} needs {_ARITY[self.kind]} qubits, got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise RepeatedQubit(f"repeated qubit in {self.kind} {self.qubits}")


@dataclass(frozen=True)
class QubitLayout:
    n_inputs: int
    n_ancillas: int
    n_outputs: int = 1


@dataclass(frozen=True)
class QuantumCircuit:
    n_qubits: int
    gates: tuple[QGate, ...]
    layout: QubitLayout | None = None

    def __post_init__(self) -> None:
        for g in self.gates:
            if any(q >= self.n_qubits or q < 0 for q in g.qubits):
                raise IndexOutOfRange(f"gate {g} outside {self.n_qubits} qubits")

    @property
    def t_count(self) -> int:
        return sum(1 for g in self.gates if g.kind in T_KINDS)

    @property
    def clifford_count(self) -> int:
        return sum(1 for g in self.gates if g.kind in CLIFFORD_KINDS)


def lower_toffoli(c1: int, c2: int, t: int) -> tuple[QGate, ...]:
    """Exact Toffoli decomposition: 7 T-type and 8 Clifford gates whose
    product is the Toffoli unitary (no approximation, no global phase)."""
    if len({c1, c2, t}) != 3:
        raise RepeatedQubit(f"Toffoli qubits must be distinct: {(c1, c2, t)}")
    return (
        QGate(H, (t,)),
        QGate(CX, (c2, t)),
        QGate(TDG, (t,)),
        QGate(CX, (c1, t)),
        QGate(T, (t,)),
        QGate(CX, (c2, t)),
        QGate(TDG, (t,)),
        QGate(CX, (c1, t)),
        QGate(T, (c2,)),
        QGate(T, (t,)),
        QGate(H, (t,)),
        QGate(CX, (c1, c2)),
        QGate(T, (c1,)),
        QGate(TDG, (c2,)),
        QGate(CX, (c1, c2)),
    )


def lower_circuit(circuit: ReversibleCircuit) -> QuantumCircuit:
    """Replace NOT by X, keep CNOT, expand each Toffoli to its 7-T block."""
    gates: list[QGate] = []
    for g in circuit.gates:
        if g.kind == REV_NOT:
            gates.append(QGate(X, g.wires))
        elif g.kind == REV_CNOT:
            gates.append(QGate(CX, g.wires))
        else:
            gates.extend(lower_toffoli(*g.wires))
    layout = QubitLayout(
        circuit.n_inputs,
        circuit.n_ancillas,
        1 if circuit.mode == "tidy" else 0,
    )
    return QuantumCircuit(circuit.n_wires, tuple(gates), layout)


def build_counting_circuit(
    formula: Formula, qubit_cap: int = DEFAULT_QUBIT_CAP
) -> QuantumCircuit:
    """Hadamard sandwich around the lowered tidy circuit, with one X that
    flips the output qubit after the tidy stage.

    The tidy circuit leaves the output at the formula value, so the
    output returns to |0> on the *unsatisfying* branch; the X inverts
    that polarity and makes the all-zeros -> all-zeros amplitude equal
    #SAT / 2^n. X and H are Clifford, so the T-count is the lowered one.
    """
    rev = compile_formula(formula)
    if rev.n_wires > qubit_cap:
        raise QubitBudgetExceeded(
            f"needs {rev.n_wires} qubits (n={formula.n}, L={length(formula)}), "
            f"cap is {qubit_cap}"
        )
    lowered = lower_circuit(rev)
    hs = tuple(QGate(H, (q,)) for q in range(formula.n))
    flip = (QGate(X, (rev.output_wire,)),)
    return QuantumCircuit(
        lowered.n_qubits, hs + lowered.gates + flip + hs, lowered.layout
    )


def emit_qasm(circuit: QuantumCircuit) -> str:
    """OpenQASM 2.0 subset: one quantum register, gates h/s/sdg/t/tdg/x/cx.

    The qubit layout is carried in a comment so the subset parser can
    round-trip it; no classical registers, no measurement.
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";']
    if circuit.layout is not None:
        lay = circuit.layout
        lines.append(
            f"// layout inputs={lay.n_inputs} ancillas={lay.n_ancillas} "
            f"outputs={lay.n_outputs}"
        )
    lines.append(f"qreg q[{circuit.n_qubits}];")
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAME[g.kind]} {args};")
    return "\n".join(lines) + "\n"


def parse_qasm(text: str) -> QuantumCircuit:
    """Parse the emitted subset back into a circuit (round-trip inverse)."""
    n_qubits: int | None = None
    layout: QubitLayout | None = None
    gates: list[QGate] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if line.startswith("// layout"):
            fields = dict(item.split("=", 1) for item in line.split()[2:])
            layout = QubitLayout(
                int(fields["inputs"]), int(fields["ancillas"]), int(fields["outputs"])
            )
            continue
        if line.startswith("//"):
            continue
        if not line.endswith(";"):
            raise ValueError(f"missing semicolon: {raw!r}")
        line = line[:-1].strip()
        if line.startswith("qreg"):
            if n_qubits is not None:
                raise ValueError("multiple qreg declarations")
            n_qubits = int(line[line.index("[") + 1 : line.index("]")])
            continue
        name, _, args = line.partition(" ")
        kind = _FROM_QASM.get(name)
        if kind is None:
            raise ValueError(f"unsupported gate {name!r}")
        qubits = tuple(
            int(a[a.index("[") + 1 : a.index("]")]) for a in args.split(",")
        )
        gates.append(QGate(kind, qubits))
    if n_qubits is None:
        raise ValueError("missing qreg declaration")
    return QuantumCircuit(n_qubits, tuple(gates), layout)
