"""Reversible-circuit IR and the formula compiler.

Circuits are gate lists over {TOFFOLI, CNOT, NOT} with the wire layout
frozen as [inputs 0..n-1][ancillas n..n+a-1][output n+a]. A *diagonal*
circuit maps (x, 0) -> (x, junk-with-f(x)-on-the-result-wire) and never
targets an input wire; a *tidy* circuit maps (x, 0, y) -> (x, 0, y^f(x)),
restoring the ancillas by mirroring the diagonal computation around a
single CNOT onto the output wire.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    EmptyFormula,
    IncompatibleInputRegisters,
    RepeatedQubit,
    VariableOutOfRange,
)
from .formula import Formula, Literal

TOFFOLI = "TOFFOLI"
CNOT = "CNOT"
NOT = "NOT"

_ARITY = {TOFFOLI: 3, CNOT: 2, NOT: 1}
_MNEMONIC = {TOFFOLI: "TOF", CNOT: "CNOT", NOT: "NOT"}
_FROM_MNEMONIC = {v: k for k, v in _MNEMONIC.items()}

DIAGONAL = "diagonal"
TIDY = "tidy"


@dataclass(frozen=True)
class RevGate:
    """One gate; wires are (controls..., target)."""

    kind: str
    wires: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise ValueError(f"unknown reversible gate kind {self.kind!r}")
        if len(self.wires) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} needs {_ARITY[self.kind]} wires, got {self.wires}"
            )
        if len(set(self.wires)) != len(self.wires):
            raise RepeatedQubit(f"repeated wire in {self.kind} {self.wires}")

    @property
    def target(self) -> int:
        return self.wires[-1]


@dataclass(frozen=True)
class ReversibleCircuit:
    n_inputs: int
    n_ancillas: int
    gates: tuple[RevGate, ...]
    result_wire: int
    mode: str

    def __post_init__(self) -> None:
        if self.mode not in (DIAGONAL, TIDY):
            raise ValueError(f"unknown mode {self.mode!r}")
        for g in self.gates:
            if any(w >= self.n_wires or w < 0 for w in g.wires):
                raise DimensionMismatch(f"gate {g} outside {self.n_wires} wires")
            if self.mode == DIAGONAL and g.target < self.n_inputs:
                raise ValueError(f"diagonal circuit targets input wire {g.target}")
        if self.mode == DIAGONAL:
            lo, hi = self.n_inputs, self.n_inputs + self.n_ancillas
            if not lo <= self.result_wire < hi:
                raise ValueError("diagonal result wire must be an ancilla")
        elif self.result_wire != self.output_wire:
            raise ValueError("tidy result wire must be the output wire")

    @property
    def n_wires(self) -> int:
        return self.n_inputs + self.n_ancillas + (1 if self.mode == TIDY else 0)

    @property
    def output_wire(self) -> int:
        return self.n_inputs + self.n_ancillas

    @property
    def toffoli_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == TOFFOLI)


def compile_literal(lit: Literal, n: int) -> ReversibleCircuit:
    """Diagonal circuit copying (and possibly inverting) one input onto a
    fresh ancilla; uses no Toffoli gates."""
    if not 1 <= lit.var <= n:
        raise VariableOutOfRange(f"literal {lit} outside 1..{n}")
    w = n
    gates: list[RevGate] = [RevGate(CNOT, (lit.var - 1, w))]
    if lit.negated:
        gates.append(RevGate(NOT, (w,)))
    return ReversibleCircuit(n, 1, tuple(gates), w, DIAGONAL)


def _shifted(circ: ReversibleCircuit, offset: int) -> tuple[tuple[RevGate, ...], int]:
    """Renumber a diagonal circuit's ancillas upward by offset."""

    def remap(w: int) -> int:
        return w if w < circ.n_inputs else w + offset

    gates = tuple(
        RevGate(g.kind, tuple(remap(w) for w in g.wires)) for g in circ.gates
    )
    return gates, remap(circ.result_wire)


def _check_composable(u1: ReversibleCircuit, u2: ReversibleCircuit) -> None:
    if u1.mode != DIAGONAL or u2.mode != DIAGONAL:
        raise IncompatibleInputRegisters("composition needs diagonal circuits")
    if u1.n_inputs != u2.n_inputs:
        raise IncompatibleInputRegisters(
            f"input registers differ: {u1.n_inputs} vs {u2.n_inputs}"
        )


def compose_and(u1: ReversibleCircuit, u2: ReversibleCircuit) -> ReversibleCircuit:
    """Diagonal AND: run both operands, then one Toffoli onto a fresh ancilla."""
    _check_composable(u1, u2)
    shifted_gates, r2 = _shifted(u2, u1.n_ancillas)
    w = u1.n_inputs + u1.n_ancillas + u2.n_ancillas
    gates = u1.gates + shifted_gates + (RevGate(TOFFOLI, (u1.result_wire, r2, w)),)
    return ReversibleCircuit(
        u1.n_inputs, u1.n_ancillas + u2.n_ancillas + 1, gates, w, DIAGONAL
    )


def compose_or(u1: ReversibleCircuit, u2: ReversibleCircuit) -> ReversibleCircuit:
    """Diagonal OR via De Morgan; the operand result wires are restored so
    they stay usable by later compositions."""
    _check_composable(u1, u2)
    shifted_gates, r2 = _shifted(u2, u1.n_ancillas)
    r1 = u1.result_wire
    w = u1.n_inputs + u1.n_ancillas + u2.n_ancillas
    gates = (
        u1.gates
        + shifted_gates
        + (
            RevGate(NOT, (r1,)),
            RevGate(NOT, (r2,)),
            RevGate(TOFFOLI, (r1, r2, w)),
            RevGate(NOT, (r1,)),
            RevGate(NOT, (r2,)),
            RevGate(NOT, (w,)),
        )
    )
    return ReversibleCircuit(
        u1.n_inputs, u1.n_ancillas + u2.n_ancillas + 1, gates, w, DIAGONAL
    )


def compose_not(u1: ReversibleCircuit) -> ReversibleCircuit:
    """Diagonal NOT: flip the result wire in place; counts unchanged."""
    if u1.mode != DIAGONAL:
        raise IncompatibleInputRegisters("compose_not needs a diagonal circuit")
    gates = u1.gates + (RevGate(NOT, (u1.result_wire,)),)
    return ReversibleCircuit(
        u1.n_inputs, u1.n_ancillas, gates, u1.result_wire, DIAGONAL
    )


def make_tidy(u: ReversibleCircuit) -> ReversibleCircuit:
    """Compute, copy the result onto the output wire, uncompute.

    Every gate in the set is an involution, so replaying the diagonal
    gates in reverse order restores all ancillas to zero; the Toffoli
    count exactly doubles.
    """
    if u.mode != DIAGONAL:
        raise IncompatibleInputRegisters("make_tidy needs a diagonal circuit")
    out = u.n_inputs + u.n_ancillas
    gates = u.gates + (RevGate(CNOT, (u.result_wire, out)),) + tuple(reversed(u.gates))
    return ReversibleCircuit(u.n_inputs, u.n_ancillas, gates, out, TIDY)


def compile_formula(formula: Formula) -> ReversibleCircuit:
    """Tidy circuit computing the formula; the diagonal stage spends exactly
    one Toffoli per binary connective, so the tidy circuit has 2L."""
    if formula.m == 0:
        raise EmptyFormula("cannot compile an empty formula")
    n = formula.n
    clause_circuits = []
    for clause in formula.clauses:
        circ = compile_literal(clause.literals[0], n)
        for lit in clause.literals[1:]:
            circ = compose_or(circ, compile_literal(lit, n))
        clause_circuits.append(circ)
    acc = clause_circuits[0]
    for circ in clause_circuits[1:]:
        acc = compose_and(acc, circ)
    return make_tidy(acc)


def simulate_reversible(
    circuit: ReversibleCircuit, bits: Sequence[int]
) -> tuple[int, ...]:
    """Apply the gates to a classical bit vector; pure function."""
    if len(bits) != circuit.n_wires:
        raise DimensionMismatch(
            f"bit vector length {len(bits)} != {circuit.n_wires} wires"
        )
    b = [int(bool(x)) for x in bits]
    for g in circuit.gates:
        if g.kind == NOT:
            b[g.wires[0]] ^= 1
        elif g.kind == CNOT:
            c, t = g.wires
            b[t] ^= b[c]
        else:
            c1, c2, t = g.wires
            b[t] ^= b[c1] & b[c2]
    return tuple(b)


def reversed_circuit(circuit: ReversibleCircuit) -> ReversibleCircuit:
    """Inverse circuit: same self-inverse gates in reverse order."""
    return ReversibleCircuit(
        circuit.n_inputs,
        circuit.n_ancillas,
        tuple(reversed(circuit.gates)),
        circuit.result_wire,
        circuit.mode,
    )


def emit_revc(circuit: ReversibleCircuit) -> str:
    """Line-oriented text form: a key=value header, then one gate per line."""
    lines = [
        f"revc mode={circuit.mode} inputs={circuit.n_inputs} "
        f"ancillas={circuit.n_ancillas} result={circuit.result_wire} "
        f"gates={len(circuit.gates)}"
    ]
    for g in circuit.gates:
        lines.append(_MNEMONIC[g.kind] + " " + " ".join(str(w) for w in g.wires))
    return "\n".join(lines) + "\n"


def parse_revc(text: str) -> ReversibleCircuit:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("revc "):
        raise ValueError("missing revc header")
    fields = dict(item.split("=", 1) for item in lines[0].split()[1:])
    gates = []
    for ln in lines[1:]:
        parts = ln.split()
        kind = _FROM_MNEMONIC.get(parts[0])
        if kind is None:
            raise ValueError(f"unknown gate line {ln!r}")
        gates.append(RevGate(kind, tuple(int(w) for w in parts[1:])))
    if len(gates) != int(fields["gates"]):
        raise ValueError("gate count does not match header")
    return ReversibleCircuit(
        int(fields["inputs"]),
        int(fields["ancillas"]),
        tuple(gates),
        int(fields["result"]),
        fields["mode"],
    )
