"""Catalog of the built-in gates provided by the qhdl.std package."""

from __future__ import annotations

from dataclasses import dataclass

SETUP, MEASURE, UNITARY = "setup", "measure", "unitary"


@dataclass(frozen=True)
class BuiltinGate:
    name: str
    ports: tuple[tuple[str, str, str], ...]  # (name, mode, type_mark)
    kind: str  # setup | measure | unitary
    arity: int  # qubits touched
    passthrough: tuple[tuple[str, str], ...]  # (in pin, out pin) carrying one qubit
    unitary_kind: str | None = None
    operand_pins: tuple[str, ...] = ()  # input pins in simulator operand order

    def port(self, name: str) -> tuple[str, str, str] | None:
        for p in self.ports:
            if p[0] == name:
                return p
        return None

    @property
    def port_names(self) -> tuple[str, ...]:
        return tuple(p[0] for p in self.ports)


BUILTIN_GATES: dict[str, BuiltinGate] = {
    g.name: g
    for g in (
        BuiltinGate(
            name="qset",
            ports=(("clk", "in", "bit"), ("d", "in", "qbit"),
                   ("q", "out", "qbit"), ("set", "in", "bit")),
            kind=SETUP,
            arity=1,
            passthrough=(("d", "q"),),
            operand_pins=("d",),
        ),
        BuiltinGate(
            name="qmeasure",
            ports=(("clk", "in", "bit"), ("d", "in", "qbit"),
                   ("q", "out", "qbit"), ("result", "out", "bit")),
            kind=MEASURE,
            arity=1,
            passthrough=(("d", "q"),),
            operand_pins=("d",),
        ),
        BuiltinGate(
            name="qnot",
            ports=(("d", "in", "qbit"), ("q", "out", "qbit")),
            kind=UNITARY,
            arity=1,
            passthrough=(("d", "q"),),
            unitary_kind="not",
            operand_pins=("d",),
        ),
        BuiltinGate(
            name="qhadamard",
            ports=(("d", "in", "qbit"), ("q", "out", "qbit")),
            kind=UNITARY,
            arity=1,
            passthrough=(("d", "q"),),
            unitary_kind="hadamard",
            operand_pins=("d",),
        ),
        BuiltinGate(
            name="qcnot",
            ports=(("c_in", "in", "qbit"), ("c_out", "out", "qbit"),
                   ("d", "in", "qbit"), ("q", "out", "qbit")),
            kind=UNITARY,
            arity=2,
            passthrough=(("c_in", "c_out"), ("d", "q")),
            unitary_kind="cnot",
            operand_pins=("c_in", "d"),
        ),
        BuiltinGate(
            name="qtoffoli",
            ports=(("c0_in", "in", "qbit"), ("c1_in", "in", "qbit"),
                   ("c0_out", "out", "qbit"), ("c1_out", "out", "qbit"),
                   ("d", "in", "qbit"), ("q", "out", "qbit")),
            kind=UNITARY,
            arity=3,
            passthrough=(("c0_in", "c0_out"), ("c1_in", "c1_out"), ("d", "q")),
            unitary_kind="toffoli",
            operand_pins=("c0_in", "c1_in", "d"),
        ),
        BuiltinGate(
            name="qfredkin",
            ports=(("c_in", "in", "qbit"), ("c_out", "out", "qbit"),
                   ("a_in", "in", "qbit"), ("b_in", "in", "qbit"),
                   ("a_out", "out", "qbit"), ("b_out", "out", "qbit")),
            kind=UNITARY,
            arity=3,
            passthrough=(("c_in", "c_out"), ("a_in", "a_out"), ("b_in", "b_out")),
            unitary_kind="fredkin",
            operand_pins=("c_in", "a_in", "b_in"),
        ),
    )
}
