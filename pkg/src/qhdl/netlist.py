"""Flattened gate-level netlist produced by elaboration."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast_nodes import PortDecl
from .builtins import BuiltinGate
from .diagnostics import SourceSpan


@dataclass
class Net:
    id: int
    type_mark: str  # "bit" | "qbit"
    name: str  # hierarchical signal name, for messages
    span: SourceSpan


@dataclass
class GateInstance:
    path_label: str  # e.g. "dut.entangle"
    gate: BuiltinGate
    pin_to_net: dict[str, int]
    span: SourceSpan


@dataclass
class Netlist:
    gates: list[GateInstance] = field(default_factory=list)
    nets: list[Net] = field(default_factory=list)
    top_ports: list[tuple[PortDecl, int]] = field(default_factory=list)

    @property
    def qnets(self) -> list[Net]:
        return [n for n in self.nets if n.type_mark == "qbit"]

    @property
    def cnets(self) -> list[Net]:
        return [n for n in self.nets if n.type_mark == "bit"]

    def net(self, net_id: int) -> Net:
        return self.nets[net_id]

    def top_port_net(self, name: str) -> int | None:
        for port, net_id in self.top_ports:
            if port.name == name:
                return net_id
        return None

    def drivers_of(self, net_id: int) -> list[tuple[GateInstance, str]]:
        """Gate output pins driving the net (top input ports not included)."""
        found = []
        for gate in self.gates:
            for pin, nid in gate.pin_to_net.items():
                if nid == net_id and gate.gate.port(pin)[1] == "out":
                    found.append((gate, pin))
        return found

    def sinks_of(self, net_id: int) -> list[tuple[GateInstance, str]]:
        """Gate input pins reading the net (top output ports not included)."""
        found = []
        for gate in self.gates:
            for pin, nid in gate.pin_to_net.items():
                if nid == net_id and gate.gate.port(pin)[1] == "in":
                    found.append((gate, pin))
        return found

    def is_top_port_net(self, net_id: int) -> bool:
        return any(nid == net_id for _, nid in self.top_ports)
