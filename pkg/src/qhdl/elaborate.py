"""Binding, flattening, rule checking, wire inference, scheduling, wrapper emission."""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass

from .ast_nodes import ArchitectureBody, DesignFile, EntityDecl
from .builtins import BUILTIN_GATES, MEASURE, SETUP, UNITARY
from .diagnostics import (
    CombinationalLoopError,
    Diagnostic,
    ElaborationError,
    MissingArchitectureError,
    PortMapMismatchError,
    QubitLimitError,
    RecursiveInstantiationError,
    UnknownComponentError,
)
from .netlist import GateInstance, Net, Netlist
from .statevector import DEFAULT_QUBIT_LIMIT


# -- binding and flattening --------------------------------------------------

def _sole_architecture(design: DesignFile, entity: EntityDecl) -> ArchitectureBody:
    archs = design.architectures_of(entity.name)
    if not archs:
        raise MissingArchitectureError(
            f"entity '{entity.name}' has no architecture", entity.span
        )
    if len(archs) > 1:
        raise ElaborationError(
            f"entity '{entity.name}' has {len(archs)} architectures; exactly one is required",
            archs[1].span,
        )
    return archs[0]


def bind_and_flatten(design: DesignFile, top: str) -> Netlist:
    """Inline the hierarchy below ``top`` into a netlist of built-in gates."""
    for arch in design.architectures:
        if design.entity(arch.entity_name) is None:
            raise ElaborationError(
                f"architecture '{arch.name}' names unknown entity '{arch.entity_name}'",
                arch.span,
            )
    top_entity = design.entity(top)
    if top_entity is None:
        raise ElaborationError(f"no entity named '{top}' in the design")
    arch = _sole_architecture(design, top_entity)

    netlist = Netlist()
    env: dict[str, int] = {}
    for port in top_entity.ports:
        net = Net(len(netlist.nets), port.type_mark, port.name, port.span)
        netlist.nets.append(net)
        netlist.top_ports.append((port, net.id))
        env[port.name] = net.id
    _flatten_into(netlist, design, arch, env, "dut", (top_entity.name,))
    return netlist


def _flatten_into(
    netlist: Netlist,
    design: DesignFile,
    arch: ArchitectureBody,
    env: dict[str, int],
    prefix: str,
    stack: tuple[str, ...],
) -> None:
    scope = dict(env)
    for sig in arch.signal_decls:
        if sig.name in scope:
            raise ElaborationError(
                f"signal '{sig.name}' shadows a port of entity '{arch.entity_name}'",
                sig.span,
            )
        net = Net(len(netlist.nets), sig.type_mark, f"{prefix}.{sig.name}", sig.span)
        netlist.nets.append(net)
        scope[sig.name] = net.id

    for inst in arch.instances:
        path = f"{prefix}.{inst.label}"
        builtin = BUILTIN_GATES.get(inst.component_name)
        if builtin is not None:
            pins = _resolve_port_map(netlist, inst, builtin.ports, scope, path)
            netlist.gates.append(GateInstance(path, builtin, pins, inst.span))
            continue
        child = design.entity(inst.component_name)
        if child is None:
            raise UnknownComponentError(
                f"unknown component '{inst.component_name}' (instance '{path}')",
                inst.span,
            )
        if child.name in stack:
            cycle = " -> ".join(stack[stack.index(child.name):] + (child.name,))
            raise RecursiveInstantiationError(
                f"recursive instantiation: {cycle}", inst.span
            )
        child_arch = _sole_architecture(design, child)
        formals = tuple((p.name, p.mode, p.type_mark) for p in child.ports)
        pins = _resolve_port_map(netlist, inst, formals, scope, path)
        _flatten_into(netlist, design, child_arch, pins, path, stack + (child.name,))


def _resolve_port_map(
    netlist: Netlist,
    inst,
    formals: tuple[tuple[str, str, str], ...],
    scope: dict[str, int],
    path: str,
) -> dict[str, int]:
    formal_names = [name for name, _, _ in formals]
    by_name = {name: (mode, mark) for name, mode, mark in formals}
    result: dict[str, int] = {}
    position = 0
    for assoc in inst.port_map:
        if assoc.formal is None:
            if position >= len(formal_names):
                raise PortMapMismatchError(
                    f"too many positional associations on '{path}'", assoc.span
                )
            formal = formal_names[position]
            position += 1
        else:
            formal = assoc.formal
        if formal not in by_name:
            raise PortMapMismatchError(
                f"'{path}' has no port named '{formal}'", assoc.span
            )
        if formal in result:
            raise PortMapMismatchError(
                f"port '{formal}' connected twice on '{path}'", assoc.span
            )
        net_id = scope.get(assoc.actual)
        if net_id is None:
            raise PortMapMismatchError(
                f"'{assoc.actual}' names no signal or port visible at '{path}'",
                assoc.span,
            )
        expected_mark = by_name[formal][1]
        actual_mark = netlist.net(net_id).type_mark
        if actual_mark != expected_mark:
            raise PortMapMismatchError(
                f"port '{formal}' of '{path}' is {expected_mark} "
                f"but '{assoc.actual}' is {actual_mark}",
                assoc.span,
            )
        result[formal] = net_id
    for name in formal_names:
        if name not in result:
            raise PortMapMismatchError(
                f"port '{name}' of '{path}' is not connected", inst.span
            )
    return result


# -- the three circuit rules -------------------------------------------------

def check_qbit_rules(
    netlist: Netlist, top_entity: EntityDecl, design: DesignFile
) -> list[Diagnostic]:
    """Empty list iff the no-cloning wiring rule, the classical-boundary rule,
    and the no-classical-logic rule all hold."""
    diags: list[Diagnostic] = []

    driver_count: dict[int, int] = {n.id: 0 for n in netlist.nets}
    sink_count: dict[int, int] = {n.id: 0 for n in netlist.nets}
    for gate in netlist.gates:
        for pin, net_id in gate.pin_to_net.items():
            if gate.gate.port(pin)[1] == "out":
                driver_count[net_id] += 1
            else:
                sink_count[net_id] += 1

    # Rule i: every internal qbit net has exactly one driver and one sink.
    # Nets bound to top-level qbit ports are left to rule ii, which already
    # condemns them; reporting both would double-count one mistake.
    for net in netlist.qnets:
        if netlist.is_top_port_net(net.id):
            continue
        d, s = driver_count[net.id], sink_count[net.id]
        if d != 1 or s != 1:
            diags.append(
                Diagnostic(
                    net.span,
                    f"rule i violation: qbit signal '{net.name}' must be driven by "
                    f"a single output and connect to a single input "
                    f"(found {d} driver(s), {s} sink(s))",
                    rule=1,
                )
            )

    # Rule ii: the top-level entity presents only classical ports.
    for port in top_entity.ports:
        if port.type_mark == "qbit":
            diags.append(
                Diagnostic(
                    port.span,
                    f"rule ii violation: top-level entity '{top_entity.name}' must "
                    f"not have ports of type qbit (port '{port.name}')",
                    rule=2,
                )
            )

    # Rule iii: no classical logic anywhere in the circuit description.
    for arch in design.architectures:
        for construct in arch.classical:
            diags.append(
                Diagnostic(
                    construct.span,
                    f"rule iii violation: non-quantum logic ({construct.kind}) is "
                    f"not allowed in architecture '{arch.name}'",
                    rule=3,
                )
            )
    return diags


def check_clocking(netlist: Netlist) -> tuple[int | None, list[Diagnostic]]:
    """All setup/measure clk pins must share one net, tied to a top-level input."""
    clk_nets: list[int] = []
    for gate in netlist.gates:
        if gate.gate.kind in (SETUP, MEASURE):
            net_id = gate.pin_to_net["clk"]
            if net_id not in clk_nets:
                clk_nets.append(net_id)
    if not clk_nets:
        return None, []
    if len(clk_nets) > 1:
        names = ", ".join(f"'{netlist.net(n).name}'" for n in clk_nets)
        return None, [
            Diagnostic(
                netlist.net(clk_nets[1]).span,
                f"multiple clock domains are not supported (clock nets {names})",
            )
        ]
    net_id = clk_nets[0]
    for port, port_net in netlist.top_ports:
        if port_net == net_id and port.mode == "in" and port.type_mark == "bit":
            return net_id, []
    return None, [
        Diagnostic(
            netlist.net(net_id).span,
            "the clock must connect directly to a top-level input of type bit",
        )
    ]


# -- qubit wire inference ----------------------------------------------------

@dataclass
class QubitWireAssignment:
    wire_of_qnet: dict[int, int]
    n: int


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def infer_qubit_wires(
    netlist: Netlist, limit: int = DEFAULT_QUBIT_LIMIT
) -> QubitWireAssignment:
    """Group qbit nets into physical wires along gate pass-through pin pairs.

    Wire indices follow first appearance in flattened gate order, so the
    count never depends on declaration order, only the labels do.
    """
    uf = _UnionFind()
    for net in netlist.qnets:
        uf.add(net.id)
    for gate in netlist.gates:
        for in_pin, out_pin in gate.gate.passthrough:
            uf.union(gate.pin_to_net[in_pin], gate.pin_to_net[out_pin])

    index_of_root: dict[int, int] = {}
    for gate in netlist.gates:
        for pin, _, mark in gate.gate.ports:
            if mark != "qbit":
                continue
            root = uf.find(gate.pin_to_net[pin])
            if root not in index_of_root:
                index_of_root[root] = len(index_of_root)
    for net in netlist.qnets:  # nets no gate touches (degenerate designs)
        root = uf.find(net.id)
        if root not in index_of_root:
            index_of_root[root] = len(index_of_root)

    n = len(index_of_root)
    if n > limit:
        raise QubitLimitError(f"{n} qubits exceed the configured limit of {limit}")
    wire_of = {net.id: index_of_root[uf.find(net.id)] for net in netlist.qnets}
    return QubitWireAssignment(wire_of, n)


# -- per-cycle schedule -------------------------------------------------------

@dataclass(frozen=True)
class ScheduledOp:
    step_index: int
    gate: GateInstance


@dataclass
class Schedule:
    steps: list[ScheduledOp]

    @property
    def steps_total(self) -> int:
        return len(self.steps)


def schedule(netlist: Netlist, wires: QubitWireAssignment) -> Schedule:
    """Setups in declaration order, unitaries in qbit-dataflow topological
    order (declaration order breaking ties), then measures in declaration
    order."""
    decl_index = {id(g): i for i, g in enumerate(netlist.gates)}
    setups = [g for g in netlist.gates if g.gate.kind == SETUP]
    unitaries = [g for g in netlist.gates if g.gate.kind == UNITARY]
    measures = [g for g in netlist.gates if g.gate.kind == MEASURE]

    successors: dict[int, list[GateInstance]] = {id(g): [] for g in unitaries}
    indegree: dict[int, int] = {id(g): 0 for g in unitaries}
    for net in netlist.qnets:
        drivers = netlist.drivers_of(net.id)
        sinks = netlist.sinks_of(net.id)
        for driver_gate, _ in drivers:
            if driver_gate.gate.kind != UNITARY:
                continue
            for sink_gate, _ in sinks:
                if sink_gate.gate.kind != UNITARY:
                    continue
                successors[id(driver_gate)].append(sink_gate)
                indegree[id(sink_gate)] += 1

    ready = [(decl_index[id(g)], g) for g in unitaries if indegree[id(g)] == 0]
    heapq.heapify(ready)
    ordered: list[GateInstance] = []
    while ready:
        _, gate = heapq.heappop(ready)
        ordered.append(gate)
        for succ in successors[id(gate)]:
            indegree[id(succ)] -= 1
            if indegree[id(succ)] == 0:
                heapq.heappush(ready, (decl_index[id(succ)], succ))
    if len(ordered) < len(unitaries):
        stuck = sorted(
            (g for g in unitaries if indegree[id(g)] > 0),
            key=lambda g: decl_index[id(g)],
        )
        labels = ", ".join(g.path_label for g in stuck)
        raise CombinationalLoopError(
            f"unitary gates form a combinational quantum loop: {labels}",
            stuck[0].span,
        )

    steps = [
        ScheduledOp(i, g) for i, g in enumerate(setups + ordered + measures)
    ]
    return Schedule(steps)


# -- deterministic VHDL wrapper ------------------------------------------------

def netlist_fingerprint(netlist: Netlist) -> str:
    """Stable digest of the flattened circuit; identical inputs hash alike."""
    h = hashlib.sha256()
    for gate in netlist.gates:
        pins = " ".join(f"{p}={gate.pin_to_net[p]}" for p in gate.gate.port_names)
        h.update(f"gate {gate.path_label} {gate.gate.name} {pins}\n".encode())
    for port, net_id in netlist.top_ports:
        h.update(f"port {port.name} {port.mode} {port.type_mark} {net_id}\n".encode())
    return h.hexdigest()


def emit_vhdl_wrapper(netlist: Netlist, top: EntityDecl) -> str:
    """VHDL text exposing the classical ports; body is a stub marker comment."""
    digest = netlist_fingerprint(netlist)[:16]
    lines = [
        f"-- Wrapper for '{top.name}'; the simulation model is supplied by the",
        "-- qsim runtime rather than by VHDL statements.",
        f"entity {top.name} is",
    ]
    if top.ports:
        lines.append("  port (")
        decls = [f"    {p.name}: {p.mode} {p.type_mark}" for p in top.ports]
        lines.append(";\n".join(decls))
        lines.append("    );")
    lines += [
        f"end entity {top.name};",
        "",
        f"architecture qsim of {top.name} is",
        "begin",
        f"  -- FOREIGN qsim netlist {digest}",
        f"end architecture qsim;",
        "",
    ]
    return "\n".join(lines)


# -- one-call driver -----------------------------------------------------------

class RuleCheckFailed(ElaborationError):
    """Raised when rule or clocking diagnostics were produced."""

    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__(diagnostics[0].message, diagnostics[0].span)
        self.diagnostics = diagnostics


@dataclass
class CompiledDesign:
    design: DesignFile
    top: EntityDecl
    netlist: Netlist
    wires: QubitWireAssignment
    plan: Schedule
    clock_net: int | None

    @property
    def facts(self) -> dict[str, int]:
        return {
            "gates": len(self.netlist.gates),
            "qubits": self.wires.n,
            "steps": self.plan.steps_total,
            "qnets": len(self.netlist.qnets),
            "cnets": len(self.netlist.cnets),
        }


def resolve_top(design: DesignFile, top: str | None) -> str:
    if top is not None:
        return top
    if len(design.entities) == 1:
        return design.entities[0].name
    names = ", ".join(e.name for e in design.entities) or "none"
    raise ElaborationError(
        f"--top is required when the design has multiple entities (found: {names})"
    )


def elaborate(
    design: DesignFile, top: str | None = None, qubit_limit: int = DEFAULT_QUBIT_LIMIT
) -> CompiledDesign:
    """Full pipeline: flatten, check rules and clocking, infer wires, schedule."""
    top_name = resolve_top(design, top)
    netlist = bind_and_flatten(design, top_name)
    top_entity = design.entity(top_name)
    diags = check_qbit_rules(netlist, top_entity, design)
    clock_net, clock_diags = check_clocking(netlist)
    diags.extend(clock_diags)
    if diags:
        raise RuleCheckFailed(diags)
    wires = infer_qubit_wires(netlist, qubit_limit)
    plan = schedule(netlist, wires)
    return CompiledDesign(design, top_entity, netlist, wires, plan, clock_net)
