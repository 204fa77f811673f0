"""Compile the Bell circuit and look at everything the compiler produces.

Run from the repository root:  python demos/01_compile_and_inspect.py
"""

from pathlib import Path

from qhdl.elaborate import elaborate, emit_vhdl_wrapper
from qhdl.parser import parse_source

source_path = Path(__file__).parent / "bell.qhdl"
design = parse_source(source_path.read_text(), file=str(source_path))

# The tree mirrors the source: one entity, one architecture.
entity = design.entities[0]
print(f"entity {entity.name} with ports:")
for port in entity.ports:
    print(f"  {port.name}: {port.mode} {port.type_mark}")

# Elaboration flattens the hierarchy, checks the three circuit rules,
# infers how many physical qubits the signals describe, and schedules
# the per-cycle evaluation order.
compiled = elaborate(design, top="bellstate")
print("\nfacts:", compiled.facts)

print("\nqubit wires (signal -> wire index):")
for net_id, wire in sorted(compiled.wires.wire_of_qnet.items()):
    print(f"  {compiled.netlist.net(net_id).name} -> {wire}")

print("\nschedule (one delta step per operation, every cycle):")
for op in compiled.plan.steps:
    print(f"  step {op.step_index}: {op.gate.path_label} ({op.gate.gate.name})")

# The VHDL wrapper re-exposes the classical ports for co-simulation.
print("\n" + emit_vhdl_wrapper(compiled.netlist, compiled.top))
