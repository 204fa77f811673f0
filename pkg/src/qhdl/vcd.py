"""Value Change Dump emission for the clock, inputs, and presented outputs.

Femtosecond timescale; identifiers run from '!' in port declaration order;
only genuine transitions are dumped after the initial value block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import SinkWriteError
from .engine import ClockConfig, CycleRecord


@dataclass
class VcdDocument:
    timescale: str
    vars: list[tuple[str, str]]  # (identifier, name)
    events: list[tuple[int, str, str]]  # (time_fs, identifier, bit)


def build_vcd_document(
    records: list[CycleRecord],
    clock: ClockConfig,
    clock_name: str | None = "clk",
) -> VcdDocument:
    """Lay out every value change implied by the cycle records.

    Inputs and outputs change at rising edges only; the clock also falls half
    a period after each rising edge.  Time zero dumps the initial values:
    clock low, outputs low, inputs at their first sampled values.
    """
    names: list[str] = []
    if clock_name is not None:
        names.append(clock_name)
    if records:
        names.extend(records[0].inputs)
        names.extend(records[0].outputs_presented)
    ident = {name: chr(ord("!") + i) for i, name in enumerate(names)}

    events: list[tuple[int, str, str]] = []
    last: dict[str, str] = {}

    def emit(time_fs: int, name: str, bit: str, force: bool = False) -> None:
        if force or last.get(name) != bit:
            events.append((time_fs, ident[name], bit))
            last[name] = bit

    if clock_name is not None:
        emit(0, clock_name, "0", force=True)
    for name in names:
        if name == clock_name:
            continue
        initial = records[0].inputs.get(name, "0") if records else "0"
        emit(0, name, initial, force=True)

    for record in records:
        edge = record.edge_time.time_fs
        if clock_name is not None:
            emit(edge, clock_name, "1", force=True)
        for name, bit in record.inputs.items():
            emit(edge, name, bit)
        for name, bit in record.outputs_presented.items():
            emit(edge, name, bit)
        if clock_name is not None:
            emit(edge + clock.period_fs // 2, clock_name, "0", force=True)

    return VcdDocument("1 fs", [(ident[n], n) for n in names], events)


def write_vcd(
    records: list[CycleRecord],
    clock: ClockConfig,
    sink,
    clock_name: str | None = "clk",
) -> int:
    """Render the trace as VCD text into ``sink``; returns bytes written."""
    doc = build_vcd_document(records, clock, clock_name)
    lines = ["$timescale 1 fs $end"]
    for ident, name in doc.vars:
        lines.append(f"$var wire 1 {ident} {name} $end")
    lines.append("$enddefinitions $end")

    lines.append("#0")
    lines.append("$dumpvars")
    remaining = iter(doc.events)
    pending: tuple[int, str, str] | None = None
    for time_fs, ident, bit in remaining:
        if time_fs != 0:
            pending = (time_fs, ident, bit)
            break
        lines.append(f"{bit}{ident}")
    lines.append("$end")

    current_time = 0
    for event in ([pending] if pending else []) + list(remaining):
        time_fs, ident, bit = event
        if time_fs != current_time:
            lines.append(f"#{time_fs}")
            current_time = time_fs
        lines.append(f"{bit}{ident}")

    text = "\n".join(lines) + "\n"
    try:
        sink.write(text)
    except OSError as err:
        raise SinkWriteError(f"VCD write failed: {err}") from err
    return len(text.encode())
