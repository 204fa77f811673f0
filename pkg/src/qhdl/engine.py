"""Clocked execution of a compiled design against one state vector.

Timing model: at each rising edge the environment's inputs are sampled and the
previous cycle's measurement results are presented; the scheduled operations
then run as delta steps within the same femtosecond timestamp; results latch
for presentation at the next edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builtins import MEASURE, SETUP
from .elaborate import CompiledDesign
from .harness import Histogram
from .rng import Rng
from .statevector import (
    StateVector,
    apply_unitary,
    measure_qubit,
    new_state,
    prepare_qubit,
    snapshot,
)
from .stimulus import Stimulus


@dataclass(frozen=True)
class SimTime:
    time_fs: int
    delta_step: int

    def key(self) -> tuple[int, int]:
        return (self.time_fs, self.delta_step)


@dataclass(frozen=True)
class ClockConfig:
    first_edge_fs: int = 5_000_000
    period_fs: int = 10_000_000

    def __post_init__(self) -> None:
        if self.period_fs <= 0 or self.first_edge_fs < 0:
            raise ValueError("clock needs period_fs > 0 and first_edge_fs >= 0")

    def rising_edge(self, cycle: int) -> int:
        return self.first_edge_fs + cycle * self.period_fs


@dataclass
class CycleRecord:
    cycle: int
    edge_time: SimTime
    inputs: dict[str, str]
    measured: dict[str, str]
    outputs_presented: dict[str, str]


@dataclass(frozen=True)
class StepSnapshot:
    """State right after one scheduled operation; what the debugger shows."""

    cycle: int
    time_fs: int
    step_index: int
    amplitudes: tuple[tuple[float, float], ...]
    outputs: dict[str, str]

    @property
    def sim_time(self) -> SimTime:
        return SimTime(self.time_fs, self.step_index)


def _short(path_label: str) -> str:
    return path_label.removeprefix("dut.")


class Engine:
    """Owns the state vector; one logical execution stream mutates it."""

    def __init__(
        self,
        compiled: CompiledDesign,
        seed: int = 42,
        clock: ClockConfig | None = None,
    ):
        self.compiled = compiled
        self.netlist = compiled.netlist
        self.plan = compiled.plan
        self.wires = compiled.wires
        self.clock = clock or ClockConfig()
        self.rng = Rng(seed)
        # The user-facing qubit limit was enforced during wire inference;
        # designs with no quantum gates idle on a single spectator qubit.
        n = max(1, compiled.wires.n)
        self.state: StateVector = new_state(n, limit=n)

        self.clock_port: str | None = None
        self.input_ports: list[str] = []
        self.output_ports: list[str] = []
        self._net_source: dict[int, tuple[str, str]] = {}
        for port, net_id in self.netlist.top_ports:
            if port.type_mark != "bit":
                continue
            if port.mode == "in":
                if net_id == compiled.clock_net:
                    self.clock_port = port.name
                else:
                    self.input_ports.append(port.name)
                    self._net_source[net_id] = ("input", port.name)
            else:
                self.output_ports.append(port.name)
        for gate in self.netlist.gates:
            if gate.gate.kind == MEASURE:
                self._net_source[gate.pin_to_net["result"]] = ("measure", gate.path_label)
        self._out_net = {
            port.name: net_id
            for port, net_id in self.netlist.top_ports
            if port.mode == "out" and port.type_mark == "bit"
        }

        self._latch: dict[str, str] = {
            g.path_label: "0" for g in self.netlist.gates if g.gate.kind == MEASURE
        }
        self._measured_now: dict[str, str] = {}
        self.presented: dict[str, str] = {}
        self.sampled: dict[str, str] = {}
        self.cycle = 0
        self.time_fs = self.clock.rising_edge(0)
        self.next_step = 0
        self.records: list[CycleRecord] = []
        self._record: CycleRecord | None = None

    # -- classical values at the current edge --------------------------------

    def _cnet_value(self, net_id: int) -> str:
        source = self._net_source.get(net_id)
        if source is None:
            return "0"
        kind, name = source
        return self.sampled.get(name, "0") if kind == "input" else self._latch[name]

    # -- cycle phases ---------------------------------------------------------

    def begin_cycle(self, inputs: dict[str, str]) -> None:
        """Rising edge: present last cycle's results, sample this cycle's inputs."""
        assert self._record is None, "previous cycle still open"
        self.sampled = {name: inputs.get(name, "0") for name in self.input_ports}
        self.presented = {
            name: self._cnet_value(net_id) for name, net_id in self._out_net.items()
        }
        self._measured_now = {}
        self._record = CycleRecord(
            cycle=self.cycle,
            edge_time=SimTime(self.time_fs, 0),
            inputs=dict(self.sampled),
            measured={},
            outputs_presented=dict(self.presented),
        )

    def step_op(self) -> StepSnapshot:
        """Execute exactly one scheduled operation as one delta step."""
        assert self._record is not None, "begin_cycle first"
        op = self.plan.steps[self.next_step]
        gate = op.gate
        builtin = gate.gate
        operands = tuple(
            self.wires.wire_of_qnet[gate.pin_to_net[pin]] for pin in builtin.operand_pins
        )
        if builtin.kind == SETUP:
            value = self._cnet_value(gate.pin_to_net["set"])
            prepare_qubit(self.state, operands[0], value, self.rng)
        elif builtin.kind == MEASURE:
            bit, _ = measure_qubit(self.state, operands[0], self.rng)
            self._measured_now[gate.path_label] = bit
            self._record.measured[_short(gate.path_label)] = bit
        else:
            apply_unitary(self.state, builtin.unitary_kind, operands)
        snap = StepSnapshot(
            cycle=self.cycle,
            time_fs=self.time_fs,
            step_index=op.step_index,
            amplitudes=tuple(snapshot(self.state)),
            outputs=dict(self.presented),
        )
        self.next_step += 1
        return snap

    def end_cycle(self) -> CycleRecord:
        """Latch results, advance to the next rising edge."""
        assert self._record is not None and self.next_step == self.plan.steps_total
        self._latch.update(self._measured_now)
        record = self._record
        self.records.append(record)
        self._record = None
        self.cycle += 1
        self.time_fs = self.clock.rising_edge(self.cycle)
        self.next_step = 0
        return record

    def run_cycle(self, inputs: dict[str, str]) -> CycleRecord:
        self.begin_cycle(inputs)
        while self.next_step < self.plan.steps_total:
            self.step_op()
        return self.end_cycle()

    def run(
        self,
        stimulus: Stimulus | None = None,
        cycles: int = 101,
        trace: list[StepSnapshot] | None = None,
    ) -> tuple[list[CycleRecord], Histogram]:
        """Run ``cycles`` clock cycles; tally presented outputs of cycles 1..N-1.

        Cycle 0 presents reset values, so it appears in the records but not in
        the histogram.
        """
        if cycles < 1:
            raise ValueError("cycles must be >= 1")
        stimulus = stimulus or Stimulus()
        stimulus.validate_against(self.input_ports)
        start = len(self.records)
        for k in range(cycles):
            inputs = {name: stimulus.value(name, self.cycle) for name in self.input_ports}
            self.begin_cycle(inputs)
            while self.next_step < self.plan.steps_total:
                snap = self.step_op()
                if trace is not None:
                    trace.append(snap)
            self.end_cycle()
        produced = self.records[start:]
        histogram = Histogram()
        for record in produced:
            if record.cycle == 0:
                continue  # reset presentation, tallied separately
            histogram.tally(self.output_key(record))
        return produced, histogram

    def output_key(self, record: CycleRecord) -> str:
        """Presented output bits concatenated in port declaration order."""
        return "".join(record.outputs_presented[name] for name in self.output_ports)
