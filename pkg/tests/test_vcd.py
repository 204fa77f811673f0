from __future__ import annotations

import io

import pytest

from qhdl.elaborate import elaborate
from qhdl.engine import ClockConfig, Engine
from qhdl.parser import parse_source
from qhdl.vcd import write_vcd

from vcd_reader import read_vcd


@pytest.fixture(scope="module")
def bell_run(bell_source):
    compiled = elaborate(parse_source(bell_source))
    engine = Engine(compiled, seed=42)
    records, _ = engine.run(cycles=5)
    return records


def render(records, clock=None) -> str:
    sink = io.StringIO()
    write_vcd(records, clock or ClockConfig(), sink)
    return sink.getvalue()


class TestWriter:
    def test_header_and_identifiers(self, bell_run):
        text = render(bell_run)
        assert text.startswith("$timescale 1 fs $end\n")
        assert "$var wire 1 ! clk $end" in text
        assert "$var wire 1 \" a_in $end" in text
        assert "$var wire 1 % b_out $end" in text

    def test_first_edge_section_shows_clock_high(self, bell_run):
        text = render(bell_run)
        trace = read_vcd(text)
        assert trace.value_at("clk", 5_000_000) == "1"
        assert trace.value_at("a_out", 5_000_000) == "0"
        assert trace.value_at("b_out", 5_000_000) == "0"

    def test_zero_cycles_gives_header_and_initial_dump_only(self):
        text = render([])
        assert "#0" in text
        assert "$dumpvars" in text
        assert text.count("#") == 1

    def test_identical_runs_identical_bytes(self, bell_run):
        assert render(bell_run) == render(bell_run)

    def test_returns_byte_count(self, bell_run):
        sink = io.StringIO()
        written = write_vcd(bell_run, ClockConfig(), sink)
        assert written == len(sink.getvalue().encode())


class TestReaderRoundTrip:
    def test_clock_edges_at_configured_times(self, bell_run):
        trace = read_vcd(render(bell_run))
        rising = [t for t, v in trace.transitions("clk") if v == "1"]
        falling = [t for t, v in trace.transitions("clk") if v == "0" and t > 0]
        assert rising == [5_000_000 + k * 10_000_000 for k in range(5)]
        assert falling == [10_000_000 + k * 10_000_000 for k in range(5)]

    def test_outputs_change_only_at_rising_edges(self, bell_run):
        trace = read_vcd(render(bell_run))
        edges = {r.edge_time.time_fs for r in bell_run}
        for name in ("a_out", "b_out"):
            for t, _ in trace.transitions(name):
                assert t == 0 or t in edges

    def test_presented_values_match_records(self, bell_run):
        trace = read_vcd(render(bell_run))
        for record in bell_run:
            edge = record.edge_time.time_fs
            for name, bit in record.outputs_presented.items():
                assert trace.value_at(name, edge) == bit
            for name, bit in record.inputs.items():
                assert trace.value_at(name, edge) == bit

    def test_output_at_edge_k_is_previous_cycle_measurement(self, bell_run):
        trace = read_vcd(render(bell_run))
        for prev, here in zip(bell_run, bell_run[1:]):
            edge = here.edge_time.time_fs
            assert trace.value_at("a_out", edge) == prev.measured["measure_a"]
            assert trace.value_at("b_out", edge) == prev.measured["measure_b"]

    def test_custom_clock_config(self, bell_source):
        compiled = elaborate(parse_source(bell_source))
        engine = Engine(compiled, clock=ClockConfig(first_edge_fs=100, period_fs=50))
        records, _ = engine.run(cycles=3)
        trace = read_vcd(render(records, ClockConfig(first_edge_fs=100, period_fs=50)))
        rising = [t for t, v in trace.transitions("clk") if v == "1"]
        assert rising == [100, 150, 200]
