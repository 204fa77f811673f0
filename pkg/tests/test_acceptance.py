"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
"""

from __future__ import annotations

import itertools
import math
import os
import shutil
import subprocess
import sys
import threading
import time
from contextlib import contextmanager

import numpy as np
import pytest

from qhdl.debug_server import DebugServer, DebugSession
from qhdl.elaborate import bind_and_flatten, check_qbit_rules, elaborate
from qhdl.engine import Engine, SimTime
from qhdl.parser import parse_source
from qhdl.statevector import UNITARY_ARITY, StateVector, apply_unitary
from qhdl.stimulus import Stimulus

from conftest import BELL_PATH, RULE_I_SOURCE, RULE_II_SOURCE, RULE_III_SOURCE
from oracles import dense_gate_matrix, random_unit_states
from vcd_reader import read_vcd
from ws_client import WsClient


@contextmanager
def criterion(number: int, title: str, budget_s: float | None = None):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] {title}: FAIL")
        raise
    elapsed = time.perf_counter() - started
    if budget_s is not None and elapsed > budget_s:
        print(f"[criterion {number}] {title}: FAIL (took {elapsed:.2f}s > {budget_s}s)")
        pytest.fail(f"criterion {number} exceeded its {budget_s}s budget: {elapsed:.2f}s")
    print(f"[criterion {number}] {title}: PASS")


@pytest.fixture(scope="module")
def bell_design(bell_source):
    return parse_source(bell_source, file="bell.qhdl")


def test_criterion_1_bell_compile_facts(bell_design):
    with criterion(1, "Bell compile facts", budget_s=1.0):
        compiled = elaborate(bell_design)
        assert compiled.facts == {
            "gates": 6, "qubits": 2, "steps": 6, "qnets": 7, "cnets": 5,
        }
        diags = check_qbit_rules(compiled.netlist, compiled.top, bell_design)
        assert diags == []


def test_criterion_2_bell_state_snapshot(bell_design):
    with criterion(2, "Bell state after step 3", budget_s=1.0):
        engine = Engine(elaborate(bell_design), seed=42)
        engine.begin_cycle({"a_in": "0", "b_in": "0"})
        snaps = [engine.step_op() for _ in range(4)]
        top = snaps[3]
        assert top.sim_time == SimTime(5_000_000, 3)
        # (|00> + |11>)/sqrt(2); 0.70710678 is that magnitude shown to 8 digits
        expected = [math.sqrt(0.5), 0.0, 0.0, math.sqrt(0.5)]
        for (mag, phase), want in zip(top.amplitudes, expected):
            assert abs(mag - want) < 1e-10
            assert abs(phase) < 1e-10


def test_criterion_3_bell_correlation(bell_design):
    with criterion(3, "Bell correlation over 101 cycles", budget_s=1.0):
        compiled = elaborate(bell_design)
        for seed in (1, 2, 3):
            _, histogram = Engine(compiled, seed=seed).run(cycles=101)
            assert set(histogram.counts) <= {"00", "11"}
            assert histogram.total == 100
            assert histogram.counts.get("01", 0) == 0
            assert histogram.counts.get("10", 0) == 0
            for key in ("00", "11"):
                assert 30 <= histogram.counts.get(key, 0) <= 70


def test_criterion_4_rule_enforcement(bell_design):
    with criterion(4, "rule diagnostics for crafted violations"):
        cases = [
            (RULE_I_SOURCE, "fanout", 1, "rule i"),
            (RULE_II_SOURCE, "exposed", 2, "rule ii"),
            (RULE_III_SOURCE, "classical", 3, "rule iii"),
        ]
        for source, top, rule, tag in cases:
            design = parse_source(source, file=f"{top}.qhdl")
            netlist = bind_and_flatten(design, top)
            diags = check_qbit_rules(netlist, design.entity(top), design)
            assert len(diags) == 1
            assert diags[0].rule == rule
            assert tag in diags[0].message
        bell_netlist = bind_and_flatten(bell_design, "bellstate")
        assert check_qbit_rules(bell_netlist, bell_design.entity("bellstate"), bell_design) == []


def test_criterion_5_kernel_oracle_equivalence():
    with criterion(5, "kernels match dense-matrix oracle", budget_s=10.0):
        for n in (1, 2, 3, 4):
            states = random_unit_states(n, 100, seed=1000 + n)
            for kind, arity in sorted(UNITARY_ARITY.items()):
                if arity > n:
                    continue
                for qubits in itertools.permutations(range(n), arity):
                    matrix = dense_gate_matrix(kind, qubits, n)
                    expected = matrix @ states
                    for col in range(states.shape[1]):
                        sv = StateVector(n, states[:, col].copy())
                        apply_unitary(sv, kind, qubits)
                        assert np.max(np.abs(sv.amps - expected[:, col])) < 1e-12


def test_criterion_6_timing_and_vcd(bell_design, tmp_path):
    with criterion(6, "VCD timing verified by independent reader"):
        import io

        from qhdl.engine import ClockConfig
        from qhdl.vcd import write_vcd

        engine = Engine(elaborate(bell_design), seed=42)
        records, _ = engine.run(cycles=20)
        sink = io.StringIO()
        write_vcd(records, ClockConfig(), sink)
        trace = read_vcd(sink.getvalue())

        rising = [t for t, v in trace.transitions("clk") if v == "1"]
        assert rising == [5_000_000 + k * 10_000_000 for k in range(20)]
        edges = set(rising)
        for name in ("a_out", "b_out"):
            for t, _ in trace.transitions(name):
                assert t == 0 or t in edges
        for prev, here in zip(records, records[1:]):
            edge = here.edge_time.time_fs
            assert trace.value_at("a_out", edge) == prev.measured["measure_a"]
            assert trace.value_at("b_out", edge) == prev.measured["measure_b"]


def test_criterion_7_byte_determinism(tmp_path):
    with criterion(7, "byte-identical artifacts for one RunConfig"):
        bell = tmp_path / "bell.qhdl"
        shutil.copy(BELL_PATH, bell)
        outputs = {}
        for tag in ("first", "second"):
            vcd = tmp_path / f"{tag}.vcd"
            trace = tmp_path / f"{tag}.jsonl"
            env = dict(os.environ, QHDL_NO_COLOR="1")
            result = subprocess.run(
                [sys.executable, "-m", "qhdl.cli", "run", str(bell),
                 "--top", "bellstate", "--cycles", "101", "--seed", "42",
                 "--vcd", str(vcd), "--trace", str(trace)],
                capture_output=True, env=env, timeout=120,
            )
            assert result.returncode == 0
            outputs[tag] = (result.stdout, vcd.read_bytes(), trace.read_bytes())
        assert outputs["first"] == outputs["second"]


def test_criterion_8_debugger_matches_headless_run(bell_design):
    with criterion(8, "12 stepped frames equal headless 2-cycle trace"):
        compiled = elaborate(bell_design)

        headless: list = []
        Engine(compiled, seed=42).run(Stimulus(), cycles=2, trace=headless)
        assert len(headless) == 12

        session = DebugSession(Engine(compiled, seed=42), Stimulus(), cycle_budget=2)
        server = DebugServer(session, ("127.0.0.1", 0))
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            client = WsClient("127.0.0.1", server.server_address[1])
            assert client.recv_json()["type"] == "state"
            frames = [client.request_json({"type": "step"}) for _ in range(12)]
            assert client.request_json({"type": "step"}) == {"type": "ended"}
            client.close()
        finally:
            server.shutdown()
            server.server_close()
            thread.join(timeout=5)

        for frame, snap in zip(frames, headless):
            assert frame["type"] == "state"
            assert frame["time_fs"] == snap.time_fs
            assert frame["step"] == snap.step_index
            assert frame["cycle"] == snap.cycle
            assert frame["steps_total"] == 6
            got = [(a["mag"], a["phase"]) for a in frame["amplitudes"]]
            assert got == list(snap.amplitudes)
            assert frame["outputs"] == snap.outputs
