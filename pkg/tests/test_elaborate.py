from __future__ import annotations

import pytest

from qhdl.ast_nodes import PortDecl
from qhdl.builtins import BUILTIN_GATES, SETUP, UNITARY, MEASURE
from qhdl.diagnostics import (
    CombinationalLoopError,
    ElaborationError,
    PortMapMismatchError,
    QubitLimitError,
    RecursiveInstantiationError,
    UnknownComponentError,
    MissingArchitectureError,
    NO_SPAN,
)
from qhdl.elaborate import (
    RuleCheckFailed,
    bind_and_flatten,
    check_clocking,
    check_qbit_rules,
    elaborate,
    emit_vhdl_wrapper,
    infer_qubit_wires,
    netlist_fingerprint,
    schedule,
)
from qhdl.netlist import GateInstance, Net, Netlist
from qhdl.parser import parse_source

from conftest import RULE_I_SOURCE, RULE_II_SOURCE, RULE_III_SOURCE
from oracles import connected_component_count


@pytest.fixture(scope="module")
def bell_design(bell_source):
    return parse_source(bell_source, file="bell.qhdl")


@pytest.fixture(scope="module")
def bell_netlist(bell_design):
    return bind_and_flatten(bell_design, "bellstate")


def build_two_loop_netlist() -> Netlist:
    """Hand-built netlist: two disjoint qset -> qmeasure feedback loops."""
    netlist = Netlist()

    def add_net(mark, name):
        net = Net(len(netlist.nets), mark, name, NO_SPAN)
        netlist.nets.append(net)
        return net.id

    clk = add_net("bit", "clk")
    netlist.top_ports.append((PortDecl("clk", "in", "bit", NO_SPAN), clk))
    set_in = add_net("bit", "s")
    netlist.top_ports.append((PortDecl("s", "in", "bit", NO_SPAN), set_in))
    for k in range(2):
        r_bit = add_net("bit", f"r{k}")
        netlist.top_ports.append((PortDecl(f"r{k}", "out", "bit", NO_SPAN), r_bit))
        fwd = add_net("qbit", f"fwd{k}")
        back = add_net("qbit", f"back{k}")
        netlist.gates.append(
            GateInstance(
                f"dut.set{k}", BUILTIN_GATES["qset"],
                {"clk": clk, "d": back, "q": fwd, "set": set_in}, NO_SPAN,
            )
        )
        netlist.gates.append(
            GateInstance(
                f"dut.meas{k}", BUILTIN_GATES["qmeasure"],
                {"clk": clk, "d": fwd, "q": back, "result": r_bit}, NO_SPAN,
            )
        )
    return netlist


class TestFlatten:
    def test_bell_counts(self, bell_netlist, bell_design):
        assert len(bell_netlist.gates) == 6
        assert len(bell_netlist.qnets) == 7
        assert len(bell_netlist.cnets) == 5
        assert [p.name for p, _ in bell_netlist.top_ports] == [
            "clk", "a_in", "b_in", "a_out", "b_out",
        ]

    def test_flattening_preserves_gate_count(self, bell_netlist, bell_design):
        instantiated = sum(len(a.instances) for a in bell_design.architectures)
        assert len(bell_netlist.gates) == instantiated

    def test_one_level_hierarchy_aliases_ports(self):
        design = parse_source(
            "entity e1 is port (x: in qbit; y: out qbit); end;"
            "architecture a of e1 is begin g1: qnot port map ( d => x, q => y ); end;"
            "entity e2 is port (p: in qbit; q: out qbit); end;"
            "architecture a of e2 is begin u1: e1 port map ( x => p, y => q ); end;"
        )
        netlist = bind_and_flatten(design, "e2")
        assert [g.path_label for g in netlist.gates] == ["dut.u1.g1"]
        gate = netlist.gates[0]
        assert gate.pin_to_net["d"] == netlist.top_port_net("p")
        assert gate.pin_to_net["q"] == netlist.top_port_net("q")

    def test_unknown_component(self):
        design = parse_source(
            "entity e is end;"
            "architecture a of e is signal s, t: qbit;"
            " begin u: qfoo port map ( d => s, q => t ); end;"
        )
        with pytest.raises(UnknownComponentError):
            bind_and_flatten(design, "e")

    def test_missing_architecture(self):
        design = parse_source("entity e is end;")
        with pytest.raises(MissingArchitectureError):
            bind_and_flatten(design, "e")

    def test_recursive_instantiation(self):
        design = parse_source(
            "entity e is end;"
            "architecture a of e is begin u: e port map ( d ); end;"
        )
        with pytest.raises(RecursiveInstantiationError) as err:
            bind_and_flatten(design, "e")
        assert "e -> e" in err.value.message

    @pytest.mark.parametrize(
        "port_map, fragment",
        [
            ("d => s", "not connected"),          # q missing
            ("d => s, w => t", "no port named"),  # wrong formal
            ("d => s, d => t", "twice"),          # duplicate via positional? named dup caught in parser
            ("s, t, u", "too many positional"),
            ("d => clk, q => t", "is qbit but 'clk' is bit"),
            ("d => nosuch, q => t", "names no signal"),
        ],
    )
    def test_port_map_mismatches(self, port_map, fragment):
        if "d => s, d => t" in port_map:
            pytest.skip("duplicate named formals rejected at parse time")
        design = parse_source(
            "entity e is port (clk: in bit); end;"
            "architecture a of e is signal s, t, u: qbit;"
            f" begin g: qnot port map ( {port_map} ); end;"
        )
        with pytest.raises(PortMapMismatchError) as err:
            bind_and_flatten(design, "e")
        assert fragment in err.value.message

    def test_positional_then_named_duplicate(self):
        design = parse_source(
            "entity e is end;"
            "architecture a of e is signal s, t: qbit;"
            " begin g: qnot port map ( s, d => t ); end;"
        )
        with pytest.raises(PortMapMismatchError) as err:
            bind_and_flatten(design, "e")
        assert "twice" in err.value.message


class TestRules:
    def test_bell_is_clean(self, bell_netlist, bell_design):
        assert check_qbit_rules(bell_netlist, bell_design.entities[0], bell_design) == []

    def test_fanout_yields_single_rule_i(self):
        design = parse_source(RULE_I_SOURCE, file="fanout.qhdl")
        netlist = bind_and_flatten(design, "fanout")
        diags = check_qbit_rules(netlist, design.entities[0], design)
        assert len(diags) == 1
        assert diags[0].rule == 1
        assert "2 driver(s), 2 sink(s)" in diags[0].message

    def test_top_level_qbit_port_yields_single_rule_ii(self):
        design = parse_source(RULE_II_SOURCE, file="exposed.qhdl")
        netlist = bind_and_flatten(design, "exposed")
        diags = check_qbit_rules(netlist, design.entities[0], design)
        assert len(diags) == 1
        assert diags[0].rule == 2
        assert "'x'" in diags[0].message

    def test_process_yields_single_rule_iii(self):
        design = parse_source(RULE_III_SOURCE, file="classical.qhdl")
        netlist = bind_and_flatten(design, "classical")
        diags = check_qbit_rules(netlist, design.entities[0], design)
        assert len(diags) == 1
        assert diags[0].rule == 3

    def test_dangling_qbit_signal_is_rule_i(self):
        design = parse_source(
            "entity e is end;"
            "architecture a of e is signal s: qbit; begin end;"
        )
        netlist = bind_and_flatten(design, "e")
        diags = check_qbit_rules(netlist, design.entities[0], design)
        assert [d.rule for d in diags] == [1]
        assert "0 driver(s), 0 sink(s)" in diags[0].message

    def test_in_out_degree_one_after_clean_check(self, bell_netlist):
        for net in bell_netlist.qnets:
            assert len(bell_netlist.drivers_of(net.id)) == 1
            assert len(bell_netlist.sinks_of(net.id)) == 1

    def test_clocking_single_domain(self, bell_netlist):
        clock_net, diags = check_clocking(bell_netlist)
        assert diags == []
        assert clock_net == bell_netlist.top_port_net("clk")

    def test_clocking_rejects_two_domains(self):
        design = parse_source(
            "entity e is port (c1, c2: in bit; s_in: in bit; r: out bit); end;"
            "architecture a of e is signal f, b: qbit; begin"
            " st: qset port map ( clk => c1, d => b, q => f, set => s_in );"
            " me: qmeasure port map ( clk => c2, d => f, q => b, result => r );"
            "end;"
        )
        netlist = bind_and_flatten(design, "e")
        _, diags = check_clocking(netlist)
        assert len(diags) == 1
        assert "multiple clock domains" in diags[0].message


class TestWireInference:
    def test_bell_has_two_wires(self, bell_netlist):
        wires = infer_qubit_wires(bell_netlist)
        assert wires.n == 2
        by_name = {
            bell_netlist.net(net_id).name.removeprefix("dut."): w
            for net_id, w in wires.wire_of_qnet.items()
        }
        assert {k for k, w in by_name.items() if w == 0} == {
            "reg_a", "had_a", "not_a", "meas_a",
        }
        assert {k for k, w in by_name.items() if w == 1} == {"reg_b", "not_b", "meas_b"}

    def test_single_feedback_loop_is_one_wire(self):
        design = parse_source(
            "entity e is port (clk: in bit; s_in: in bit; r: out bit); end;"
            "architecture a of e is signal p, g, m: qbit; begin"
            " st: qset port map ( clk => clk, d => m, q => p, set => s_in );"
            " u: qnot port map ( d => p, q => g );"
            " me: qmeasure port map ( clk => clk, d => g, q => m, result => r );"
            "end;"
        )
        netlist = bind_and_flatten(design, "e")
        assert infer_qubit_wires(netlist).n == 1

    def test_two_disjoint_loops_match_component_oracle(self):
        netlist = build_two_loop_netlist()
        edges = [
            (g.pin_to_net[i], g.pin_to_net[o])
            for g in netlist.gates
            for i, o in g.gate.passthrough
        ]
        nodes = [n.id for n in netlist.qnets]
        assert connected_component_count(edges, nodes) == 2
        assert infer_qubit_wires(netlist).n == 2

    def test_bell_matches_component_oracle(self, bell_netlist):
        edges = [
            (g.pin_to_net[i], g.pin_to_net[o])
            for g in bell_netlist.gates
            for i, o in g.gate.passthrough
        ]
        nodes = [n.id for n in bell_netlist.qnets]
        assert connected_component_count(edges, nodes) == infer_qubit_wires(bell_netlist).n

    def test_declaration_order_does_not_change_count(self, bell_source):
        reordered = bell_source.replace(
            "setter_a: qset port map ( clk => clk, d => meas_a,\n      q => reg_a, set => a_in );",
            "@",
        )
        reordered = reordered.replace(
            "measure_b: qmeasure port map ( clk => clk, d => not_b,\n      q => meas_b, result => b_out );",
            "setter_a: qset port map ( clk => clk, d => meas_a, q => reg_a, set => a_in );",
        )
        reordered = reordered.replace(
            "@",
            "measure_b: qmeasure port map ( clk => clk, d => not_b, q => meas_b, result => b_out );",
        )
        netlist = bind_and_flatten(parse_source(reordered), "bellstate")
        assert infer_qubit_wires(netlist).n == 2

    def test_qubit_limit(self, bell_netlist):
        with pytest.raises(QubitLimitError):
            infer_qubit_wires(bell_netlist, limit=1)


class TestSchedule:
    def test_bell_step_order(self, bell_netlist):
        plan = schedule(bell_netlist, infer_qubit_wires(bell_netlist))
        assert plan.steps_total == 6
        assert [s.gate.path_label for s in plan.steps] == [
            "dut.setter_a", "dut.setter_b", "dut.hadamat_a",
            "dut.entangle", "dut.measure_a", "dut.measure_b",
        ]
        assert [s.step_index for s in plan.steps] == list(range(6))

    def test_lone_gate_pipeline_has_three_steps(self):
        design = parse_source(
            "entity e is port (clk: in bit; s_in: in bit; r: out bit); end;"
            "architecture a of e is signal p, g, m: qbit; begin"
            " st: qset port map ( clk => clk, d => m, q => p, set => s_in );"
            " u: qnot port map ( d => p, q => g );"
            " me: qmeasure port map ( clk => clk, d => g, q => m, result => r );"
            "end;"
        )
        netlist = bind_and_flatten(design, "e")
        plan = schedule(netlist, infer_qubit_wires(netlist))
        assert plan.steps_total == 3
        assert [s.gate.gate.kind for s in plan.steps] == [SETUP, UNITARY, MEASURE]

    def test_direct_unitary_cycle_rejected(self):
        design = parse_source(
            "entity e is end;"
            "architecture arch of e is signal x, y: qbit; begin"
            " g1: qnot port map ( d => x, q => y );"
            " g2: qnot port map ( d => y, q => x );"
            "end;"
        )
        netlist = bind_and_flatten(design, "e")
        with pytest.raises(CombinationalLoopError) as err:
            schedule(netlist, infer_qubit_wires(netlist))
        assert "dut.g1" in err.value.message and "dut.g2" in err.value.message

    def test_schedule_is_topological_modulo_setup_feedback(self, bell_netlist):
        plan = schedule(bell_netlist, infer_qubit_wires(bell_netlist))
        step_of = {id(s.gate): s.step_index for s in plan.steps}
        for net in bell_netlist.qnets:
            (driver, _), (sink, sink_pin) = (
                bell_netlist.drivers_of(net.id)[0],
                bell_netlist.sinks_of(net.id)[0],
            )
            if sink.gate.kind == SETUP and sink_pin == "d":
                continue  # feedback across the clock boundary
            assert step_of[id(driver)] < step_of[id(sink)]

    def test_phases_are_contiguous(self, bell_netlist):
        plan = schedule(bell_netlist, infer_qubit_wires(bell_netlist))
        kinds = [s.gate.gate.kind for s in plan.steps]
        assert kinds == sorted(kinds, key=[SETUP, UNITARY, MEASURE].index)

    def test_dataflow_tie_break_uses_declaration_order(self):
        # Two independent chains; interleaving must follow declaration order.
        design = parse_source(
            "entity e is port (clk: in bit; s_in: in bit; r1, r2: out bit); end;"
            "architecture a of e is signal p1, g1, m1, p2, g2, m2: qbit; begin"
            " st2: qset port map ( clk => clk, d => m2, q => p2, set => s_in );"
            " st1: qset port map ( clk => clk, d => m1, q => p1, set => s_in );"
            " u2: qhadamard port map ( d => p2, q => g2 );"
            " u1: qnot port map ( d => p1, q => g1 );"
            " me1: qmeasure port map ( clk => clk, d => g1, q => m1, result => r1 );"
            " me2: qmeasure port map ( clk => clk, d => g2, q => m2, result => r2 );"
            "end;"
        )
        netlist = bind_and_flatten(design, "e")
        plan = schedule(netlist, infer_qubit_wires(netlist))
        assert [s.gate.path_label for s in plan.steps] == [
            "dut.st2", "dut.st1", "dut.u2", "dut.u1", "dut.me1", "dut.me2",
        ]


class TestWrapper:
    def test_bell_wrapper_ports(self, bell_netlist, bell_design):
        text = emit_vhdl_wrapper(bell_netlist, bell_design.entities[0])
        assert "entity bellstate is" in text
        assert "clk: in bit;" in text
        assert "a_out: out bit;" in text
        assert "b_out: out bit" in text
        assert netlist_fingerprint(bell_netlist)[:16] in text

    def test_zero_port_wrapper_omits_port_list(self):
        design = parse_source(
            "entity e is end; architecture a of e is begin end;"
        )
        netlist = bind_and_flatten(design, "e")
        text = emit_vhdl_wrapper(netlist, design.entities[0])
        assert "port" not in text.split("architecture")[0].replace("-- ", "")

    def test_wrapper_is_deterministic(self, bell_netlist, bell_design):
        a = emit_vhdl_wrapper(bell_netlist, bell_design.entities[0])
        b = emit_vhdl_wrapper(bell_netlist, bell_design.entities[0])
        assert a == b

    def test_wrapper_reparses_as_matching_entity(self, bell_netlist, bell_design):
        text = emit_vhdl_wrapper(bell_netlist, bell_design.entities[0])
        wrapper_design = parse_source(text)
        assert wrapper_design.entities[0].ports == bell_design.entities[0].ports


class TestElaborateDriver:
    def test_bell_facts(self, bell_design):
        compiled = elaborate(bell_design)
        assert compiled.facts == {
            "gates": 6, "qubits": 2, "steps": 6, "qnets": 7, "cnets": 5,
        }

    def test_rule_failure_carries_diagnostics(self):
        design = parse_source(RULE_II_SOURCE)
        with pytest.raises(RuleCheckFailed) as err:
            elaborate(design)
        assert [d.rule for d in err.value.diagnostics] == [2]

    def test_top_required_with_multiple_entities(self):
        design = parse_source(
            "entity a is end; architecture x of a is begin end;"
            "entity b is end; architecture x of b is begin end;"
        )
        with pytest.raises(ElaborationError):
            elaborate(design)
        assert elaborate(design, top="a").top.name == "a"
