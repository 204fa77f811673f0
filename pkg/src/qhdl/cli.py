"""Command-line entry point: compile, run, and debug subcommands.

Exit codes: 0 success; 1 diagnostics (parse, rule, stimulus); 2 I/O or usage
problems; 3 simulation failures; 4 debug port already in use.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .ast_nodes import DesignFile, merge_design_files
from .diagnostics import (
    PortInUseError,
    QhdlError,
    SimulationError,
    print_diagnostics,
)
from .elaborate import CompiledDesign, RuleCheckFailed, elaborate, emit_vhdl_wrapper
from .engine import ClockConfig, Engine
from .harness import format_cycle_log, report_histogram, write_state_trace
from .statevector import DEFAULT_QUBIT_LIMIT
from .stimulus import Stimulus, parse_stimulus
from .vcd import write_vcd

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_IO = 2
EXIT_SIMULATION = 3
EXIT_PORT_IN_USE = 4


@dataclass
class RunConfig:
    sources: list[Path]
    top: str | None = None
    cycles: int = 101
    seed: int = 42
    clock: ClockConfig = field(default_factory=ClockConfig)
    stimulus_path: Path | None = None
    vcd_path: Path | None = None
    trace_path: Path | None = None
    wrapper_path: Path | None = None
    debug_port: int = 4711
    qubit_limit: int = DEFAULT_QUBIT_LIMIT
    log_cycles: bool = False


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhdl",
        description="Compile and simulate gate-level quantum circuit descriptions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("sources", nargs="+", type=Path, help="input .qhdl files")
        p.add_argument("--top", help="top-level entity (default: the only entity)")
        p.add_argument("--qubit-limit", type=int, default=DEFAULT_QUBIT_LIMIT)

    def add_run_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cycles", type=int, default=101)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--stimulus", type=Path, default=None)
        p.add_argument("--clock-period-fs", type=int, default=10_000_000)
        p.add_argument("--clock-first-edge-fs", type=int, default=5_000_000)

    compile_p = sub.add_parser("compile", help="elaborate and emit the VHDL wrapper")
    add_common(compile_p)
    compile_p.add_argument("--wrapper", type=Path, default=None,
                           help="wrapper output path (default: <top>.vhdl beside the input)")

    run_p = sub.add_parser("run", help="simulate and report the output histogram")
    add_common(run_p)
    add_run_flags(run_p)
    run_p.add_argument("--vcd", type=Path, default=None, help="write a VCD waveform")
    run_p.add_argument("--trace", type=Path, default=None, help="write a JSONL state trace")
    run_p.add_argument("--log-cycles", action="store_true",
                       help="print one line of presented outputs per cycle")

    debug_p = sub.add_parser("debug", help="serve the single-step web debugger")
    add_common(debug_p)
    add_run_flags(debug_p)
    debug_p.add_argument("--debug-port", type=int, default=4711)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(sources=list(args.sources), top=args.top, qubit_limit=args.qubit_limit)
    if hasattr(args, "cycles"):
        cfg.cycles = args.cycles
        cfg.seed = args.seed
        cfg.stimulus_path = args.stimulus
        cfg.clock = ClockConfig(args.clock_first_edge_fs, args.clock_period_fs)
    cfg.vcd_path = getattr(args, "vcd", None)
    cfg.trace_path = getattr(args, "trace", None)
    cfg.wrapper_path = getattr(args, "wrapper", None)
    cfg.log_cycles = getattr(args, "log_cycles", False)
    if hasattr(args, "debug_port"):
        cfg.debug_port = args.debug_port
    return cfg


def _load_files(paths: list[Path]) -> list[tuple[Path, DesignFile]]:
    from .parser import parse_source

    loaded = []
    for path in paths:
        text = path.read_text(encoding="utf-8")
        loaded.append((path, parse_source(text, file=str(path))))
    return loaded


def _compile(cfg: RunConfig) -> tuple[CompiledDesign, Path]:
    """Parse all sources and elaborate; returns the design plus the path of
    the file declaring the top entity (for wrapper placement)."""
    loaded = _load_files(cfg.sources)
    design = merge_design_files([d for _, d in loaded])
    seen: set[str] = set()
    for entity in design.entities:
        if entity.name in seen:
            raise QhdlError(f"entity '{entity.name}' declared more than once", entity.span)
        seen.add(entity.name)
    compiled = elaborate(design, top=cfg.top, qubit_limit=cfg.qubit_limit)
    home = cfg.sources[0]
    for path, part in loaded:
        if part.entity(compiled.top.name) is not None:
            home = path
            break
    return compiled, home


def _report_error(err: QhdlError) -> int:
    if isinstance(err, RuleCheckFailed):
        print_diagnostics(err.diagnostics)
    else:
        print_diagnostics([err.diagnostic()])
    return EXIT_DIAGNOSTICS


def cmd_compile(cfg: RunConfig) -> int:
    try:
        compiled, home = _compile(cfg)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except QhdlError as err:
        return _report_error(err)
    facts = compiled.facts
    wrapper_path = cfg.wrapper_path or home.parent / f"{compiled.top.name}.vhdl"
    try:
        wrapper_path.write_text(emit_vhdl_wrapper(compiled.netlist, compiled.top), encoding="utf-8")
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    print(
        f"gates={facts['gates']} qubits={facts['qubits']} steps={facts['steps']} "
        f"qnets={facts['qnets']} cnets={facts['cnets']}"
    )
    return EXIT_OK


def _load_stimulus(cfg: RunConfig) -> Stimulus:
    if cfg.stimulus_path is None:
        return Stimulus()
    return parse_stimulus(cfg.stimulus_path.read_text(encoding="utf-8"))


def cmd_run(cfg: RunConfig) -> int:
    try:
        compiled, _ = _compile(cfg)
        stimulus = _load_stimulus(cfg)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except QhdlError as err:
        return _report_error(err)

    engine = Engine(compiled, seed=cfg.seed, clock=cfg.clock)
    trace = [] if cfg.trace_path is not None else None
    try:
        records, histogram = engine.run(stimulus, cycles=cfg.cycles, trace=trace)
    except SimulationError as err:
        print_diagnostics([err.diagnostic()])
        return EXIT_SIMULATION
    except QhdlError as err:
        return _report_error(err)

    try:
        if cfg.vcd_path is not None:
            with open(cfg.vcd_path, "w", encoding="utf-8") as sink:
                write_vcd(records, cfg.clock, sink, clock_name=engine.clock_port or "clk")
        if cfg.trace_path is not None:
            with open(cfg.trace_path, "w", encoding="utf-8") as sink:
                write_state_trace([(s.sim_time, s.amplitudes) for s in trace], sink)
    except (OSError, QhdlError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO

    if cfg.log_cycles:
        for record in records:
            print(format_cycle_log(record))
    sys.stdout.write(report_histogram(histogram))
    return EXIT_OK


def cmd_debug(cfg: RunConfig) -> int:
    from .debug_server import DebugSession, serve

    try:
        compiled, _ = _compile(cfg)
        stimulus = _load_stimulus(cfg)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except QhdlError as err:
        return _report_error(err)

    engine = Engine(compiled, seed=cfg.seed, clock=cfg.clock)
    session = DebugSession(engine, stimulus, cycle_budget=cfg.cycles)
    try:
        serve(session, cfg.debug_port, on_ready=lambda port: print(
            f"debugger listening at http://localhost:{port}/", flush=True
        ))
    except PortInUseError as err:
        print(f"error: {err.message}", file=sys.stderr)
        return EXIT_PORT_IN_USE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if cfg.cycles < 1:
            parser.error("--cycles must be at least 1")
        if args.command == "debug" and not 1 <= cfg.debug_port <= 65535:
            parser.error("--debug-port must be in 1..65535")
    except ValueError as err:  # e.g. nonpositive clock period
        parser.error(str(err))
    if args.command == "compile":
        return cmd_compile(cfg)
    if args.command == "run":
        return cmd_run(cfg)
    return cmd_debug(cfg)


if __name__ == "__main__":
    sys.exit(main())
