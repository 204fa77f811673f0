"""Write the waveform (VCD) and state-evolution (JSONL) trace files.

The VCD shows the 100 MHz clock (rising edges at 5 ns + k * 10 ns), the
sampled inputs, and the presented outputs; any waveform viewer opens it.
The JSONL trace records the state vector after every scheduled operation
as (magnitude, phase) pairs.

Run from the repository root:  python demos/03_waveforms_and_traces.py
"""

import json
from pathlib import Path

from qhdl.elaborate import elaborate
from qhdl.engine import ClockConfig, Engine
from qhdl.harness import write_state_trace
from qhdl.parser import parse_source
from qhdl.vcd import write_vcd

here = Path(__file__).parent
design = parse_source((here / "bell.qhdl").read_text(), file="bell.qhdl")

clock = ClockConfig()  # 5 ns first edge, 10 ns period
engine = Engine(elaborate(design), seed=42, clock=clock)
trace = []
records, _ = engine.run(cycles=8, trace=trace)

vcd_path = here / "bell.vcd"
with open(vcd_path, "w") as sink:
    written = write_vcd(records, clock, sink)
print(f"wrote {vcd_path} ({written} bytes)")

trace_path = here / "bell_state.jsonl"
with open(trace_path, "w") as sink:
    write_state_trace([(s.sim_time, s.amplitudes) for s in trace], sink)
print(f"wrote {trace_path} ({len(trace)} snapshots, 6 per cycle)")

# The snapshot right after the controlled-NOT of cycle 0 is the Bell state.
with open(trace_path) as fh:
    step3 = json.loads(fh.readlines()[3])
print(f"\ntime {step3['time_fs']} fs, step {step3['step']}:")
for index, (mag, phase) in enumerate(step3["amps"]):
    bar = "#" * round(mag * 20)
    print(f"  |{index:02b}>  mag {mag:.4f}  phase {phase:+.2f}  {bar}")
