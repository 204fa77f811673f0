"""Walk the Bell circuit one scheduled operation at a time.

This is exactly what the web debugger does over its WebSocket protocol;
here the same session object is driven directly.  For the browser version:

    qhdl debug demos/bell.qhdl --top bellstate --debug-port 4711

then open http://localhost:4711/ and click "step".

Run from the repository root:  python demos/04_single_stepping.py
"""

from pathlib import Path

from qhdl.debug_server import DebugSession
from qhdl.elaborate import elaborate
from qhdl.engine import Engine
from qhdl.parser import parse_source
from qhdl.stimulus import Stimulus

here = Path(__file__).parent
design = parse_source((here / "bell.qhdl").read_text(), file="bell.qhdl")

session = DebugSession(Engine(elaborate(design), seed=42), Stimulus(), cycle_budget=2)


def show(message):
    if message["type"] != "state":
        print(message["type"])
        return
    mags = " ".join(f"{a['mag']:.3f}" for a in message["amplitudes"])
    print(
        f"  time {message['time_fs']:>8} fs  step {message['step']} "
        f"of 0-{message['steps_total'] - 1}  cycle {message['cycle']}  [{mags}]"
    )


print("initial state (nothing executed yet):")
show(session.status())

print("\nfirst cycle, one operation per step command:")
for _ in range(6):
    show(session.step())

print("\nstepping on rolls into cycle 1 (time advances one clock period):")
for _ in range(6):
    show(session.step())

print("\nbudget of 2 cycles exhausted:")
show(session.step())
