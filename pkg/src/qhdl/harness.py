"""Histogram bookkeeping, the JSONL state trace, and per-cycle log lines."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import SinkWriteError


@dataclass
class Histogram:
    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0

    def tally(self, key: str) -> None:
        self.counts[key] = self.counts.get(key, 0) + 1
        self.total += 1


def report_histogram(histogram: Histogram, sink=None) -> str:
    """One line per key in lexicographic order, then the grand total."""
    lines = []
    for key in sorted(histogram.counts):
        count = histogram.counts[key]
        lines.append(f"{key} {count} {count / histogram.total:.4f}")
    lines.append(f"total {histogram.total}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def write_state_trace(snapshots, sink) -> int:
    """One JSON object per snapshot: time, step, and (magnitude, phase) pairs.

    Numbers carry 17 significant digits so doubles round-trip exactly.
    """
    written = 0
    try:
        for sim_time, amps in snapshots:
            pairs = ",".join(f"[{m:.17g},{p:.17g}]" for m, p in amps)
            line = (
                f'{{"time_fs":{sim_time.time_fs},"step":{sim_time.delta_step},'
                f'"amps":[{pairs}]}}\n'
            )
            sink.write(line)
            written += len(line.encode()) if isinstance(line, str) else len(line)
    except OSError as err:
        raise SinkWriteError(f"state trace write failed: {err}") from err
    return written


def format_cycle_log(record) -> str:
    """Console line mirroring a testbench tracer process, e.g.
    ``cycle 3: a_out=0 b_out=1``."""
    outs = " ".join(f"{k}={v}" for k, v in record.outputs_presented.items())
    return f"cycle {record.cycle}: {outs}".rstrip()
