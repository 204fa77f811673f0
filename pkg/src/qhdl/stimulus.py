"""Cycle-indexed input stimulus replacing an external testbench process.

Line format: ``default <name> <0|1>`` and ``at <cycle> <name> <0|1>``;
``#`` starts a comment.  An override holds from its cycle onward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import StimulusNameError, StimulusSyntaxError


@dataclass
class Stimulus:
    defaults: dict[str, str] = field(default_factory=dict)
    overrides: list[tuple[int, str, str]] = field(default_factory=list)  # sorted

    def value(self, name: str, cycle: int) -> str:
        """Last override with cycle <= ``cycle``, else the default, else '0'."""
        chosen = self.defaults.get(name, "0")
        for at, target, bit in self.overrides:
            if at > cycle:
                break
            if target == name:
                chosen = bit
        return chosen

    def names(self) -> set[str]:
        return set(self.defaults) | {name for _, name, _ in self.overrides}

    def validate_against(self, input_names: list[str]) -> None:
        unknown = sorted(self.names() - set(input_names))
        if unknown:
            raise StimulusNameError(
                f"stimulus drives unknown input(s): {', '.join(unknown)}"
            )


def parse_stimulus(text: str) -> Stimulus:
    defaults: dict[str, str] = {}
    overrides: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "default" and len(fields) == 3 and fields[2] in ("0", "1"):
            defaults[fields[1]] = fields[2]
        elif (
            fields[0] == "at"
            and len(fields) == 4
            and fields[1].isdigit()
            and fields[3] in ("0", "1")
        ):
            overrides.append((int(fields[1]), fields[2], fields[3]))
        else:
            raise StimulusSyntaxError(
                lineno, f"expected 'default <name> <0|1>' or 'at <cycle> <name> <0|1>', got {line!r}"
            )
    overrides.sort(key=lambda item: item[0])
    return Stimulus(defaults, overrides)
