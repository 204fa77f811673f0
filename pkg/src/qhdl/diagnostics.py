"""Source positions, diagnostics, and the error hierarchy shared by all stages."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Half-open region of an input file, 1-based line and column."""

    file: str
    line: int
    column: int
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid span {self.file}:{self.line}:{self.column}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


#: Span used for messages that have no usable source location.
NO_SPAN = SourceSpan(file="<none>", line=1, column=1, length=0)


@dataclass(frozen=True)
class Diagnostic:
    """A reportable problem; ``rule`` is 1..3 for quantum-circuit rule violations."""

    span: SourceSpan
    message: str
    rule: int | None = None

    def format(self, color: bool = False) -> str:
        tag = "\x1b[31merror\x1b[0m" if color else "error"
        return f"{self.span}: {tag}: {self.message}"


def use_color(stream=None) -> bool:
    """ANSI color is used only on a tty and only when QHDL_NO_COLOR is unset."""
    if os.environ.get("QHDL_NO_COLOR"):
        return False
    stream = stream if stream is not None else sys.stderr
    return hasattr(stream, "isatty") and stream.isatty()


def print_diagnostics(diags, stream=None) -> None:
    stream = stream if stream is not None else sys.stderr
    color = use_color(stream)
    for d in diags:
        print(d.format(color=color), file=stream)


class QhdlError(Exception):
    """Base class for errors raised by the compiler and simulator."""

    def __init__(self, message: str, span: SourceSpan = NO_SPAN, rule: int | None = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.rule = rule

    def diagnostic(self) -> Diagnostic:
        return Diagnostic(span=self.span, message=self.message, rule=self.rule)


class IllegalCharacterError(QhdlError):
    """Input character outside the language alphabet."""


class ParseError(QhdlError):
    """First syntax error encountered; parsing stops immediately."""

    def __init__(self, span: SourceSpan, expected: str, found: str):
        super().__init__(f"expected {expected}, found {found}", span)
        self.expected = expected
        self.found = found


class ElaborationError(QhdlError):
    """Base for errors while binding and flattening a design."""


class UnknownComponentError(ElaborationError):
    pass


class MissingArchitectureError(ElaborationError):
    pass


class PortMapMismatchError(ElaborationError):
    pass


class RecursiveInstantiationError(ElaborationError):
    pass


class QubitLimitError(QhdlError):
    """Inferred qubit count exceeds the configured state-vector limit."""


class CombinationalLoopError(ElaborationError):
    """Unitary gates form a qbit-dataflow cycle not broken by setup/measure."""


class SimulationError(QhdlError):
    """Base for runtime failures of the state-vector engine."""


class QubitIndexError(SimulationError):
    pass


class DuplicateQubitError(SimulationError):
    pass


class NormUnderflowError(SimulationError):
    """Selected measurement branch has vanishing probability: numeric corruption."""


class StimulusSyntaxError(QhdlError):
    def __init__(self, line: int, message: str):
        super().__init__(f"stimulus line {line}: {message}")
        self.line = line


class StimulusNameError(QhdlError):
    """Stimulus drives a name that is not a top-level classical input."""


class SinkWriteError(QhdlError):
    """Writing a trace artifact failed."""


class PortInUseError(QhdlError):
    """Requested debug-server port is already bound."""
