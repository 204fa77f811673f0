"""Syntax tree for parsed design files.

Spans never take part in equality, so trees from differently formatted but
structurally identical sources compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import SourceSpan


@dataclass(frozen=True)
class LibraryClause:
    name: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class UseClause:
    library: str
    package: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class PortDecl:
    name: str
    mode: str  # "in" | "out"
    type_mark: str  # "bit" | "qbit"
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class EntityDecl:
    name: str
    ports: tuple[PortDecl, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class SignalDecl:
    name: str
    type_mark: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Association:
    """Port-map entry; ``formal`` is None for positional association."""

    formal: str | None
    actual: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class ComponentInstance:
    label: str
    component_name: str
    port_map: tuple[Association, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class ClassicalConstruct:
    """Non-quantum construct captured verbatim so rule checks can cite it.

    ``kind`` is one of "process", "concurrent-assignment",
    "component-declaration"; ``text`` holds the lowercased source slice.
    """

    kind: str
    text: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class ArchitectureBody:
    name: str
    entity_name: str
    signal_decls: tuple[SignalDecl, ...]
    instances: tuple[ComponentInstance, ...]
    classical: tuple[ClassicalConstruct, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class DesignFile:
    context_clauses: tuple[LibraryClause | UseClause, ...]
    entities: tuple[EntityDecl, ...]
    architectures: tuple[ArchitectureBody, ...]

    def entity(self, name: str) -> EntityDecl | None:
        for e in self.entities:
            if e.name == name:
                return e
        return None

    def architectures_of(self, entity_name: str) -> tuple[ArchitectureBody, ...]:
        return tuple(a for a in self.architectures if a.entity_name == entity_name)


def merge_design_files(files: list[DesignFile]) -> DesignFile:
    """Concatenate design units from several source files."""
    return DesignFile(
        context_clauses=tuple(c for f in files for c in f.context_clauses),
        entities=tuple(e for f in files for e in f.entities),
        architectures=tuple(a for f in files for a in f.architectures),
    )
