"""Canonical pretty-printer: parse(format_design(parse(s))) == parse(s)."""

from __future__ import annotations

from .ast_nodes import (
    ArchitectureBody,
    ComponentInstance,
    DesignFile,
    EntityDecl,
    LibraryClause,
)


def format_design(design: DesignFile) -> str:
    parts: list[str] = []
    for clause in design.context_clauses:
        if isinstance(clause, LibraryClause):
            parts.append(f"library {clause.name};\n")
        else:
            parts.append(f"use {clause.library}.{clause.package}.all;\n")
    for entity in design.entities:
        parts.append(_format_entity(entity))
    for arch in design.architectures:
        parts.append(_format_architecture(arch))
    return "\n".join(parts)


def _format_entity(entity: EntityDecl) -> str:
    lines = [f"entity {entity.name} is"]
    if entity.ports:
        lines.append("  port (")
        decls = [f"    {p.name}: {p.mode} {p.type_mark}" for p in entity.ports]
        lines.append(";\n".join(decls))
        lines.append("    );")
    lines.append(f"end entity {entity.name};\n")
    return "\n".join(lines)


def _format_instance(inst: ComponentInstance) -> str:
    assocs = ", ".join(
        f"{a.formal} => {a.actual}" if a.formal is not None else a.actual
        for a in inst.port_map
    )
    return f"  {inst.label}: {inst.component_name} port map ( {assocs} );"


def _format_architecture(arch: ArchitectureBody) -> str:
    lines = [f"architecture {arch.name} of {arch.entity_name} is"]
    for sig in arch.signal_decls:
        lines.append(f"  signal {sig.name}: {sig.type_mark};")
    for c in arch.classical:
        if c.kind == "component-declaration":
            lines.append(f"  {c.text}")
    lines.append("begin")
    for inst in arch.instances:
        lines.append(_format_instance(inst))
    for c in arch.classical:
        if c.kind != "component-declaration":
            lines.append(f"  {c.text}")
    lines.append(f"end architecture {arch.name};\n")
    return "\n".join(lines)
