"""Recursive-descent parser; stops at the first syntax error.

The accepted grammar: library clauses, ``use qhdl.std.all;`` clauses, entity
declarations with a port list, and architectures holding signal declarations
and component instantiations.  Classical constructs (processes, concurrent
assignments, component declarations) are captured as opaque nodes so the rule
checker can reject them with a precise location instead of a syntax error.
"""

from __future__ import annotations

from .ast_nodes import (
    ArchitectureBody,
    Association,
    ClassicalConstruct,
    ComponentInstance,
    DesignFile,
    EntityDecl,
    LibraryClause,
    PortDecl,
    SignalDecl,
    UseClause,
)
from .diagnostics import ParseError, SourceSpan
from .lexer import Token, TokenKind, tokenize


def parse_source(source: str, file: str = "<string>") -> DesignFile:
    """Tokenize and parse one source file."""
    return parse(tokenize(source, file), file=file)


def parse(tokens: list[Token], file: str = "<string>") -> DesignFile:
    return _Parser(tokens, file).design_file()


def _describe(token: Token | None) -> str:
    if token is None:
        return "end of input"
    if token.kind is TokenKind.KEYWORD:
        return f"keyword '{token.text}'"
    if token.kind is TokenKind.IDENTIFIER:
        return f"'{token.text}'"
    return f"'{token.text}'"


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.pos = 0
        self._eof_span = tokens[-1].span if tokens else SourceSpan(file, 1, 1, 0)

    # -- token plumbing ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail("a token")
        self.pos += 1
        return tok

    def fail(self, expected: str) -> None:
        tok = self.peek()
        span = tok.span if tok else self._eof_span
        raise ParseError(span, expected, _describe(tok))

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_keyword(word):
            self.fail(f"'{word}'")
        return self.advance()

    def expect_symbol(self, sym: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_symbol(sym):
            self.fail(f"'{sym}'")
        return self.advance()

    def expect_identifier(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.IDENTIFIER:
            self.fail(what)
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_keyword(word)

    def at_symbol(self, sym: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_symbol(sym)

    def at_identifier(self, text: str | None = None) -> bool:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.IDENTIFIER:
            return False
        return text is None or tok.text == text

    # -- grammar -----------------------------------------------------------

    def design_file(self) -> DesignFile:
        context: list[LibraryClause | UseClause] = []
        entities: list[EntityDecl] = []
        architectures: list[ArchitectureBody] = []
        while self.peek() is not None:
            if self.at_keyword("library"):
                context.append(self.library_clause())
            elif self.at_keyword("use"):
                context.append(self.use_clause())
            elif self.at_keyword("entity"):
                entities.append(self.entity_decl())
            elif self.at_keyword("architecture"):
                architectures.append(self.architecture_body())
            else:
                self.fail("'library', 'use', 'entity', or 'architecture'")
        return DesignFile(tuple(context), tuple(entities), tuple(architectures))

    def library_clause(self) -> LibraryClause:
        kw = self.expect_keyword("library")
        name = self.expect_identifier("library name")
        self.expect_symbol(";")
        return LibraryClause(name.text, kw.span)

    def use_clause(self) -> UseClause:
        kw = self.expect_keyword("use")
        library = self.expect_identifier("library name")
        self.expect_symbol(".")
        package = self.expect_identifier("package name")
        self.expect_symbol(".")
        self.expect_keyword("all")
        self.expect_symbol(";")
        if (library.text, package.text) != ("qhdl", "std"):
            raise ParseError(
                kw.span, "'use qhdl.std.all'", f"'use {library.text}.{package.text}.all'"
            )
        return UseClause(library.text, package.text, kw.span)

    def entity_decl(self) -> EntityDecl:
        kw = self.expect_keyword("entity")
        name = self.expect_identifier("entity name")
        self.expect_keyword("is")
        ports: list[PortDecl] = []
        if self.at_keyword("port"):
            ports = self.port_clause()
        self.expect_keyword("end")
        if self.at_keyword("entity"):
            self.advance()
        if self.at_identifier():
            closing = self.advance()
            if closing.text != name.text:
                raise ParseError(closing.span, f"'{name.text}'", f"'{closing.text}'")
        self.expect_symbol(";")
        seen: set[str] = set()
        for p in ports:
            if p.name in seen:
                raise ParseError(p.span, "a distinct port name", f"duplicate '{p.name}'")
            seen.add(p.name)
        return EntityDecl(name.text, tuple(ports), kw.span)

    def port_clause(self) -> list[PortDecl]:
        self.expect_keyword("port")
        self.expect_symbol("(")
        ports: list[PortDecl] = []
        while True:
            ports.extend(self.port_item())
            if self.at_symbol(";"):
                self.advance()
                continue
            break
        self.expect_symbol(")")
        self.expect_symbol(";")
        return ports

    def port_item(self) -> list[PortDecl]:
        names = [self.expect_identifier("port name")]
        while self.at_symbol(","):
            self.advance()
            names.append(self.expect_identifier("port name"))
        self.expect_symbol(":")
        if self.at_keyword("in") or self.at_keyword("out"):
            mode = self.advance().text
        else:
            self.fail("'in' or 'out'")
        type_mark = self.type_mark()
        return [PortDecl(t.text, mode, type_mark, t.span) for t in names]

    def type_mark(self) -> str:
        if self.at_keyword("bit") or self.at_keyword("qbit"):
            return self.advance().text
        self.fail("'bit' or 'qbit'")

    def architecture_body(self) -> ArchitectureBody:
        kw = self.expect_keyword("architecture")
        name = self.expect_identifier("architecture name")
        self.expect_keyword("of")
        entity_name = self.expect_identifier("entity name")
        self.expect_keyword("is")
        signals: list[SignalDecl] = []
        classical: list[ClassicalConstruct] = []
        while not self.at_keyword("begin"):
            if self.at_keyword("signal"):
                signals.extend(self.signal_decl())
            elif self.at_identifier("component"):
                classical.append(self.capture_component_declaration())
            else:
                self.fail("'signal', 'begin', or a declaration")
        self.expect_keyword("begin")
        instances: list[ComponentInstance] = []
        while not self.at_keyword("end"):
            item = self.statement()
            if isinstance(item, ComponentInstance):
                instances.append(item)
            else:
                classical.append(item)
        self.expect_keyword("end")
        if self.at_keyword("architecture"):
            self.advance()
        if self.at_identifier():
            closing = self.advance()
            if closing.text != name.text:
                raise ParseError(closing.span, f"'{name.text}'", f"'{closing.text}'")
        self.expect_symbol(";")
        seen: set[str] = set()
        for s in signals:
            if s.name in seen:
                raise ParseError(s.span, "a distinct signal name", f"duplicate '{s.name}'")
            seen.add(s.name)
        labels: set[str] = set()
        for inst in instances:
            if inst.label in labels:
                raise ParseError(inst.span, "a distinct label", f"duplicate '{inst.label}'")
            labels.add(inst.label)
        return ArchitectureBody(
            name.text, entity_name.text, tuple(signals), tuple(instances),
            tuple(classical), kw.span,
        )

    def signal_decl(self) -> list[SignalDecl]:
        self.expect_keyword("signal")
        names = [self.expect_identifier("signal name")]
        while self.at_symbol(","):
            self.advance()
            names.append(self.expect_identifier("signal name"))
        self.expect_symbol(":")
        type_mark = self.type_mark()
        self.expect_symbol(";")
        return [SignalDecl(t.text, type_mark, t.span) for t in names]

    def statement(self) -> ComponentInstance | ClassicalConstruct:
        if self.at_identifier("process"):
            return self.capture_process(label=None, start=self.pos)
        start = self.pos
        label = self.expect_identifier("an instantiation label")
        if self.at_symbol("<="):
            return self.capture_concurrent_assignment(start)
        self.expect_symbol(":")
        if self.at_identifier("process"):
            return self.capture_process(label=label.text, start=start)
        component = self.expect_identifier("a component name")
        self.expect_keyword("port")
        self.expect_keyword("map")
        self.expect_symbol("(")
        port_map = [self.association()]
        while self.at_symbol(","):
            self.advance()
            port_map.append(self.association())
        self.expect_symbol(")")
        self.expect_symbol(";")
        named = [a.formal for a in port_map if a.formal is not None]
        for formal in named:
            if named.count(formal) > 1:
                raise ParseError(
                    label.span, "each formal at most once", f"duplicate formal '{formal}'"
                )
        return ComponentInstance(label.text, component.text, tuple(port_map), label.span)

    def association(self) -> Association:
        first = self.expect_identifier("a port name")
        if self.at_symbol("=>"):
            self.advance()
            actual = self.expect_identifier("a signal name")
            return Association(first.text, actual.text, first.span)
        return Association(None, first.text, first.span)

    # -- classical constructs (captured for rule checking, never elaborated) --

    def _slice_text(self, start: int) -> str:
        return " ".join(t.text for t in self.tokens[start:self.pos])

    def capture_process(self, label: str | None, start: int) -> ClassicalConstruct:
        anchor = self.peek().span
        self.advance()  # 'process'
        while True:
            tok = self.peek()
            if tok is None:
                self.fail("'end process'")
            if tok.is_keyword("end") and self.at_identifier_at(1, "process"):
                self.advance()
                self.advance()
                if self.at_identifier():
                    self.advance()
                self.expect_symbol(";")
                break
            self.advance()
        return ClassicalConstruct("process", self._slice_text(start), anchor)

    def capture_concurrent_assignment(self, start: int) -> ClassicalConstruct:
        anchor = self.tokens[start].span
        while not self.at_symbol(";"):
            if self.peek() is None:
                self.fail("';'")
            self.advance()
        self.advance()
        return ClassicalConstruct("concurrent-assignment", self._slice_text(start), anchor)

    def capture_component_declaration(self) -> ClassicalConstruct:
        start = self.pos
        anchor = self.peek().span
        self.advance()  # 'component'
        while True:
            tok = self.peek()
            if tok is None:
                self.fail("'end component'")
            if tok.is_keyword("end") and self.at_identifier_at(1, "component"):
                self.advance()
                self.advance()
                if self.at_identifier():
                    self.advance()
                self.expect_symbol(";")
                break
            self.advance()
        return ClassicalConstruct("component-declaration", self._slice_text(start), anchor)

    def at_identifier_at(self, offset: int, text: str) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind is TokenKind.IDENTIFIER and tok.text == text
