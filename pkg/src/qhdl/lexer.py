"""Tokenizer for the VHDL-subset circuit language.

Identifiers and keywords are case-normalized to lowercase; ``--`` comments and
whitespace vanish.  Any character outside the subset alphabet is an error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .diagnostics import IllegalCharacterError, SourceSpan

KEYWORDS = frozenset(
    {
        "library", "use", "all", "entity", "is", "port", "in", "out", "end",
        "architecture", "of", "signal", "begin", "map", "bit", "qbit",
    }
)

#: Multi-character symbols first so '=>' never lexes as '=' + '>'.
_SYMBOLS = ("=>", "<=", ";", ":", ",", ".", "(", ")")


class TokenKind(enum.Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    SYMBOL = "symbol"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan = field(compare=False)

    def is_keyword(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.text == word

    def is_symbol(self, text: str) -> bool:
        return self.kind is TokenKind.SYMBOL and self.text == text


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    """Scan ``source`` into tokens carrying spans into the original text."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, end = 0, len(source)
    while i < end:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("--", i):
            while i < end and source[i] != "\n":
                i += 1
                col += 1
            continue
        if ch.isalpha():
            start, start_col = i, col
            while i < end and (source[i].isalnum() or source[i] == "_"):
                i += 1
                col += 1
            text = source[start:i].lower()
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(kind, text, SourceSpan(file, line, start_col, i - start)))
            continue
        for sym in _SYMBOLS:
            if source.startswith(sym, i):
                tokens.append(Token(TokenKind.SYMBOL, sym, SourceSpan(file, line, col, len(sym))))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise IllegalCharacterError(
                f"illegal character {ch!r}", SourceSpan(file, line, col, 1)
            )
    return tokens
