"""Tokenizer for the constraint DSL.

Produces a flat token stream with source spans. The accepted alphabet is
identifiers (letters, digits, underscore, apostrophe), unsigned integers,
the punctuation set used by the grammar, and whitespace; anything else is
a LexError.
"""

from __future__ import annotations

from dataclasses import dataclass

SYMBOLS = frozenset("@:;.!?~+-=|<>,[]")
KEYWORDS = frozenset({"entities", "domain", "nonunique", "int", "json", "clear"})


class LexError(ValueError):
    def __init__(self, offset: int, char: str):
        super().__init__(f"illegal character {char!r} at offset {offset}")
        self.offset = offset
        self.char = char


@dataclass(frozen=True)
class SourceToken:
    kind: str  # "ident" | "int" | "sym" | "kw"
    lexeme: str
    span: tuple[int, int]

    def is_sym(self, ch: str) -> bool:
        return self.kind == "sym" and self.lexeme == ch

    def is_kw(self, word: str) -> bool:
        return self.kind == "kw" and self.lexeme.casefold() == word


def _is_ident_start(c: str) -> bool:
    return c.isalpha() and c.isascii()


def _is_ident_char(c: str) -> bool:
    return (c.isalnum() and c.isascii()) or c in "_'"


def tokenize(text: str) -> list[SourceToken]:
    """Lex DSL text into tokens; spans are non-overlapping and cover all non-whitespace."""
    tokens: list[SourceToken] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in SYMBOLS:
            tokens.append(SourceToken("sym", c, (i, i + 1)))
            i += 1
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(SourceToken("int", text[i:j], (i, j)))
            i = j
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            lexeme = text[i:j]
            kind = "kw" if lexeme.casefold() in KEYWORDS else "ident"
            tokens.append(SourceToken(kind, lexeme, (i, j)))
            i = j
            continue
        raise LexError(i, c)
    return tokens
