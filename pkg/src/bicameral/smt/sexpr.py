"""Minimal s-expression reader/writer for the SMT-LIB2 wire format.

Atoms are ints (numerals) or strings; |quoted symbols| are unquoted to their
inner text. Nested expressions are plain lists.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"\(|\)|\|[^|]*\||[^\s()|]+")


class SexprError(ValueError):
    pass


def _atom(token: str):
    if token.startswith("|") and token.endswith("|"):
        return token[1:-1]
    if token.isdigit() or (token.startswith("-") and token[1:].isdigit()):
        return int(token)
    return token


def parse_all(text: str) -> list:
    """Parse every s-expression in `text` into nested lists of atoms."""
    out: list = []
    stack: list[list] = []
    for token in _TOKEN_RE.findall(text):
        if token == "(":
            stack.append([])
        elif token == ")":
            if not stack:
                raise SexprError("unbalanced ')'")
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(_atom(token))
    if stack:
        raise SexprError("unbalanced '('")
    return out


def parse_one(text: str):
    exprs = parse_all(text)
    if len(exprs) != 1:
        raise SexprError(f"expected one expression, found {len(exprs)}")
    return exprs[0]


def needs_quoting(symbol: str) -> bool:
    return not re.fullmatch(r"[A-Za-z0-9~!@$%^&*_+=<>.?/-]+", symbol)


def quote_symbol(symbol: str) -> str:
    return f"|{symbol}|" if needs_quoting(symbol) else symbol


def balanced(text: str) -> bool:
    """True when every '(' in `text` is closed (quoted symbols respected)."""
    depth = 0
    in_bar = False
    for c in text:
        if in_bar:
            if c == "|":
                in_bar = False
        elif c == "|":
            in_bar = True
        elif c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                return True  # malformed; let the parser report it
    return depth == 0 and not in_bar


class StreamReader:
    """Accumulates text and yields complete top-level s-expressions."""

    def __init__(self) -> None:
        self._buf: list[str] = []
        self._depth = 0
        self._in_bar = False

    @property
    def empty(self) -> bool:
        return self._depth == 0 and not self._buf

    def feed(self, chunk: str) -> list:
        """Feed a chunk; returns any fully parsed top-level expressions."""
        out = []
        start = 0
        for i, c in enumerate(chunk):
            if self._in_bar:
                if c == "|":
                    self._in_bar = False
                continue
            if c == "|":
                self._in_bar = True
            elif c == "(":
                self._depth += 1
            elif c == ")":
                self._depth -= 1
                if self._depth == 0:
                    self._buf.append(chunk[start : i + 1])
                    out.extend(parse_all("".join(self._buf)))
                    self._buf = []
                    start = i + 1
                elif self._depth < 0:
                    raise SexprError("unbalanced ')' in stream")
        rest = chunk[start:]
        if rest and not (self._depth == 0 and not self._buf and rest.isspace()):
            self._buf.append(rest)
        return out
