"""Recursive descent parser: token stream -> typed commands.

Commands are semicolon-terminated; parse_command consumes exactly one.
There is no recovery beyond skip_to_semicolon, which callers use to
resynchronize after an error.
"""

from __future__ import annotations

from .ast import (
    Adjacency,
    Assign,
    Clear,
    Command,
    DeclareDomain,
    DeclareEntities,
    DeclareNonUnique,
    DiffValue,
    Direct,
    Discrete,
    Disjunction,
    EntityBind,
    Exclude,
    Greater,
    Indirect,
    IntRange,
    LeftOf,
    Less,
    Operand,
    QueryAttr,
    QueryEntity,
    QueryJson,
    QuerySat,
    Retract,
    RightOf,
    SameValue,
)
from .lexer import SourceToken, tokenize


class ParseError(ValueError):
    def __init__(self, expected: str, found: str, span: tuple[int, int]):
        super().__init__(f"expected {expected}, found {found} at {span[0]}..{span[1]}")
        self.expected = expected
        self.found = found
        self.span = span


class _Cursor:
    def __init__(self, tokens: list[SourceToken], pos: int):
        self.tokens = tokens
        self.pos = pos

    def peek(self, offset: int = 0) -> SourceToken | None:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def _fail(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1].span if self.tokens else (0, 0)
            return ParseError(expected, "<end of input>", (last[1], last[1]))
        return ParseError(expected, repr(tok.lexeme), tok.span)

    def take(self, expected: str) -> SourceToken:
        tok = self.peek()
        if tok is None:
            raise self._fail(expected)
        self.pos += 1
        return tok

    def take_sym(self, ch: str) -> SourceToken:
        tok = self.peek()
        if tok is None or not tok.is_sym(ch):
            raise self._fail(f"'{ch}'")
        self.pos += 1
        return tok

    def take_name(self, what: str = "name") -> str:
        tok = self.peek()
        if tok is None or tok.kind not in ("ident", "kw"):
            raise self._fail(what)
        self.pos += 1
        return tok.lexeme

    def take_int(self, what: str = "integer") -> int:
        tok = self.peek()
        if tok is None or tok.kind != "int":
            raise self._fail(what)
        self.pos += 1
        return int(tok.lexeme)

    def take_value(self) -> str:
        """A value literal: name, integer, or negative integer."""
        tok = self.peek()
        if tok is None:
            raise self._fail("value")
        if tok.is_sym("-"):
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == "int":
                self.pos += 2
                return "-" + nxt.lexeme
            raise self._fail("value")
        if tok.kind in ("ident", "kw", "int"):
            self.pos += 1
            return tok.lexeme
        raise self._fail("value")

    def at_operand(self) -> bool:
        """True when the upcoming tokens start an operand rather than a bare value."""
        tok = self.peek()
        if tok is None:
            return False
        if tok.is_sym("@"):
            return True
        nxt = self.peek(1)
        return tok.kind in ("ident", "kw") and nxt is not None and nxt.is_sym(".")


def parse_command(tokens: list[SourceToken], cursor: int = 0) -> tuple[Command, int]:
    """Parse one semicolon-terminated command starting at token index `cursor`.

    Returns the command and the index just past its ';'.
    """
    cur = _Cursor(tokens, cursor)
    tok = cur.peek()
    if tok is None:
        raise cur._fail("command")

    if tok.is_sym("@"):
        command = _parse_at_command(cur)
    elif tok.is_sym("?"):
        command = _parse_query(cur)
    elif tok.is_sym("!"):
        cur.take_sym("!")
        index = cur.take_int("command index")
        command = Retract(index)
    elif tok.is_kw("clear"):
        cur.take("clear")
        command = Clear()
    else:
        command = _parse_constraint(cur, _parse_direct_operand(cur))
    cur.take_sym(";")
    return command, cur.pos


def _parse_at_command(cur: _Cursor) -> Command:
    cur.take_sym("@")
    tok = cur.peek()
    if tok is not None and tok.is_kw("entities"):
        cur.take("entities")
        cur.take_sym(":")
        names = [cur.take_name("entity name")]
        while cur.peek() is not None and cur.peek().is_sym(","):
            cur.take_sym(",")
            names.append(cur.take_name("entity name"))
        return DeclareEntities(tuple(names))
    if tok is not None and tok.is_kw("domain"):
        cur.take("domain")
        cur.take_sym(":")
        attribute = cur.take_name("attribute name")
        cur.take_sym(":")
        return DeclareDomain(attribute, _parse_domain_spec(cur))
    if tok is not None and tok.is_kw("nonunique"):
        cur.take("nonunique")
        cur.take_sym(":")
        return DeclareNonUnique(cur.take_name("attribute name"))

    # @attr:value followed by '.' continues as an indirect operand;
    # followed by '=' it is an entity binding.
    ref_attribute = cur.take_name("attribute name")
    cur.take_sym(":")
    ref_value = cur.take_value()
    nxt = cur.peek()
    if nxt is not None and nxt.is_sym("."):
        cur.take_sym(".")
        attribute = cur.take_name("attribute name")
        return _parse_constraint(cur, Indirect(ref_attribute, ref_value, attribute))
    if nxt is not None and nxt.is_sym("="):
        cur.take_sym("=")
        entity = cur.take_name("entity name")
        return EntityBind(ref_attribute, ref_value, entity)
    raise cur._fail("'.' or '='")


def _parse_domain_spec(cur: _Cursor):
    tok = cur.peek()
    nxt = cur.peek(1)
    if tok is not None and tok.is_kw("int") and nxt is not None and nxt.is_sym("["):
        cur.take("int")
        cur.take_sym("[")
        lo = _parse_signed_int(cur)
        cur.take_sym(",")
        hi = _parse_signed_int(cur)
        cur.take_sym("]")
        if lo > hi:
            raise ParseError("lo <= hi", f"[{lo},{hi}]", tok.span)
        return IntRange(lo, hi)
    values = [cur.take_value()]
    while cur.peek() is not None and cur.peek().is_sym(","):
        cur.take_sym(",")
        values.append(cur.take_value())
    return Discrete(tuple(values))


def _parse_signed_int(cur: _Cursor) -> int:
    tok = cur.peek()
    if tok is not None and tok.is_sym("-"):
        cur.take_sym("-")
        return -cur.take_int()
    return cur.take_int()


def _parse_query(cur: _Cursor) -> Command:
    cur.take_sym("?")
    tok = cur.peek()
    if tok is not None and tok.is_sym(";"):
        return QuerySat()
    if tok is not None and tok.is_kw("json"):
        cur.take("json")
        return QueryJson()
    entity = cur.take_name("entity name")
    nxt = cur.peek()
    if nxt is not None and nxt.is_sym("."):
        cur.take_sym(".")
        return QueryAttr(entity, cur.take_name("attribute name"))
    return QueryEntity(entity)


def _parse_direct_operand(cur: _Cursor) -> Direct:
    entity = cur.take_name("entity name")
    cur.take_sym(".")
    attribute = cur.take_name("attribute name")
    return Direct(entity, attribute)


def _parse_operand(cur: _Cursor) -> Operand:
    tok = cur.peek()
    if tok is not None and tok.is_sym("@"):
        cur.take_sym("@")
        ref_attribute = cur.take_name("attribute name")
        cur.take_sym(":")
        ref_value = cur.take_value()
        cur.take_sym(".")
        attribute = cur.take_name("attribute name")
        return Indirect(ref_attribute, ref_value, attribute)
    return _parse_direct_operand(cur)


def _parse_constraint(cur: _Cursor, lhs: Operand) -> Command:
    tok = cur.peek()
    if tok is None:
        raise cur._fail("constraint operator")

    if tok.is_sym("="):
        cur.take_sym("=")
        if cur.at_operand():
            return SameValue(lhs, _parse_operand(cur))
        values = [cur.take_value()]
        while cur.peek() is not None and cur.peek().is_sym("|"):
            cur.take_sym("|")
            values.append(cur.take_value())
        if len(values) == 1:
            return Assign(lhs, values[0])
        return Disjunction(lhs, tuple(values))

    if tok.is_sym("!"):
        cur.take_sym("!")
        cur.take_sym("=")
        if cur.at_operand():
            return DiffValue(lhs, _parse_operand(cur))
        return Exclude(lhs, cur.take_value())

    if tok.is_sym("<"):
        cur.take_sym("<")
        return Less(lhs, _parse_operand(cur))

    if tok.is_sym(">"):
        cur.take_sym(">")
        return Greater(lhs, _parse_operand(cur))

    if tok.is_sym("~"):
        cur.take_sym("~")
        span = cur.peek().span if cur.peek() else tok.span
        distance = cur.take_int("distance")
        if distance < 1:
            raise ParseError("distance >= 1", str(distance), span)
        cur.take_sym("=")
        return Adjacency(lhs, _parse_operand(cur), distance)

    if tok.is_sym("+"):
        cur.take_sym("+")
        span = cur.peek().span if cur.peek() else tok.span
        offset = cur.take_int("offset 1")
        if offset != 1:
            raise ParseError("offset 1", str(offset), span)
        cur.take_sym("=")
        return LeftOf(lhs, _parse_operand(cur))

    if tok.is_sym("-"):
        cur.take_sym("-")
        span = cur.peek().span if cur.peek() else tok.span
        offset = cur.take_int("offset 1")
        if offset != 1:
            raise ParseError("offset 1", str(offset), span)
        cur.take_sym("=")
        return RightOf(lhs, _parse_operand(cur))

    raise cur._fail("constraint operator")


def skip_to_semicolon(tokens: list[SourceToken], cursor: int) -> int:
    """Advance past the next ';' (or to the end), for error resynchronization."""
    while cursor < len(tokens):
        if tokens[cursor].is_sym(";"):
            return cursor + 1
        cursor += 1
    return cursor


def parse_script(text: str) -> list[Command]:
    """Tokenize and parse a whole script; raises on the first error."""
    tokens = tokenize(text)
    commands = []
    cursor = 0
    while cursor < len(tokens):
        command, cursor = parse_command(tokens, cursor)
        commands.append(command)
    return commands
