"""Typed command forms for the constraint DSL."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Direct:
    """entity.attribute"""

    entity: str
    attribute: str


@dataclass(frozen=True)
class Indirect:
    """@ref_attribute:ref_value.attribute -- one level of indirection only."""

    ref_attribute: str
    ref_value: str
    attribute: str


Operand = Union[Direct, Indirect]


@dataclass(frozen=True)
class Discrete:
    values: tuple[str, ...]

    @property
    def ordinal(self) -> bool:
        """Integer-valued discrete domains admit ordering; named ones do not."""
        return all(_is_int(v) for v in self.values)


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int

    ordinal = True


DomainSpec = Union[Discrete, IntRange]


def _is_int(text: str) -> bool:
    t = text[1:] if text.startswith("-") else text
    return t.isdigit() and t != ""


@dataclass(frozen=True)
class DeclareEntities:
    names: tuple[str, ...]


@dataclass(frozen=True)
class DeclareDomain:
    attribute: str
    domain: DomainSpec


@dataclass(frozen=True)
class DeclareNonUnique:
    attribute: str


@dataclass(frozen=True)
class Assign:
    lhs: Operand
    value: str


@dataclass(frozen=True)
class Exclude:
    lhs: Operand
    value: str


@dataclass(frozen=True)
class SameValue:
    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class DiffValue:
    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class Less:
    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class Greater:
    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class Disjunction:
    lhs: Operand
    values: tuple[str, ...]


@dataclass(frozen=True)
class Adjacency:
    """|lhs - rhs| = distance, distance >= 1."""

    lhs: Operand
    rhs: Operand
    distance: int


@dataclass(frozen=True)
class LeftOf:
    """rhs = lhs + 1"""

    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class RightOf:
    """rhs = lhs - 1"""

    lhs: Operand
    rhs: Operand


@dataclass(frozen=True)
class EntityBind:
    """@attribute:value = entity"""

    attribute: str
    value: str
    entity: str


@dataclass(frozen=True)
class QueryAttr:
    entity: str
    attribute: str


@dataclass(frozen=True)
class QueryEntity:
    entity: str


@dataclass(frozen=True)
class QuerySat:
    pass


@dataclass(frozen=True)
class QueryJson:
    pass


@dataclass(frozen=True)
class Retract:
    index: int


@dataclass(frozen=True)
class Clear:
    pass


Command = Union[
    DeclareEntities, DeclareDomain, DeclareNonUnique,
    Assign, Exclude, SameValue, DiffValue, Less, Greater,
    Disjunction, Adjacency, LeftOf, RightOf, EntityBind,
    QueryAttr, QueryEntity, QuerySat, QueryJson, Retract, Clear,
]

QUERY_TYPES = (QueryAttr, QueryEntity, QuerySat, QueryJson)
CONSTRAINT_TYPES = (
    Assign, Exclude, SameValue, DiffValue, Less, Greater,
    Disjunction, Adjacency, LeftOf, RightOf, EntityBind,
)
ORDINAL_ONLY_TYPES = (Less, Greater, Adjacency, LeftOf, RightOf)


def is_query(command: Command) -> bool:
    return isinstance(command, QUERY_TYPES)
