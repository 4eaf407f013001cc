"""Semantic analysis: resolve names against declarations and validate commands.

Names are case-folded here, so `Alice.House=2;` and `alice.house=2;` are one
command. Ordering operators require ordinal attributes: integer ranges, or
discrete domains whose values all parse as integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import (
    ORDINAL_ONLY_TYPES,
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
    DomainSpec,
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
    _is_int,
    is_query,
)


class AnalysisError(ValueError):
    pass


class UndeclaredEntity(AnalysisError):
    pass


class UndeclaredAttribute(AnalysisError):
    pass


class ValueNotInDomain(AnalysisError):
    pass


class OrdinalRequired(AnalysisError):
    pass


class DuplicateDeclaration(AnalysisError):
    pass


class RetractIndexOutOfRange(AnalysisError):
    pass


def fold(name: str) -> str:
    return name.casefold()


@dataclass
class DeclarationContext:
    """Declared entities, attribute domains, and uniqueness relaxations.

    next_index mirrors the session's acknowledgment counter so retraction
    targets can be validated before execution.
    """

    entities: list[str] = field(default_factory=list)
    domains: dict[str, DomainSpec] = field(default_factory=dict)
    nonunique: set[str] = field(default_factory=set)
    next_index: int = 1

    def copy(self) -> "DeclarationContext":
        return DeclarationContext(
            list(self.entities), dict(self.domains), set(self.nonunique), self.next_index
        )

    def apply(self, validated: "ValidatedCommand") -> None:
        """Fold a validated command's declarations into the context and bump the counter."""
        command = validated.command
        if isinstance(command, DeclareEntities):
            self.entities.extend(fold(n) for n in command.names)
        elif isinstance(command, DeclareDomain):
            self.domains[fold(command.attribute)] = _fold_domain(command.domain)
        elif isinstance(command, DeclareNonUnique):
            self.nonunique.add(fold(command.attribute))
        if isinstance(command, Clear):
            self.entities.clear()
            self.domains.clear()
            self.nonunique.clear()
            self.next_index = 1
        elif not is_query(command):
            self.next_index += 1


def _fold_domain(domain: DomainSpec) -> DomainSpec:
    if isinstance(domain, Discrete):
        return Discrete(tuple(fold(v) for v in domain.values))
    return domain


@dataclass(frozen=True)
class ValidatedCommand:
    """A command with names folded and value encodings resolved.

    value_code / value_codes carry the integer encodings used by the SMT
    translation: the numeric value for ordinal domains, the index into the
    declared value list for nominal ones.
    """

    command: Command
    value_code: int | None = None
    value_codes: tuple[int, ...] | None = None
    lhs_ref_code: int | None = None
    rhs_ref_code: int | None = None


def encode_value(domain: DomainSpec, value: str) -> int:
    """Encode a value literal as the integer the solver sees."""
    v = fold(value)
    if isinstance(domain, IntRange):
        if not _is_int(v):
            raise ValueNotInDomain(f"{value!r} is not an integer")
        iv = int(v)
        if not (domain.lo <= iv <= domain.hi):
            raise ValueNotInDomain(f"{value!r} outside [{domain.lo}, {domain.hi}]")
        return iv
    if domain.ordinal:
        if not _is_int(v):
            raise ValueNotInDomain(f"{value!r} not in ordinal domain {domain.values}")
        iv = int(v)
        if iv not in tuple(int(x) for x in domain.values):
            raise ValueNotInDomain(f"{value!r} not in domain {domain.values}")
        return iv
    if v not in domain.values:
        raise ValueNotInDomain(f"{value!r} not in domain {domain.values}")
    return domain.values.index(v)


def decode_value(domain: DomainSpec, code: int) -> str:
    """Inverse of encode_value."""
    if isinstance(domain, IntRange):
        return str(code)
    if domain.ordinal:
        return str(code)
    return domain.values[code]


def analyze(command: Command, state: DeclarationContext) -> ValidatedCommand:
    """Validate one parsed command against the declaration context.

    Pure: the caller applies declarations via state.apply(). Raises a
    subclass of AnalysisError on the first problem found.
    """
    if isinstance(command, DeclareEntities):
        names = tuple(fold(n) for n in command.names)
        if state.entities:
            raise DuplicateDeclaration("entities already declared")
        if len(set(names)) != len(names):
            raise DuplicateDeclaration(f"duplicate entity in {names}")
        return ValidatedCommand(DeclareEntities(names))

    if isinstance(command, DeclareDomain):
        attr = fold(command.attribute)
        if attr in state.domains:
            raise DuplicateDeclaration(f"attribute {attr!r} already declared")
        domain = _fold_domain(command.domain)
        if isinstance(domain, Discrete) and len(set(domain.values)) != len(domain.values):
            raise DuplicateDeclaration(f"duplicate value in domain {domain.values}")
        return ValidatedCommand(DeclareDomain(attr, domain))

    if isinstance(command, DeclareNonUnique):
        attr = fold(command.attribute)
        if attr not in state.domains:
            raise UndeclaredAttribute(f"unknown attribute {attr!r}")
        if attr in state.nonunique:
            raise DuplicateDeclaration(f"attribute {attr!r} already nonunique")
        return ValidatedCommand(DeclareNonUnique(attr))

    if isinstance(command, Retract):
        if not (1 <= command.index < state.next_index):
            raise RetractIndexOutOfRange(
                f"command {command.index} does not exist (valid: 1..{state.next_index - 1})"
            )
        return ValidatedCommand(command)

    if isinstance(command, (Clear, QuerySat, QueryJson)):
        return ValidatedCommand(command)

    if isinstance(command, QueryEntity):
        entity = fold(command.entity)
        _require_entity(state, entity)
        return ValidatedCommand(QueryEntity(entity))

    if isinstance(command, QueryAttr):
        entity, attr = fold(command.entity), fold(command.attribute)
        _require_entity(state, entity)
        _require_attribute(state, attr)
        return ValidatedCommand(QueryAttr(entity, attr))

    if isinstance(command, EntityBind):
        attr, entity = fold(command.attribute), fold(command.entity)
        _require_attribute(state, attr)
        _require_entity(state, entity)
        value = fold(command.value)
        code = encode_value(state.domains[attr], value)
        return ValidatedCommand(EntityBind(attr, value, entity), value_code=code)

    if isinstance(command, Assign) or isinstance(command, Exclude):
        lhs, lhs_ref = _fold_operand(state, command.lhs)
        domain = state.domains[lhs.attribute]
        value = fold(command.value)
        code = encode_value(domain, value)
        rebuilt = type(command)(lhs, value)
        return ValidatedCommand(rebuilt, value_code=code, lhs_ref_code=lhs_ref)

    if isinstance(command, Disjunction):
        lhs, lhs_ref = _fold_operand(state, command.lhs)
        domain = state.domains[lhs.attribute]
        values = tuple(fold(v) for v in command.values)
        codes = tuple(encode_value(domain, v) for v in values)
        return ValidatedCommand(Disjunction(lhs, values), value_codes=codes, lhs_ref_code=lhs_ref)

    if isinstance(command, (SameValue, DiffValue, Less, Greater, Adjacency, LeftOf, RightOf)):
        lhs, lhs_ref = _fold_operand(state, command.lhs)
        rhs, rhs_ref = _fold_operand(state, command.rhs)
        if isinstance(command, ORDINAL_ONLY_TYPES):
            for op in (lhs, rhs):
                if not state.domains[op.attribute].ordinal:
                    raise OrdinalRequired(
                        f"attribute {op.attribute!r} is nominal; ordering needs an ordinal domain"
                    )
        if isinstance(command, Adjacency):
            rebuilt: Command = Adjacency(lhs, rhs, command.distance)
        else:
            rebuilt = type(command)(lhs, rhs)
        return ValidatedCommand(rebuilt, lhs_ref_code=lhs_ref, rhs_ref_code=rhs_ref)

    raise TypeError(f"unknown command: {command!r}")


def _require_entity(state: DeclarationContext, entity: str) -> None:
    if entity not in state.entities:
        raise UndeclaredEntity(f"unknown entity {entity!r}")


def _require_attribute(state: DeclarationContext, attr: str) -> None:
    if attr not in state.domains:
        raise UndeclaredAttribute(f"unknown attribute {attr!r}")


def _fold_operand(state: DeclarationContext, op: Operand) -> tuple[Operand, int | None]:
    """Fold names, check declarations, and encode an indirect reference value."""
    if isinstance(op, Direct):
        entity, attr = fold(op.entity), fold(op.attribute)
        _require_entity(state, entity)
        _require_attribute(state, attr)
        return Direct(entity, attr), None
    ref_attr, attr = fold(op.ref_attribute), fold(op.attribute)
    _require_attribute(state, ref_attr)
    _require_attribute(state, attr)
    ref_value = fold(op.ref_value)
    ref_code = encode_value(state.domains[ref_attr], ref_value)
    return Indirect(ref_attr, ref_value, attr), ref_code
