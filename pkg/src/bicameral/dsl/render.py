"""Canonical text rendering of commands; parse(render(cmd)) == cmd."""

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


def render_operand(op: Operand) -> str:
    if isinstance(op, Direct):
        return f"{op.entity}.{op.attribute}"
    return f"@{op.ref_attribute}:{op.ref_value}.{op.attribute}"


def render_command(command: Command) -> str:
    if isinstance(command, DeclareEntities):
        return f"@entities:{','.join(command.names)};"
    if isinstance(command, DeclareDomain):
        if isinstance(command.domain, IntRange):
            spec = f"int[{command.domain.lo},{command.domain.hi}]"
        else:
            spec = ",".join(command.domain.values)
        return f"@domain:{command.attribute}:{spec};"
    if isinstance(command, DeclareNonUnique):
        return f"@nonunique:{command.attribute};"
    if isinstance(command, Assign):
        return f"{render_operand(command.lhs)}={command.value};"
    if isinstance(command, Exclude):
        return f"{render_operand(command.lhs)}!={command.value};"
    if isinstance(command, SameValue):
        return f"{render_operand(command.lhs)}={render_operand(command.rhs)};"
    if isinstance(command, DiffValue):
        return f"{render_operand(command.lhs)}!={render_operand(command.rhs)};"
    if isinstance(command, Less):
        return f"{render_operand(command.lhs)}<{render_operand(command.rhs)};"
    if isinstance(command, Greater):
        return f"{render_operand(command.lhs)}>{render_operand(command.rhs)};"
    if isinstance(command, Disjunction):
        return f"{render_operand(command.lhs)}={'|'.join(command.values)};"
    if isinstance(command, Adjacency):
        return f"{render_operand(command.lhs)}~{command.distance}={render_operand(command.rhs)};"
    if isinstance(command, LeftOf):
        return f"{render_operand(command.lhs)}+1={render_operand(command.rhs)};"
    if isinstance(command, RightOf):
        return f"{render_operand(command.lhs)}-1={render_operand(command.rhs)};"
    if isinstance(command, EntityBind):
        return f"@{command.attribute}:{command.value}={command.entity};"
    if isinstance(command, QueryAttr):
        return f"?{command.entity}.{command.attribute};"
    if isinstance(command, QueryEntity):
        return f"?{command.entity};"
    if isinstance(command, QuerySat):
        return "?;"
    if isinstance(command, QueryJson):
        return "?json;"
    if isinstance(command, Retract):
        return f"!{command.index};"
    if isinstance(command, Clear):
        return "clear;"
    raise TypeError(f"unknown command: {command!r}")
