"""Translate validated commands into a deterministic SMT-LIB2 script.

Encoding:
  * one Int constant per (entity, attribute), named |entity.attribute|
  * nominal discrete domains use value indices 0..n-1; ordinal discrete
    domains and int ranges use the numeric values themselves
  * per-attribute pairwise distinctness unless declared nonunique
  * indirect operands expand to guarded implications over entities, plus an
    existence assertion for the referenced value (and at-most-one when the
    reference attribute is nonunique)
"""

from __future__ import annotations

from ..dsl.analyzer import DeclarationContext, ValidatedCommand, encode_value
from ..dsl.ast import (
    Adjacency,
    Assign,
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
    RightOf,
    SameValue,
)


class EmptyModel(ValueError):
    """Raised when compiling a session with no entities or no domains."""


def var_symbol(entity: str, attribute: str) -> str:
    return f"|{entity}.{attribute}|"


def _lit(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def _domain_lines(ctx: DeclarationContext) -> list[str]:
    lines = []
    for attr, domain in ctx.domains.items():
        for entity in ctx.entities:
            lines.append(f"(declare-const {var_symbol(entity, attr)} Int)")
    for attr, domain in ctx.domains.items():
        if isinstance(domain, IntRange):
            lo, hi = domain.lo, domain.hi
            values = None
        elif domain.ordinal:
            codes = sorted(int(v) for v in domain.values)
            lo, hi = codes[0], codes[-1]
            values = codes if codes != list(range(lo, hi + 1)) else None
        else:
            lo, hi = 0, len(domain.values) - 1
            values = None
        for entity in ctx.entities:
            sym = var_symbol(entity, attr)
            lines.append(f"(assert (and (>= {sym} {_lit(lo)}) (<= {sym} {_lit(hi)})))")
            if values is not None:
                alts = " ".join(f"(= {sym} {_lit(v)})" for v in values)
                lines.append(f"(assert (or {alts}))")
    for attr in ctx.domains:
        if attr in ctx.nonunique or len(ctx.entities) < 2:
            continue
        syms = " ".join(var_symbol(e, attr) for e in ctx.entities)
        lines.append(f"(assert (distinct {syms}))")
    return lines


def _body(command, left: str, right: str | None) -> str:
    if isinstance(command, Assign):
        return f"(= {left} {right})"
    if isinstance(command, Exclude):
        return f"(not (= {left} {right}))"
    if isinstance(command, SameValue):
        return f"(= {left} {right})"
    if isinstance(command, DiffValue):
        return f"(not (= {left} {right}))"
    if isinstance(command, Less):
        return f"(< {left} {right})"
    if isinstance(command, Greater):
        return f"(> {left} {right})"
    if isinstance(command, Disjunction):
        return "(or " + " ".join(f"(= {left} {v})" for v in right) + ")"
    if isinstance(command, Adjacency):
        n = command.distance
        return f"(or (= (- {left} {right}) {n}) (= (- {right} {left}) {n}))"
    if isinstance(command, LeftOf):
        return f"(= {right} (+ {left} 1))"
    if isinstance(command, RightOf):
        return f"(= {right} (- {left} 1))"
    raise TypeError(f"not a constraint: {command!r}")


def constraint_lines(ctx: DeclarationContext, vcmd: ValidatedCommand) -> list[str]:
    """Assertions for one validated constraint command."""
    command = vcmd.command
    lines: list[str] = []

    if isinstance(command, EntityBind):
        sym = var_symbol(command.entity, command.attribute)
        return [f"(assert (= {sym} {_lit(vcmd.value_code)}))"]

    if isinstance(command, (Assign, Exclude)):
        rhs: str | tuple = _lit(vcmd.value_code)
    elif isinstance(command, Disjunction):
        rhs = tuple(_lit(c) for c in vcmd.value_codes)
    else:
        rhs = None

    lhs_op: Operand = command.lhs
    rhs_op: Operand | None = getattr(command, "rhs", None)

    def emit(guards: list[str], left: str, right) -> None:
        body = _body(command, left, right)
        if guards:
            guard = guards[0] if len(guards) == 1 else "(and " + " ".join(guards) + ")"
            lines.append(f"(assert (=> {guard} {body}))")
        else:
            lines.append(f"(assert {body})")

    if isinstance(lhs_op, Direct) and (rhs_op is None or isinstance(rhs_op, Direct)):
        left = var_symbol(lhs_op.entity, lhs_op.attribute)
        right = rhs if rhs_op is None else var_symbol(rhs_op.entity, rhs_op.attribute)
        emit([], left, right)
    elif isinstance(lhs_op, Indirect) and (rhs_op is None or isinstance(rhs_op, Direct)):
        for entity in ctx.entities:
            guard = f"(= {var_symbol(entity, lhs_op.ref_attribute)} {_lit(vcmd.lhs_ref_code)})"
            left = var_symbol(entity, lhs_op.attribute)
            right = rhs if rhs_op is None else var_symbol(rhs_op.entity, rhs_op.attribute)
            emit([guard], left, right)
        lines.extend(_reference_lines(ctx, lhs_op.ref_attribute, vcmd.lhs_ref_code))
    elif isinstance(lhs_op, Direct) and isinstance(rhs_op, Indirect):
        for entity in ctx.entities:
            guard = f"(= {var_symbol(entity, rhs_op.ref_attribute)} {_lit(vcmd.rhs_ref_code)})"
            emit([guard], var_symbol(lhs_op.entity, lhs_op.attribute), var_symbol(entity, rhs_op.attribute))
        lines.extend(_reference_lines(ctx, rhs_op.ref_attribute, vcmd.rhs_ref_code))
    else:  # both indirect
        for e1 in ctx.entities:
            for e2 in ctx.entities:
                guards = [
                    f"(= {var_symbol(e1, lhs_op.ref_attribute)} {_lit(vcmd.lhs_ref_code)})",
                    f"(= {var_symbol(e2, rhs_op.ref_attribute)} {_lit(vcmd.rhs_ref_code)})",
                ]
                emit(guards, var_symbol(e1, lhs_op.attribute), var_symbol(e2, rhs_op.attribute))
        lines.extend(_reference_lines(ctx, lhs_op.ref_attribute, vcmd.lhs_ref_code))
        lines.extend(_reference_lines(ctx, rhs_op.ref_attribute, vcmd.rhs_ref_code))
    return lines


def _reference_lines(ctx: DeclarationContext, ref_attr: str, code: int) -> list[str]:
    """Existence (and, for nonunique attributes, at-most-one) of the referenced holder."""
    eqs = [f"(= {var_symbol(e, ref_attr)} {_lit(code)})" for e in ctx.entities]
    lines = [f"(assert (or {' '.join(eqs)}))"] if len(eqs) > 1 else [f"(assert {eqs[0]})"]
    if ref_attr in ctx.nonunique:
        for i in range(len(eqs)):
            for j in range(i + 1, len(eqs)):
                lines.append(f"(assert (not (and {eqs[i]} {eqs[j]})))")
    return lines


def compile_to_smt(ctx: DeclarationContext, constraints: list[ValidatedCommand]) -> list[str]:
    """Emit the full script: declarations, domains, distinctness, constraints.

    Deduplicates repeated reference-existence assertions. Raises EmptyModel
    when nothing has been declared yet.
    """
    if not ctx.entities or not ctx.domains:
        raise EmptyModel("need at least one entity and one domain")
    lines = ["(set-logic QF_LIA)"]
    lines.extend(_domain_lines(ctx))
    seen: set[str] = set()
    for vcmd in constraints:
        for line in constraint_lines(ctx, vcmd):
            if line not in seen:
                seen.add(line)
                lines.append(line)
    return lines


def assignment_equalities(ctx: DeclarationContext, model: dict[str, int]) -> list[str]:
    """(= var value) terms for a full model, in declaration order."""
    eqs = []
    for attr in ctx.domains:
        for entity in ctx.entities:
            name = f"{entity}.{attr}"
            eqs.append(f"(= {var_symbol(entity, attr)} {_lit(model[name])})")
    return eqs


def blocking_clause(ctx: DeclarationContext, model: dict[str, int]) -> str:
    """Negation of a full assignment, used for uniqueness checks."""
    eqs = assignment_equalities(ctx, model)
    return "(assert (not (and " + " ".join(eqs) + ")))"


def decode_model(ctx: DeclarationContext, model: dict[str, int]) -> dict[str, dict[str, str]]:
    """Model (var name -> int) to entity -> attribute -> value text."""
    from ..dsl.analyzer import decode_value

    table: dict[str, dict[str, str]] = {}
    for entity in ctx.entities:
        row = {}
        for attr, domain in ctx.domains.items():
            row[attr] = decode_value(domain, model[f"{entity}.{attr}"])
        table[entity] = row
    return table
