"""Puzzle assembly: add clues until the solution is unique, then minimize.

Uniqueness is checked with the solver (model extraction plus a blocking
clause). Minimization greedily deletes clues in order, restarting from the
first clue after every successful removal, so the result is locally
minimal: dropping any single remaining clue breaks uniqueness.
"""

from __future__ import annotations

import random

from ..dsl.analyzer import DeclarationContext, ValidatedCommand, analyze
from ..dsl.ast import DeclareDomain, DeclareEntities, Discrete
from ..smt.compile import blocking_clause, compile_to_smt
from ..smt.transport import SmtTransport
from .clues import Clue, clue_holds, sample_clue
from .config import GenConfig, QUERY_KINDS
from .grid import PuzzleSpec, sample_solution


class GenerationBudgetExceeded(RuntimeError):
    pass


def declaration_context(spec: PuzzleSpec) -> DeclarationContext:
    """Analyzer context for a puzzle's entities and attribute domains."""
    ctx = DeclarationContext()
    ctx.apply(analyze(DeclareEntities(spec.entities), ctx))
    for attr in spec.attributes:
        ctx.apply(analyze(DeclareDomain(attr.name, Discrete(attr.values)), ctx))
    return ctx


def validate_clues(ctx: DeclarationContext, clues: list[Clue]) -> list[ValidatedCommand]:
    out = []
    for clue in clues:
        for command in clue.commands:
            out.append(analyze(command, ctx))
    return out


def check_unique(
    transport: SmtTransport,
    ctx: DeclarationContext,
    constraints: list[ValidatedCommand],
    known_model: dict | None = None,
) -> tuple[str, dict | None]:
    """Solve and block: returns ("unique"|"multiple"|"unsat", first model).

    When the caller already holds a model (the hidden grid satisfies every
    sampled clue by construction), the initial solve is skipped and only the
    blocking-clause check runs.
    """
    script = compile_to_smt(ctx, constraints)
    if known_model is None:
        status, model = transport.solve(script, need_model=True)
        if status != "sat":
            return "unsat", None
    else:
        model = known_model
    status2, _ = transport.solve(script + [blocking_clause(ctx, model)])
    return ("unique" if status2 == "unsat" else "multiple"), model


def grid_model(spec: PuzzleSpec, ctx: DeclarationContext) -> dict[str, int]:
    """The hidden grid as solver-level variable codes."""
    from ..dsl.analyzer import encode_value

    model = {}
    for entity in spec.entities:
        for attr in spec.attributes:
            code = encode_value(ctx.domains[attr.name], spec.grid[entity][attr.name])
            model[f"{entity}.{attr.name}"] = code
    return model


def make_query(spec: PuzzleSpec, config: GenConfig, rng: random.Random) -> tuple[dict, object]:
    """Draw the question kind per the configured mix and read off the answer."""
    kinds = list(QUERY_KINDS)
    weights = [config.query_mix[k] for k in kinds]
    kind = rng.choices(kinds, weights=weights, k=1)[0]
    if kind == "single":
        entity = rng.choice(spec.entities)
        attr = rng.choice(spec.attributes).name
        return {"kind": kind, "targets": [entity, attr]}, spec.grid[entity][attr]
    if kind == "multiple":
        entity = rng.choice(spec.entities)
        return {"kind": kind, "targets": [entity]}, dict(spec.grid[entity])
    return {"kind": kind, "targets": []}, {e: dict(row) for e, row in spec.grid.items()}


def generate_puzzle(
    config: GenConfig, rng: random.Random, transport: SmtTransport | None = None
) -> PuzzleSpec:
    """Produce a puzzle whose clue set is solver-verified unique and locally minimal."""
    own_transport = transport is None
    if own_transport:
        transport = SmtTransport()
    try:
        spec = sample_solution(config, rng)
        ctx = declaration_context(spec)
        hidden = grid_model(spec, ctx)

        clues: list[Clue] = []
        seen: set[str] = set()
        attempts = 0
        while True:
            if attempts >= config.max_clue_attempts:
                raise GenerationBudgetExceeded(
                    f"no unique solution after {attempts} clue attempts"
                )
            attempts += 1
            clue = sample_clue(spec, config, rng)
            if clue.dsl in seen:
                continue
            assert clue_holds(clue, spec), f"sampled clue false on grid: {clue.dsl}"
            seen.add(clue.dsl)
            clues.append(clue)
            verdict, _ = check_unique(transport, ctx, validate_clues(ctx, clues), hidden)
            if verdict == "unique":
                break

        # greedy minimization, restarting from the first clue after a removal.
        # Removal failure is monotone (dropping a clue from a smaller set can
        # only admit more models), so clues that failed once are skipped on
        # restarts; the resulting clue set is identical to the naive rescan.
        unremovable: set[str] = set()
        i = 0
        while i < len(clues):
            clue = clues[i]
            if clue.dsl in unremovable:
                i += 1
                continue
            trial = clues[:i] + clues[i + 1 :]
            verdict, _ = check_unique(transport, ctx, validate_clues(ctx, trial), hidden)
            if verdict == "unique":
                clues = trial
                i = 0
            else:
                unremovable.add(clue.dsl)
                i += 1

        spec.clues = clues
        spec.style = config.style
        spec.query, spec.answer = make_query(spec, config, rng)
        return spec
    finally:
        if own_transport:
            transport.close()


def puzzle_to_dict(spec: PuzzleSpec, puzzle_id: str) -> dict:
    return {
        "id": puzzle_id,
        "entities": list(spec.entities),
        "attributes": [
            {"name": a.name, "values": list(a.values), "ordinal": a.ordinal}
            for a in spec.attributes
        ],
        "clues": [{"type_id": c.type_id, "nl": c.nl, "dsl": c.dsl} for c in spec.clues],
        "query": spec.query,
        "solution": {e: dict(row) for e, row in spec.grid.items()},
        "answer": spec.answer,
        "style": spec.style,
    }
