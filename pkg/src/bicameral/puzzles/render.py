"""Puzzle presentation: primary text, reference DSL transcript, tagged examples."""

from __future__ import annotations

import json

from ..dsl.render import render_command
from ..tagged import AuxBlockSpec, TaggedExample
from .grid import PuzzleSpec

ZEBRA_TOOL_PROMPT = (
    "You operate a constraint solver. Declare entities and domains, assert "
    "the constraints you infer, then query the full solution with ?json;"
)


def _cap(name: str) -> str:
    return name[:1].upper() + name[1:]


def _nl_value(value: str) -> str:
    return value.replace("_", " ")


def transcript_commands(spec: PuzzleSpec) -> list[str]:
    """Declarations, clue constraints in order, and the final ?json; query."""
    lines = [f"@entities:{','.join(spec.entities)};"]
    for attr in spec.attributes:
        lines.append(f"@domain:{attr.name}:{','.join(attr.values)};")
    for clue in spec.clues:
        for command in clue.commands:
            lines.append(render_command(command))
    lines.append("?json;")
    return lines


def _question_text(spec: PuzzleSpec) -> str:
    kind = spec.query.get("kind", "json_table")
    if kind == "single":
        entity, attr = spec.query["targets"]
        return f"Question: what is {_cap(entity)}'s {attr}?"
    if kind == "multiple":
        entity = spec.query["targets"][0]
        return f"Question: give every attribute of {_cap(entity)}."
    return "Question: give the full solution as JSON."


def render_puzzle(spec: PuzzleSpec, style: str | None = None) -> tuple[str, str]:
    """Primary puzzle text in the requested style plus the reference transcript.

    zl-ordinal framing leads with the numbered-positions sentence when the
    puzzle has an ordinal attribute; otherwise it falls back to named style.
    """
    style = style or spec.style
    n = len(spec.entities)
    names = ", ".join(_cap(e) for e in spec.entities)
    lines = []
    ordinals = spec.ordinal_attributes
    if style == "zl-ordinal" and ordinals:
        unit = ordinals[0].name
        lines.append(f"There are {n} {unit}s, numbered 1 to {n}.")
        lines.append(f"Each {unit} is taken by a different one of: {names}.")
    else:
        lines.append(f"A logic puzzle with {n} entities: {names}.")
    for attr in spec.attributes:
        values = ", ".join(_nl_value(v) for v in attr.values)
        lines.append(f"- Each has a unique {attr.name}: {values}.")
    lines.append("Clues:")
    for i, clue in enumerate(spec.clues, start=1):
        lines.append(f"{i}. {clue.nl}")
    lines.append(_question_text(spec))
    return "\n".join(lines), "\n".join(transcript_commands(spec))


def make_tagged_puzzle(spec: PuzzleSpec) -> TaggedExample:
    """Tagged think-block layout: each command windowed by adjacent tags.

    The entity declaration sits between ENT and A1, domain k between Ak and
    its successor, clue k between Ck and its successor, and the ?json query
    between SQ and SR. Solver acknowledgments are the forced outputs.
    """
    input_text, _ = render_puzzle(spec)
    response_lines = []
    blocks = []
    ack = 1

    attr_tags = [f"A{i}" for i in range(1, len(spec.attributes) + 1)]
    clue_tags = [f"C{i}" for i in range(1, len(spec.clues) + 1)]
    first_clue_tag = clue_tags[0] if clue_tags else "SQ"

    names = ", ".join(_cap(e) for e in spec.entities)
    response_lines.append(f"@@ENT@@Entities: {names}")
    blocks.append(
        AuxBlockSpec(
            content=f"@entities:{','.join(spec.entities)};",
            forced=f"=> [{ack}];",
            after_tag="ENT",
            before_tag=attr_tags[0] if attr_tags else first_clue_tag,
        )
    )
    ack += 1

    for i, attr in enumerate(spec.attributes):
        shown = ", ".join(_nl_value(v) for v in attr.values)
        response_lines.append(f"@@{attr_tags[i]}@@- {_cap(attr.name)}: {shown}")
        next_tag = attr_tags[i + 1] if i + 1 < len(attr_tags) else first_clue_tag
        blocks.append(
            AuxBlockSpec(
                content=f"@domain:{attr.name}:{','.join(attr.values)};",
                forced=f"=> [{ack}];",
                after_tag=attr_tags[i],
                before_tag=next_tag,
            )
        )
        ack += 1

    for i, clue in enumerate(spec.clues):
        response_lines.append(f"@@{clue_tags[i]}@@{clue.nl}")
        next_tag = clue_tags[i + 1] if i + 1 < len(clue_tags) else "SQ"
        forced = " ".join(f"=> [{ack + k}];" for k in range(len(clue.commands)))
        blocks.append(
            AuxBlockSpec(
                content=clue.dsl,
                forced=forced,
                after_tag=clue_tags[i],
                before_tag=next_tag,
            )
        )
        ack += len(clue.commands)

    solution_json = json.dumps({e: dict(row) for e, row in spec.grid.items()})
    response_lines.append("@@SQ@@The solver returns the full assignment.")
    response_lines.append(f"@@SR@@{solution_json}")
    blocks.append(
        AuxBlockSpec(
            content="?json;",
            forced=f"=> {solution_json};",
            after_tag="SQ",
            before_tag="SR",
        )
    )

    return TaggedExample(
        input_text=input_text,
        response_text="\n".join(response_lines),
        aux_blocks=tuple(blocks),
        aux_prompt=ZEBRA_TOOL_PROMPT,
        meta={"kind": "zebra", "entities": len(spec.entities), "attributes": len(spec.attributes)},
    )
