"""Assembly of equal-length primary/auxiliary token streams.

Timeline layout: [aux prompt][primary input][primary response + eos][pad].
The primary stream carries wait tokens under the aux-prompt phase and after
its eos; the auxiliary stream is wait-filled except where blocks land.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..tagged import TaggedExample
from .schedule import AuxBlock, DEFAULT_POLICIES, ScheduleResult, schedule
from .tags import resolve_tags


class LengthOverflow(ValueError):
    pass


@dataclass
class PlacedBlock:
    start: int
    content_len: int
    forced_len: int

    @property
    def end(self) -> int:
        return self.start + self.content_len + self.forced_len

    @property
    def forced_range(self) -> tuple[int, int]:
        return (self.start + self.content_len, self.end)


@dataclass
class AlignedExample:
    primary_ids: list[int]
    aux_ids: list[int]
    aux_prompt_end: int
    primary_input_end: int
    primary_response_end: int  # first position after the response's eos
    blocks: list[PlacedBlock]
    wait_id: int
    eos_id: int
    dropout_ranges: list[tuple[int, int]] = field(default_factory=list)
    mirrored_ranges: list[tuple[int, int]] = field(default_factory=list)
    m_p: list[float] | None = None
    m_a: list[float] | None = None

    @property
    def length(self) -> int:
        return len(self.primary_ids)

    def to_dict(self) -> dict:
        record = {
            "primary_ids": list(self.primary_ids),
            "aux_ids": list(self.aux_ids),
            "phase_boundaries": {
                "aux_prompt_end": self.aux_prompt_end,
                "primary_input_end": self.primary_input_end,
                "primary_response_end": self.primary_response_end,
            },
            "blocks": [
                {"start": b.start, "content_len": b.content_len, "forced_len": b.forced_len}
                for b in self.blocks
            ],
        }
        for name in ("m_p", "m_a"):
            mask = getattr(self, name)
            record[name] = (
                None if mask is None else [[i, w] for i, w in enumerate(mask) if w != 1.0]
            )
        return record


def assemble(
    tagged: TaggedExample,
    tokenizer,
    strategy: str = "random",
    policies: dict | None = None,
    rng: random.Random | None = None,
    max_length: int = 2048,
) -> AlignedExample:
    """Resolve tags, schedule blocks, and emit the two aligned id streams.

    Raises SampleDropped when scheduling discards the example and
    LengthOverflow when the result would exceed max_length.
    """
    policies = dict(DEFAULT_POLICIES, **(policies or {}))
    aux_prompt_ids = tokenizer.encode(tagged.aux_prompt)
    base = len(aux_prompt_ids)

    clean_input, input_tags = resolve_tags(tagged.input_text, tokenizer)
    clean_response, response_tags = resolve_tags(tagged.response_text, tokenizer)
    input_ids = tokenizer.encode(clean_input)
    response_ids = tokenizer.encode(clean_response)

    tag_pos: dict[str, int] = {}
    for name, idx in input_tags.items():
        tag_pos[name] = base + idx
    for name, idx in response_tags.items():
        if name in tag_pos:
            raise ValueError(f"tag {name!r} appears in both input and response")
        tag_pos[name] = base + len(input_ids) + idx

    blocks = []
    for spec in tagged.aux_blocks:
        for tag in (spec.after_tag, spec.before_tag):
            if tag not in tag_pos:
                raise ValueError(f"block references unknown tag {tag!r}")
        blocks.append(
            AuxBlock(
                content_ids=tuple(tokenizer.encode(spec.content)),
                forced_ids=tuple(tokenizer.encode(spec.forced)),
                after_pos=tag_pos[spec.after_tag],
                before_pos=tag_pos[spec.before_tag],
            )
        )

    result: ScheduleResult = schedule(blocks, strategy, policies, rng, start_cursor=base)

    wait, eos = tokenizer.wait_id, tokenizer.eos_id
    primary = [wait] * base + list(input_ids) + list(response_ids)
    for position, count in result.primary_insertions:
        primary[position:position] = [wait] * count
    primary.append(eos)
    response_end = len(primary)

    aux_extent = max((p.start + len(p.block.content_ids) + len(p.block.forced_ids) for p in result.placements), default=0)
    total = max(len(primary), aux_extent, base)
    if total > max_length:
        raise LengthOverflow(f"aligned length {total} exceeds max_length {max_length}")

    primary.extend([wait] * (total - len(primary)))
    aux = [wait] * total
    aux[0:base] = aux_prompt_ids

    placed: list[PlacedBlock] = []
    for placement in result.placements:
        block = placement.block
        start = placement.start
        aux[start : start + len(block.content_ids)] = block.content_ids
        forced_at = start + len(block.content_ids)
        aux[forced_at : forced_at + len(block.forced_ids)] = block.forced_ids
        placed.append(PlacedBlock(start, len(block.content_ids), len(block.forced_ids)))

    return AlignedExample(
        primary_ids=primary,
        aux_ids=aux,
        aux_prompt_end=base,
        primary_input_end=base + len(input_ids),
        primary_response_end=response_end,
        blocks=placed,
        wait_id=wait,
        eos_id=eos,
    )


def apply_aux_dropout(example: AlignedExample, p: float, rng: random.Random) -> AlignedExample:
    """Drop each content block i.i.d. with probability p.

    Dropped block ranges (content plus forced output) are wait-filled and
    recorded for mask category 4. The primary stream is untouched.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("dropout probability must be in [0, 1]")
    aux = list(example.aux_ids)
    kept: list[PlacedBlock] = []
    dropped: list[tuple[int, int]] = list(example.dropout_ranges)
    for block in example.blocks:
        if rng.random() < p:
            aux[block.start : block.end] = [example.wait_id] * (block.end - block.start)
            dropped.append((block.start, block.end))
        else:
            kept.append(block)
    return AlignedExample(
        primary_ids=list(example.primary_ids),
        aux_ids=aux,
        aux_prompt_end=example.aux_prompt_end,
        primary_input_end=example.primary_input_end,
        primary_response_end=example.primary_response_end,
        blocks=kept,
        wait_id=example.wait_id,
        eos_id=example.eos_id,
        dropout_ranges=dropped,
        mirrored_ranges=list(example.mirrored_ranges),
    )
