"""Placement of auxiliary content blocks along the shared timeline.

The scheduler walks blocks in causal order with a cursor (nothing can be
placed before already-emitted auxiliary content). Each block's valid window
is [max(after_pos, cursor), before_pos - content_len]; the strategy picks a
position inside it.

When the window is empty the block is in violation. An inverted tag pair
(before_pos < after_pos) is an after-violation: finishing by the deadline
would require starting before the causal anchor, and stretching the primary
cannot fix it. Every other empty window is a before-violation (the content
simply does not fit by the deadline), fixable by the primary_wait policy,
which inserts wait tokens into the primary stream at the deadline boundary
and shifts every later position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

STRATEGIES = ("eager", "lazy", "random", "balanced")
POLICIES = ("allow", "drop_ar_output", "drop_sample", "primary_wait")

# before-violations stretch the primary; after-violations discard the sample
DEFAULT_POLICIES = {"before": "primary_wait", "after": "drop_sample"}


class SampleDropped(Exception):
    """The drop_sample policy fired; the whole example must be discarded."""


@dataclass(frozen=True)
class AuxBlock:
    content_ids: tuple[int, ...]
    forced_ids: tuple[int, ...]
    after_pos: int
    before_pos: int


@dataclass(frozen=True)
class Placement:
    block: AuxBlock
    start: int  # first content token position


@dataclass
class ScheduleResult:
    placements: list[Placement]
    primary_insertions: list[tuple[int, int]]  # (position, count), applied in order
    dropped_blocks: list[AuxBlock]
    violations: list[dict]

    @property
    def end_cursor(self) -> int:
        if not self.placements:
            return 0
        last = self.placements[-1]
        return last.start + len(last.block.content_ids) + len(last.block.forced_ids)


def _choose(strategy: str, floor: int, ceil: int, rng: random.Random | None) -> int:
    if strategy == "eager":
        return floor
    if strategy == "lazy":
        return ceil
    if strategy in ("random", "balanced"):  # balanced is an alias of random
        if rng is None:
            raise ValueError("random placement needs an rng")
        return rng.randint(floor, ceil)
    raise ValueError(f"unknown strategy {strategy!r}")


def schedule(
    blocks: list[AuxBlock],
    strategy: str = "random",
    policies: dict | None = None,
    rng: random.Random | None = None,
    start_cursor: int = 0,
) -> ScheduleResult:
    """Place blocks in order; raises SampleDropped when that policy fires."""
    policies = dict(DEFAULT_POLICIES, **(policies or {}))
    cursor = start_cursor
    pending = [[b, b.after_pos, b.before_pos] for b in blocks]
    placements: list[Placement] = []
    insertions: list[tuple[int, int]] = []
    dropped: list[AuxBlock] = []
    violations: list[dict] = []

    for idx, entry in enumerate(pending):
        block, after_pos, before_pos = entry
        content_len = len(block.content_ids)
        floor = max(after_pos, cursor)
        ceil = before_pos - content_len

        if floor <= ceil:
            start = _choose(strategy, floor, ceil, rng)
        else:
            kind = "after" if before_pos < after_pos else "before"
            policy = policies[kind]
            violations.append({"index": idx, "kind": kind, "policy": policy})
            if policy == "drop_sample":
                raise SampleDropped(f"{kind}-violation on block {idx}")
            if policy == "drop_ar_output":
                dropped.append(block)
                continue
            start = floor
            if policy == "primary_wait":
                required_end = start + content_len
                count = required_end - before_pos
                insertions.append((before_pos, count))
                boundary = before_pos
                entry[2] = before_pos + count
                for later in pending[idx + 1 :]:
                    if later[1] >= boundary:
                        later[1] += count
                    if later[2] >= boundary:
                        later[2] += count
            # "allow" keeps the floor placement despite the overrun

        placed = AuxBlock(block.content_ids, block.forced_ids, entry[1], entry[2])
        placements.append(Placement(placed, start))
        cursor = start + content_len + len(block.forced_ids)

    return ScheduleResult(placements, insertions, dropped, violations)
