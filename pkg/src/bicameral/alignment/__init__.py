"""Dual-stream alignment: tags to token indices, block scheduling, masks, loss."""

from .assemble import AlignedExample, LengthOverflow, apply_aux_dropout, assemble
from .masks import EmptyMask, build_masks, dual_masked_loss, masked_loss
from .schedule import (
    AuxBlock,
    DEFAULT_POLICIES,
    Placement,
    SampleDropped,
    ScheduleResult,
    schedule,
)
from .tags import DuplicateTag, MalformedTag, resolve_tags
from .tokenizer import CharTokenizer, WhitespaceTokenizer

__all__ = [
    "AlignedExample", "AuxBlock", "CharTokenizer", "DEFAULT_POLICIES",
    "DuplicateTag", "EmptyMask", "LengthOverflow", "MalformedTag", "Placement",
    "SampleDropped", "ScheduleResult", "WhitespaceTokenizer", "apply_aux_dropout",
    "assemble", "build_masks", "dual_masked_loss", "masked_loss", "resolve_tags",
    "schedule",
]
