"""Text-level training example with causality tags and auxiliary blocks.

Tags are @@NAME@@ markers embedded in the input or response text. Each
auxiliary block names the tag it must start after and the tag it must
finish before; the alignment stage resolves tags to token indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AuxBlockSpec:
    content: str
    forced: str
    after_tag: str
    before_tag: str


@dataclass(frozen=True)
class TaggedExample:
    input_text: str
    response_text: str
    aux_blocks: tuple[AuxBlockSpec, ...]
    aux_prompt: str = ""
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "input": self.input_text,
            "response": self.response_text,
            "aux_prompt": self.aux_prompt,
            "blocks": [
                {
                    "content": b.content,
                    "forced": b.forced,
                    "after_tag": b.after_tag,
                    "before_tag": b.before_tag,
                }
                for b in self.aux_blocks
            ],
            **({"meta": self.meta} if self.meta else {}),
        }

    @classmethod
    def from_dict(cls, record: dict) -> "TaggedExample":
        return cls(
            input_text=record["input"],
            response_text=record["response"],
            aux_blocks=tuple(
                AuxBlockSpec(b["content"], b["forced"], b["after_tag"], b["before_tag"])
                for b in record.get("blocks", [])
            ),
            aux_prompt=record.get("aux_prompt", ""),
            meta=record.get("meta", {}),
        )
