"""Generator configuration and the default category pool."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

QUERY_KINDS = ("single", "multiple", "json_table")

# Attribute match/mismatch (7, 8) are degenerate under per-attribute
# uniqueness, so they carry zero weight unless explicitly enabled.
DISABLED_BY_DEFAULT = (7, 8)


def default_weights() -> dict[int, float]:
    return {t: (0.0 if t in DISABLED_BY_DEFAULT else 1.0) for t in range(1, 31)}


def load_categories(path: str | None = None) -> dict:
    """Load the category pool: ordinal attribute names + value categories."""
    if path is None:
        text = resources.files("bicameral.data").joinpath("categories.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    pool = json.loads(text)
    if len(pool["categories"]) < 2:
        raise ValueError("category pool needs at least two categories")
    return pool


@dataclass
class GenConfig:
    entity_range: tuple[int, int] = (2, 6)
    attribute_range: tuple[int, int] = (2, 6)
    ordinal_ratio: float = 0.5
    clue_weights: dict[int, float] = field(default_factory=default_weights)
    query_mix: dict[str, float] = field(default_factory=lambda: {"single": 0.40, "multiple": 0.30, "json_table": 0.30})
    style: str = "named"  # named | zl-ordinal
    max_clue_attempts: int = 200
    categories_path: str | None = None

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.clue_weights.values()):
            raise ValueError("clue weights must be nonnegative")
        enabled = [t for t, w in self.clue_weights.items() if w > 0]
        if not any(t not in (6, 10) + DISABLED_BY_DEFAULT for t in enabled):
            raise ValueError("need a positive weight on at least one plain constraint type")
        total = sum(self.query_mix.get(k, 0.0) for k in QUERY_KINDS)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"query mix must sum to 1, got {total}")
        if self.style not in ("named", "zl-ordinal"):
            raise ValueError(f"unknown style {self.style!r}")

    def pool(self) -> dict:
        return load_categories(self.categories_path)
