"""Resolve @@NAME@@ causality tags to token indices.

A tag's index is the token count of the tag-stripped prefix before it, so a
tag glued to a word marks that word's own position.
"""

from __future__ import annotations

import re

TAG_RE = re.compile(r"@@([A-Z][A-Z0-9_]*)@@")


class MalformedTag(ValueError):
    pass


class DuplicateTag(ValueError):
    pass


def resolve_tags(tagged_text: str, tokenizer) -> tuple[str, dict[str, int]]:
    """Strip tags and map each tag name to a token index in the clean text."""
    matches = list(TAG_RE.finditer(tagged_text))
    names = [m.group(1) for m in matches]
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateTag(f"tags repeated: {', '.join(dupes)}")

    clean = TAG_RE.sub("", tagged_text)
    if "@@" in clean:
        offset = clean.index("@@")
        raise MalformedTag(f"stray '@@' near offset {offset}")

    positions: dict[str, int] = {}
    removed = 0
    for match in matches:
        clean_pos = match.start() - removed
        removed += match.end() - match.start()
        positions[match.group(1)] = len(tokenizer.encode(clean[:clean_pos]))
    return clean, positions
