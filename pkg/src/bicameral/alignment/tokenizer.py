"""Test tokenizers standing in for real model tokenizers.

WhitespaceTokenizer splits on whitespace with punctuation attached, which
keeps token indices legible in tests; CharTokenizer is the byte-level
fallback with a fixed alphabet (exact round-trips, fixed vocab for toy
models). Both reserve id 0 for the wait (space) token and id 1 for
end-of-sequence.
"""

from __future__ import annotations

import string

WAIT_ID = 0
EOS_ID = 1


class WhitespaceTokenizer:
    """Whitespace-separated tokens over a growing vocabulary."""

    wait_token = " "
    eos_token = "<eos>"

    def __init__(self) -> None:
        self._to_id: dict[str, int] = {self.wait_token: WAIT_ID, self.eos_token: EOS_ID}
        self._to_text: list[str] = [self.wait_token, self.eos_token]

    @property
    def wait_id(self) -> int:
        return WAIT_ID

    @property
    def eos_id(self) -> int:
        return EOS_ID

    @property
    def vocab_size(self) -> int:
        return len(self._to_text)

    def _intern(self, token: str) -> int:
        idx = self._to_id.get(token)
        if idx is None:
            idx = len(self._to_text)
            self._to_id[token] = idx
            self._to_text.append(token)
        return idx

    def encode(self, text: str) -> list[int]:
        return [self._intern(tok) for tok in text.split()]

    def decode(self, ids: list[int]) -> str:
        return " ".join(self._to_text[i] for i in ids)

    def token_text(self, idx: int) -> str:
        return self._to_text[idx]


class CharTokenizer:
    """One token per character over a fixed alphabet; exact round-trips."""

    def __init__(self, alphabet: str | None = None) -> None:
        eos = "\x03"
        alphabet = alphabet if alphabet is not None else (string.printable)
        chars = [" ", eos] + [c for c in dict.fromkeys(alphabet) if c not in (" ", eos)]
        self._to_text = chars
        self._to_id = {c: i for i, c in enumerate(chars)}

    @property
    def wait_id(self) -> int:
        return WAIT_ID

    @property
    def eos_id(self) -> int:
        return EOS_ID

    @property
    def vocab_size(self) -> int:
        return len(self._to_text)

    def encode(self, text: str) -> list[int]:
        try:
            return [self._to_id[c] for c in text]
        except KeyError as exc:
            raise ValueError(f"character {exc.args[0]!r} outside the tokenizer alphabet") from None

    def decode(self, ids: list[int]) -> str:
        return "".join(self._to_text[i] for i in ids)

    def token_text(self, idx: int) -> str:
        return self._to_text[idx]
