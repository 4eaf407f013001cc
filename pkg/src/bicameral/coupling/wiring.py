"""Validation of the four coupling layer indices.

Activations flow upward, so the per-step schedule must not need a value
that was already passed. The primary's read/write relation fixes the
regime: read <= write is standard order (primary read first, clean);
write < read is reversed order (auxiliary read first). In reversed order
the forward write lands on the auxiliary after its read; a write strictly
below the auxiliary's read layer would never be consumed by the rest of
the pass and is the one forbidden combination. Read = write ties are fine
on either model: the first-read model is read clean then written at the
same layer, the other receives its write before being read.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class OrderRegime(Enum):
    STANDARD = "standard"
    REVERSED = "reversed"


class InvalidWiring(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class CouplingLayers:
    """Residual-stream indices: reads and writes for both directions."""

    read_p: int  # primary layer read for forward coupling
    write_a: int  # auxiliary layer written by forward coupling
    read_a: int  # auxiliary layer read for reverse coupling
    write_p: int  # primary layer written by reverse coupling


def validate_wiring(layers: CouplingLayers, n_layers_primary: int, n_layers_auxiliary: int) -> OrderRegime:
    """Classify the schedule or reject it."""
    for name, value, limit in (
        ("read_p", layers.read_p, n_layers_primary),
        ("write_p", layers.write_p, n_layers_primary),
        ("read_a", layers.read_a, n_layers_auxiliary),
        ("write_a", layers.write_a, n_layers_auxiliary),
    ):
        if not 0 <= value <= limit:
            raise IndexOutOfRange(f"{name}={value} outside [0, {limit}]")
    if layers.read_p <= layers.write_p:
        return OrderRegime.STANDARD
    if layers.write_a < layers.read_a:
        raise InvalidWiring(
            "reversed order writes the auxiliary below its already-read layer; "
            "the forward signal would be silently lost"
        )
    return OrderRegime.REVERSED
