"""Loss masks and the masked-mean loss.

Masks start at 1 and are modified by six categories in order:
  1. primary non-response region (prompt, aux-prompt padding, trailing pad) -> m_p = 0
  2. auxiliary prompt plus one extra token -> m_a = 0
  3. forced tool output -> m_a = 0
  4. dropped-block ranges -> m_a = 0
  5. mirrored prompt tokens -> m_a = 0
  6. surviving non-content auxiliary tokens -> m_a = wait weight (applied last)

Categories 1-5 are binary; category 6 is the only fractional source, and it
never overrides a zero.
"""

from __future__ import annotations

from .assemble import AlignedExample


class EmptyMask(ValueError):
    pass


def build_masks(example: AlignedExample, wait_weight: float = 1.0) -> tuple[list[float], list[float]]:
    """Construct (m_p, m_a); also stored on the example."""
    if not 0.0 <= wait_weight <= 1.0:
        raise ValueError("wait weight must be in [0, 1]")
    total = example.length
    m_p = [1.0] * total
    m_a = [1.0] * total

    # 1: the primary learns only its response (which includes inserted waits
    # and its eos); everything before or after contributes nothing
    for t in range(example.primary_input_end):
        m_p[t] = 0.0
    for t in range(example.primary_response_end, total):
        m_p[t] = 0.0

    # 2: aux prompt plus one extra token (coupling starts at the first
    # generated auxiliary token)
    for t in range(min(example.aux_prompt_end + 1, total)):
        m_a[t] = 0.0

    # 3: forced tool output
    for block in example.blocks:
        start, end = block.forced_range
        for t in range(start, end):
            m_a[t] = 0.0

    # 4: dropped-block ranges
    for start, end in example.dropout_ranges:
        for t in range(start, end):
            m_a[t] = 0.0

    # 5: mirrored prompt tokens
    for start, end in example.mirrored_ranges:
        for t in range(start, end):
            m_a[t] = 0.0

    # 6: downweight surviving non-content tokens
    if wait_weight != 1.0:
        content = [False] * total
        for block in example.blocks:
            for t in range(block.start, block.start + block.content_len):
                content[t] = True
        for t in range(total):
            if m_a[t] == 1.0 and not content[t]:
                m_a[t] = wait_weight

    example.m_p = m_p
    example.m_a = m_a
    return m_p, m_a


def masked_loss(losses: list[float], mask: list[float]) -> float:
    """Masked mean: sum(m * l) / sum(m)."""
    if len(losses) != len(mask):
        raise ValueError(f"length mismatch: {len(losses)} losses vs {len(mask)} mask")
    denom = sum(mask)
    if denom == 0:
        raise EmptyMask("mask has no active positions")
    return sum(m * l for m, l in zip(mask, losses)) / denom


def dual_masked_loss(
    primary_losses, primary_mask, aux_losses, aux_mask
) -> tuple[float, float, float]:
    """Both stream losses and their equal-weight sum."""
    lp = masked_loss(primary_losses, primary_mask)
    la = masked_loss(aux_losses, aux_mask)
    return lp, la, lp + la
