"""Delta-annotated variant: verification pruning without text access.

Each index entry gains 4 bits holding the distance to the previous
sampled position in text order (0 when there is none or it exceeds 15).
At query time the pattern's prune mask rejects candidates whose recorded
distance is infeasible, saving the text lookup the verification would
otherwise need. Packed form keeps the 4 bits in the top nibble of a
32-bit offset, which caps texts at 2^28 bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import QueryStats, SamsamiIndex, _locate_impl
from .errors import TextTooLargeForDeltaVariant
from .minimizer import prune_mask

MAX_DELTA_TEXT = 1 << 28
_POS_MASK = (1 << 28) - 1


@dataclass(eq=False)
class DeltaAnnotation:
    """4-bit predecessor distances, aligned with the index's sa ranks."""

    delta: np.ndarray = field(repr=False)


def annotate(idx: SamsamiIndex) -> DeltaAnnotation:
    """Compute per-entry distances to the previous sampled position."""
    if idx.n > MAX_DELTA_TEXT:
        raise TextTooLargeForDeltaVariant(
            f"text of {idx.n} bytes exceeds the {MAX_DELTA_TEXT} delta limit")
    sa = idx.sa.astype(np.int64)
    order = np.argsort(sa, kind="stable")
    text_order = sa[order]
    gaps = np.zeros(len(sa), dtype=np.int64)
    if len(sa) > 1:
        gaps[1:] = text_order[1:] - text_order[:-1]
    gaps[(gaps < 1) | (gaps > 15)] = 0
    delta = np.zeros(len(sa), dtype=np.uint8)
    delta[order] = gaps.astype(np.uint8)
    return DeltaAnnotation(delta=delta)


def pack(position: int, delta: int) -> int:
    """Pack a 1-based position and 4-bit delta into one 32-bit offset."""
    if not 1 <= position <= MAX_DELTA_TEXT:
        raise ValueError(f"position {position} out of packed range")
    if not 0 <= delta <= 15:
        raise ValueError(f"delta {delta} does not fit 4 bits")
    return (delta << 28) | (position - 1)


def unpack(offset: int) -> tuple[int, int]:
    """Inverse of pack: (position, delta)."""
    return (offset & _POS_MASK) + 1, offset >> 28


def locate2(idx: SamsamiIndex, ann: DeltaAnnotation, pattern: bytes,
            stats: QueryStats | None = None) -> list[int]:
    """Same result set as core.locate, with delta-based pruning."""
    mask = prune_mask(pattern, idx.params)
    return _locate_impl(idx, pattern, deltas=ann.delta, stats=stats, mask=mask)


def count2(idx: SamsamiIndex, ann: DeltaAnnotation, pattern: bytes,
           stats: QueryStats | None = None) -> int:
    mask = prune_mask(pattern, idx.params)
    return len(_locate_impl(idx, pattern, deltas=ann.delta, stats=stats,
                            mask=mask, sort=False))
