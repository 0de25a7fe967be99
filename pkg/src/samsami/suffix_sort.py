"""Full suffix array construction and extraction of sampled entries.

Suffix order uses an implicit end-of-text sentinel smaller than every
byte, so a suffix that is a prefix of another sorts first. The same
convention drives the binary-search comparators in the index modules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TextTooShort
from .minimizer import SampledPositions


@dataclass
class FullSuffixArray:
    """Lexicographic permutation of all 1-based suffix start positions."""

    sa: np.ndarray


def build_full_sa(text: bytes) -> FullSuffixArray:
    """Sort all suffixes of text (prefix-doubling, O(n log n))."""
    if len(text) == 0:
        raise TextTooShort("cannot build a suffix array of an empty text")
    order = _doubling_sort(text)
    return FullSuffixArray(sa=(order + 1).astype(np.uint32))


def _doubling_sort(text: bytes) -> np.ndarray:
    n = len(text)
    rank = np.frombuffer(text, dtype=np.uint8).astype(np.int32)
    shift = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int32)
        if shift < n:
            key2[:n - shift] = rank[shift:]
        order = np.lexsort((key2, rank))
        r1 = rank[order]
        r2 = key2[order]
        bump = np.empty(n, dtype=np.int32)
        bump[0] = 0
        bump[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        rank[order] = np.cumsum(bump, dtype=np.int32)
        if int(rank[order[-1]]) == n - 1:
            return order
        shift *= 2


def extract_sampled(full: FullSuffixArray, sampled: SampledPositions) -> np.ndarray:
    """Keep only sampled positions, preserving suffix order."""
    keep = np.zeros(sampled.n + 1, dtype=bool)
    keep[np.asarray(sampled.positions, dtype=np.int64)] = True
    return full.sa[keep[full.sa]]
