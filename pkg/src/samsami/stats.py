"""Corpus statistics: sampling ratios and distinct q-gram counts."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidParams
from .minimizer import SamplingParams, sampled_positions
from .suffix_sort import build_full_sa


def sampling_ratio(text: bytes, params: SamplingParams) -> float:
    """Percentage of suffixes retained by minimizer sampling."""
    kept = len(sampled_positions(text, params))
    return 100.0 * kept / len(text)


def distinct_qgrams(text: bytes, q: int) -> int:
    """Number of distinct length-q substrings of text."""
    n = len(text)
    if not 1 <= q <= n:
        raise InvalidParams(f"need 1 <= q <= {n}, got {q}")
    if q <= 8:
        # pack each gram into a uint64; sorting those is far cheaper than
        # a suffix array at corpus scale
        arr = np.frombuffer(text, dtype=np.uint8).astype(np.uint64)
        keys = np.zeros(n - q + 1, dtype=np.uint64)
        for t in range(q):
            keys = (keys << np.uint64(8)) | arr[t:t + n - q + 1]
        return int(np.unique(keys).size)
    sa = build_full_sa(text).sa
    total = 0
    prev = None
    for pos in sa:
        pos = int(pos)
        if pos > n - q + 1:
            continue
        gram = text[pos - 1:pos - 1 + q]
        if gram != prev:
            total += 1
            prev = gram
    return total


def sampling_report(text: bytes, pairs: Iterable[tuple[int, int]]) -> Iterator[tuple]:
    """Rows of (q, p, n_sampled, n, percent) for each parameter pair."""
    n = len(text)
    for q, p in pairs:
        kept = len(sampled_positions(text, SamplingParams(q, p)))
        yield q, p, kept, n, 100.0 * kept / n


def qgram_report(text: bytes, lengths: Iterable[int]) -> Iterator[tuple[int, int]]:
    """Rows of (q, count) for each gram length."""
    for q in lengths:
        yield q, distinct_qgrams(text, q)
