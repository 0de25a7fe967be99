"""The basic sampled-suffix-array index.

Construction samples one suffix per window (the window's minimizer
position) and keeps those suffixes in lexicographic order. A pattern of
length m >= q is located with a single binary search for its suffix
starting at the q-prefix minimizer, followed by verification of the
skipped prefix symbols against the text.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidParams, PatternTooShort, TextTooShort
from .minimizer import SamplingParams, sampled_positions, window_minimizer
from .suffix_sort import build_full_sa, extract_sampled


class MatchRange(NamedTuple):
    """Half-open rank interval [lo, hi) of suffixes sharing a prefix."""

    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo


@dataclass
class QueryStats:
    """Optional instrumentation for a single query."""

    candidates: int = 0
    text_verifications: int = 0
    pruned: int = 0


@dataclass(eq=False)
class SamsamiIndex:
    """Immutable index over a text: safe to share across threads."""

    text: bytes
    params: SamplingParams
    sa: np.ndarray = field(repr=False)
    n: int = 0

    @property
    def n_sampled(self) -> int:
        return len(self.sa)


def build(text: bytes, params: SamplingParams) -> SamsamiIndex:
    """Sample the text's minimizer positions and suffix-sort them."""
    if len(text) < params.q:
        raise TextTooShort(f"text length {len(text)} < q={params.q}")
    sampled = sampled_positions(text, params)
    full = build_full_sa(text)
    sa = extract_sampled(full, sampled)
    return SamsamiIndex(text=text, params=params, sa=sa, n=len(text))


def suffix_range(idx: SamsamiIndex, seq: bytes) -> MatchRange:
    """Maximal rank interval whose suffixes start with seq."""
    if len(seq) == 0:
        raise InvalidParams("empty search string")
    return _prefix_range(idx.text, idx.sa, 0, len(idx.sa), seq)


def _prefix_range(text: bytes, sa, lo: int, hi: int, seq: bytes) -> MatchRange:
    # A suffix shorter than seq truncates and therefore compares smaller,
    # which is exactly the end-of-text-is-smallest order.
    def head(pos):
        pos = int(pos) - 1
        return text[pos:pos + len(seq)]

    lo_rank = bisect_left(sa, seq, lo, hi, key=head)
    hi_rank = bisect_right(sa, seq, lo_rank, hi, key=head)
    return MatchRange(lo_rank, hi_rank)


def _verify_candidates(idx: SamsamiIndex, pattern: bytes, j: int,
                       ranks: MatchRange, deltas=None, mask=None,
                       stats: QueryStats | None = None) -> list[int]:
    """Map ranks to occurrence starts, checking the j-1 prefix symbols.

    With a delta annotation and prune mask, candidates whose recorded
    predecessor distance is proven infeasible are dropped without
    touching the text.
    """
    text = idx.text
    prefix = pattern[:j - 1]
    out = []
    for r in range(ranks.lo, ranks.hi):
        s = int(idx.sa[r])
        if stats:
            stats.candidates += 1
        start = s - j + 1
        if start < 1:
            continue
        if deltas is not None:
            d = int(deltas[r])
            # d = 0 or a predecessor at/before the occurrence start says
            # nothing; in between, the mask may settle it for free
            if 0 < d < j and not mask.allows(d):
                if stats:
                    stats.pruned += 1
                continue
        if j > 1:
            if stats:
                stats.text_verifications += 1
            if text[start - 1:start - 1 + j - 1] != prefix:
                continue
        out.append(start)
    return out


def _locate_impl(idx: SamsamiIndex, pattern: bytes, deltas=None,
                 stats: QueryStats | None = None, mask=None,
                 sort: bool = True):
    q, p = idx.params.q, idx.params.p
    if len(pattern) < q:
        raise PatternTooShort(f"pattern length {len(pattern)} < q={q}")
    j = window_minimizer(pattern[:q], p)
    ranks = suffix_range(idx, pattern[j - 1:])
    hits = _verify_candidates(idx, pattern, j, ranks, deltas, mask, stats)
    if sort:
        hits.sort()
    return hits


def locate(idx: SamsamiIndex, pattern: bytes,
           stats: QueryStats | None = None) -> list[int]:
    """All occurrence positions of pattern in the text, ascending."""
    return _locate_impl(idx, pattern, stats=stats)


def count(idx: SamsamiIndex, pattern: bytes,
          stats: QueryStats | None = None) -> int:
    """Number of occurrences of pattern in the text."""
    return len(_locate_impl(idx, pattern, stats=stats, sort=False))
