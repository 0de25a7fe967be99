"""Lexicographic minimizers of fixed-length windows.

A window of length q has q-p+1 substrings of length p ("p-grams"); its
minimizer is the lexicographically smallest of them, ties resolved in
favor of the leftmost. Sliding the window over a text and collecting the
minimizer positions yields the sampled-position set that the index is
built on. All positions are 1-based; comparisons are unsigned bytewise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, PatternTooShort, TextTooShort

# Below this size the plain deque is faster than setting up numpy arrays.
_VECTOR_MIN_N = 1 << 14


@dataclass(frozen=True)
class SamplingParams:
    """Window length q and minimizer length p, with 1 <= p <= q."""

    q: int
    p: int

    def __post_init__(self):
        if self.p < 1 or self.q < self.p:
            raise InvalidParams(f"need 1 <= p <= q, got q={self.q} p={self.p}")


@dataclass
class SampledPositions:
    """Strictly increasing 1-based minimizer positions of a length-n text."""

    positions: np.ndarray
    n: int

    def __len__(self) -> int:
        return len(self.positions)


@dataclass
class PruneMask:
    """Per-pattern verification filter for the delta-annotated variant.

    j is the minimizer offset in the pattern's q-prefix. possible[d] tells,
    for each distance d in 1..min(15, j-1), whether some text alignment
    admits a sampled position at pattern offset j-d. False entries are
    proven mismatches; absent distances carry no information.
    """

    j: int
    possible: dict[int, bool]

    def allows(self, d: int) -> bool:
        return self.possible.get(d, True)


def window_minimizer(s: bytes, p: int) -> int:
    """Return the 1-based start of the leftmost smallest p-gram of s."""
    if p < 1:
        raise InvalidParams(f"p must be >= 1, got {p}")
    if len(s) < p:
        raise InvalidParams(f"window of length {len(s)} has no {p}-gram")
    best = 1
    best_gram = s[:p]
    for g in range(2, len(s) - p + 2):
        gram = s[g - 1:g - 1 + p]
        if gram < best_gram:
            best = g
            best_gram = gram
    return best


def sampled_positions(text: bytes, params: SamplingParams) -> SampledPositions:
    """Collect the minimizer positions of every length-q window of text.

    The result is an ascending set of positions: a window whose minimizer
    string recurred at a new position contributes a new sample, while
    re-selecting the same position does not.
    """
    n = len(text)
    q, p = params.q, params.p
    if n < q:
        raise TextTooShort(f"text length {n} < window length {q}")
    if n >= _VECTOR_MIN_N and p <= 8:
        positions = _sampled_vectorized(text, q, p)
    else:
        positions = np.asarray(_sampled_deque(text, q, p), dtype=np.uint32)
    return SampledPositions(positions=positions, n=n)


def _sampled_deque(text: bytes, q: int, p: int) -> list[int]:
    # Monotone candidate list: p-grams non-decreasing front to back, so the
    # front is always the leftmost minimum of the live window. Equal grams
    # are kept to preserve the leftmost tie-break.
    out: list[int] = []
    cand: deque[tuple[int, bytes]] = deque()
    width = q - p
    for g in range(1, len(text) - p + 2):
        gram = text[g - 1:g - 1 + p]
        while cand and cand[-1][1] > gram:
            cand.pop()
        cand.append((g, gram))
        w = g - width
        if w >= 1:
            while cand[0][0] < w:
                cand.popleft()
            m = cand[0][0]
            # minimizer positions are non-decreasing window to window
            if not out or out[-1] != m:
                out.append(m)
    return out


def _sampled_vectorized(text: bytes, q: int, p: int) -> np.ndarray:
    # Pack each p-gram and its position into one uint64 so that the sliding
    # minimum picks the leftmost smallest gram; block prefix/suffix minima
    # give every window minimum in O(n) vectorized work.
    arr = np.frombuffer(text, dtype=np.uint8).astype(np.uint64)
    ngrams = len(text) - p + 1
    if p <= 4:
        keys = np.zeros(ngrams, dtype=np.uint64)
        for t in range(p):
            keys = (keys << np.uint64(8)) | arr[t:t + ngrams]
    else:
        raw = np.zeros(ngrams, dtype=np.uint64)
        for t in range(p):
            raw = (raw << np.uint64(8)) | arr[t:t + ngrams]
        # p-grams of 5..8 bytes fill the word; rank-compress to make room
        _, keys = np.unique(raw, return_inverse=True)
        keys = keys.astype(np.uint64)
    packed = (keys << np.uint64(32)) | np.arange(ngrams, dtype=np.uint64)

    window = q - p + 1
    pad = (-ngrams) % window
    if pad:
        packed = np.concatenate(
            [packed, np.full(pad, np.uint64(0xFFFFFFFFFFFFFFFF))])
    blocks = packed.reshape(-1, window)
    left = np.minimum.accumulate(blocks, axis=1).ravel()
    right = np.minimum.accumulate(blocks[:, ::-1], axis=1)[:, ::-1].ravel()
    nwin = ngrams - window + 1
    mins = np.minimum(right[:nwin], left[window - 1:window - 1 + nwin])
    positions = np.unique(mins & np.uint64(0xFFFFFFFF)).astype(np.uint32)
    return positions + np.uint32(1)


def prune_mask(pattern: bytes, params: SamplingParams) -> PruneMask:
    """Precompute which predecessor distances are feasible for a pattern.

    With the pattern's q-prefix minimizer at offset j, a candidate text
    alignment may show a sampled position d places earlier, at pattern
    offset g = j-d. That offset can only be sampled by a window hanging
    over the left pattern edge (any window fully inside the prefix also
    covers j's p-gram, which beats g's). possible[d] is true when some
    such window exists in which no fully-known p-gram beats g's.
    """
    q, p = params.q, params.p
    if len(pattern) < q:
        raise PatternTooShort(f"pattern length {len(pattern)} < q={q}")
    j = window_minimizer(pattern[:q], p)
    possible: dict[int, bool] = {}
    for d in range(1, min(15, j - 1) + 1):
        g = j - d
        g_gram = pattern[g - 1:g - 1 + p]
        feasible = False
        # candidate windows end before j's p-gram is fully covered
        for e in range(g + p - 1, j + p - 1):
            start = e - q + 1
            beaten = False
            for h in range(max(1, start), e - p + 2):
                if h == g:
                    continue
                h_gram = pattern[h - 1:h - 1 + p]
                if h_gram < g_gram or (h_gram == g_gram and h < g):
                    beaten = True
                    break
            if not beaten:
                feasible = True
                break
        possible[d] = feasible
    return PruneMask(j=j, possible=possible)
