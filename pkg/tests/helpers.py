"""Shared brute-force oracles and input generators.

The oracles are deliberately naive re-statements of the definitions and
never share code with the implementations they check.
"""

from __future__ import annotations

import random


def random_text(rng: random.Random, n: int, alphabet: int) -> bytes:
    return bytes(rng.randrange(alphabet) for _ in range(n))


def brute_minimizer(s: bytes, p: int) -> int:
    """Leftmost smallest p-gram by comparing every candidate."""
    grams = [(s[g:g + p], g + 1) for g in range(len(s) - p + 1)]
    smallest = min(g for g, _ in grams)
    return min(pos for g, pos in grams if g == smallest)


def brute_sampled(text: bytes, q: int, p: int) -> list[int]:
    """O(n*q*p) double loop over windows and offsets."""
    n = len(text)
    picked = set()
    for w in range(1, n - q + 2):
        best = w
        for g in range(w + 1, w + q - p + 1):  # p-gram starts in [w, w+q-p]
            if text[g - 1:g - 1 + p] < text[best - 1:best - 1 + p]:
                best = g
        picked.add(best)
    return sorted(picked)


def brute_suffix_array(text: bytes) -> list[int]:
    """Comparison sort of all suffixes (implicit smallest sentinel)."""
    return sorted(range(1, len(text) + 1), key=lambda i: text[i - 1:])


def brute_locate(text: bytes, pattern: bytes) -> list[int]:
    """Position-by-position scan, independent of bytes.find."""
    m = len(pattern)
    return [i + 1 for i in range(len(text) - m + 1)
            if text[i:i + m] == pattern]
