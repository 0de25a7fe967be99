import random

import pytest

from samsami import (SamplingParams, TextTooShort, build_full_sa,
                     extract_sampled, sampled_positions)

from helpers import brute_suffix_array, random_text


def test_abracadabra():
    assert brute_suffix_array(b"abracadabra") == [11, 8, 1, 4, 6, 9, 2, 5, 7, 10, 3]
    assert list(build_full_sa(b"abracadabra").sa) == [11, 8, 1, 4, 6, 9, 2, 5, 7, 10, 3]


def test_shorter_suffix_sorts_first():
    assert list(build_full_sa(b"aaa").sa) == [3, 2, 1]


def test_single_byte():
    assert list(build_full_sa(b"b").sa) == [1]


def test_empty_text_rejected():
    with pytest.raises(TextTooShort):
        build_full_sa(b"")


def test_matches_comparison_sort_randomized():
    rng = random.Random(31337)
    for _ in range(120):
        alphabet = rng.choice([1, 2, 4, 26, 256])
        n = rng.randint(1, 500)
        text = random_text(rng, n, alphabet)
        assert list(build_full_sa(text).sa) == brute_suffix_array(text)


def test_matches_comparison_sort_larger():
    rng = random.Random(99)
    for alphabet in (2, 26):
        text = random_text(rng, 4096, alphabet)
        assert list(build_full_sa(text).sa) == brute_suffix_array(text)


def test_extract_sampled_example():
    full = build_full_sa(b"abracadabra")
    sampled = sampled_positions(b"abracadabra", SamplingParams(4, 2))
    assert list(extract_sampled(full, sampled)) == [8, 1, 4, 6]


def test_extract_all_positions_is_identity():
    text = b"mississippi"
    full = build_full_sa(text)
    sampled = sampled_positions(text, SamplingParams(1, 1))
    assert list(extract_sampled(full, sampled)) == list(full.sa)


def test_extract_singleton():
    text = b"banana"
    full = build_full_sa(text)
    sampled = sampled_positions(text, SamplingParams(len(text), 1))
    # q = n leaves a single window; its minimizer is the only sample
    got = extract_sampled(full, sampled)
    assert len(got) == 1


def test_extracted_subsequence_stays_sorted():
    rng = random.Random(4242)
    for _ in range(40):
        text = random_text(rng, rng.randint(8, 300), 4)
        q = rng.randint(2, 8)
        p = rng.randint(1, q)
        if len(text) < q:
            continue
        full = build_full_sa(text)
        sampled = sampled_positions(text, SamplingParams(q, p))
        got = [int(v) for v in extract_sampled(full, sampled)]
        suffixes = [text[s - 1:] for s in got]
        assert suffixes == sorted(suffixes)
        assert sorted(got) == [int(v) for v in sampled.positions]
