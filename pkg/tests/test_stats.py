import random

import pytest

from samsami import InvalidParams, SamplingParams, distinct_qgrams, sampling_ratio
from samsami.stats import qgram_report, sampling_report

from helpers import random_text


def test_sampling_ratio_abracadabra():
    got = sampling_ratio(b"abracadabra", SamplingParams(4, 2))
    assert got == pytest.approx(100 * 4 / 11)


def test_sampling_ratio_is_consistent_with_sampling():
    rng = random.Random(1234)
    for _ in range(30):
        q = rng.randint(1, 10)
        p = rng.randint(1, q)
        text = random_text(rng, rng.randint(q, 300), rng.choice([2, 26]))
        pct = sampling_ratio(text, SamplingParams(q, p))
        assert 0 < pct <= 100


def test_distinct_qgrams_example():
    # ab, br, ra, ac, ca, ad, da
    assert distinct_qgrams(b"abracadabra", 2) == 7


def test_distinct_qgrams_single_symbol():
    assert distinct_qgrams(b"aaaa", 1) == 1
    assert distinct_qgrams(b"aaaa", 3) == 1


def test_distinct_qgrams_validation():
    with pytest.raises(InvalidParams):
        distinct_qgrams(b"abc", 0)
    with pytest.raises(InvalidParams):
        distinct_qgrams(b"abc", 4)


def test_distinct_qgrams_matches_hash_set():
    rng = random.Random(0x06A7)
    for _ in range(60):
        text = random_text(rng, rng.randint(1, 600), rng.choice([2, 4, 26, 256]))
        q = rng.randint(1, min(12, len(text)))
        grams = {text[i:i + q] for i in range(len(text) - q + 1)}
        assert distinct_qgrams(text, q) == len(grams)


def test_distinct_qgrams_long_grams_use_sa_path():
    rng = random.Random(0x06A8)
    text = random_text(rng, 400, 3)
    for q in (9, 12, 30):
        grams = {text[i:i + q] for i in range(len(text) - q + 1)}
        assert distinct_qgrams(text, q) == len(grams)


def test_sampling_report_rows():
    rows = list(sampling_report(b"abracadabra", [(4, 2), (4, 1)]))
    assert rows[0] == (4, 2, 4, 11, pytest.approx(100 * 4 / 11))
    assert rows[1][:2] == (4, 1)


def test_qgram_report_rows():
    rows = list(qgram_report(b"abracadabra", [1, 2]))
    assert rows == [(1, 5), (2, 7)]  # a, b, r, c, d
