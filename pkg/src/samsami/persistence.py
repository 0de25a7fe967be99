"""Index file serialization.

Layout (all integers little-endian):

    magic   4 bytes  "SSMI"
    version u32      1
    flags   u32      bit0 delta nibbles, bit1 hash table, bit2 phrase section
    q, p, k u32      sampling params; k = 0 when no hash table
    n, n'   u64      text length, number of sampled suffixes
    checksum u64     FNV-1a over the text (the text itself is not stored)
    offsets n' * u32 (delta << 28) | (position - 1); delta 0 unless bit0
    [hash]  capacity u64, then capacity * (lo u32, hi u32); empty slot
            lo = hi = 0xFFFFFFFF
    [phrase] phrase count u32, then per phrase length u32 + raw bytes in
            id order, then stream length u64 + stream bytes

Loading requires the original text (checksum-verified); a rebuilt index
over the same text and params serializes to identical bytes.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import SamsamiIndex, build
from .delta import MAX_DELTA_TEXT, DeltaAnnotation, annotate
from .errors import CorruptIndex, SamsamiError, TextMismatch, UnsupportedFormat
from .hashindex import EMPTY_SLOT, PrefixRangeTable, build_table, fnv1a
from .minimizer import SamplingParams
from .phrase import (EncodedText, PhraseDictionary, encode_id, encode_text,
                     rebuild_positions)

MAGIC = b"SSMI"
VERSION = 1
FLAG_DELTA = 1
FLAG_HASH = 2
FLAG_PHRASE = 4

_HEADER = struct.Struct("<4s5I3Q")


@lru_cache(maxsize=4)
def text_checksum(text: bytes) -> int:
    return fnv1a(text)


@dataclass(eq=False)
class IndexBundle:
    """A loaded or freshly built index plus its optional annotations."""

    index: SamsamiIndex
    delta: DeltaAnnotation | None = None
    table: PrefixRangeTable | None = None
    dictionary: PhraseDictionary | None = None
    encoded: EncodedText | None = None

    @property
    def flags(self) -> int:
        flags = 0
        if self.delta is not None:
            flags |= FLAG_DELTA
        if self.table is not None:
            flags |= FLAG_HASH
        if self.dictionary is not None:
            flags |= FLAG_PHRASE
        return flags


def build_bundle(text: bytes, params: SamplingParams, *, with_delta=False,
                 hash_k: int | None = None, with_phrase=False) -> IndexBundle:
    """Build the index and any requested annotations in one go."""
    idx = build(text, params)
    bundle = IndexBundle(index=idx)
    if with_delta:
        bundle.delta = annotate(idx)
    if hash_k is not None:
        bundle.table = build_table(idx, hash_k)
    if with_phrase:
        bundle.dictionary, bundle.encoded = encode_text(text, params)
    return bundle


def save(bundle: IndexBundle, dest) -> int:
    """Serialize to a path or binary file object; returns bytes written."""
    if hasattr(dest, "write"):
        return _write(bundle, dest)
    with open(dest, "wb") as fh:
        return _write(bundle, fh)


def serialized_bytes(bundle: IndexBundle) -> bytes:
    buf = io.BytesIO()
    _write(bundle, buf)
    return buf.getvalue()


def _write(bundle: IndexBundle, fh) -> int:
    idx = bundle.index
    k = bundle.table.k if bundle.table is not None else 0
    header = _HEADER.pack(MAGIC, VERSION, bundle.flags, idx.params.q,
                          idx.params.p, k, idx.n, len(idx.sa),
                          text_checksum(idx.text))
    written = fh.write(header)

    offsets = idx.sa.astype(np.uint32) - np.uint32(1)
    if bundle.delta is not None:
        offsets = offsets | (bundle.delta.delta.astype(np.uint32) << np.uint32(28))
    written += fh.write(offsets.astype("<u4").tobytes())

    if bundle.table is not None:
        written += fh.write(struct.pack("<Q", bundle.table.capacity))
        written += fh.write(bundle.table.slots.astype("<u4").tobytes())

    if bundle.dictionary is not None:
        phrases = bundle.dictionary.phrases
        written += fh.write(struct.pack("<I", len(phrases)))
        for ph in phrases:
            written += fh.write(struct.pack("<I", len(ph)))
            written += fh.write(ph)
        written += fh.write(struct.pack("<Q", len(bundle.encoded.stream)))
        written += fh.write(bundle.encoded.stream)
    return written


class _Reader:
    def __init__(self, fh):
        self.fh = fh

    def exactly(self, count: int) -> bytes:
        data = self.fh.read(count)
        if len(data) != count:
            raise CorruptIndex(f"expected {count} bytes, file ends after {len(data)}")
        return data


def load(source, text: bytes) -> IndexBundle:
    """Read an index file back, re-attaching the text it was built from."""
    if hasattr(source, "read"):
        return _read(_Reader(source), text)
    with open(source, "rb") as fh:
        return _read(_Reader(fh), text)


def _read(rd: _Reader, text: bytes) -> IndexBundle:
    raw = rd.fh.read(_HEADER.size)
    if len(raw) < _HEADER.size:
        raise CorruptIndex("file shorter than the fixed header")
    magic, version, flags, q, p, k, n, n_sampled, checksum = _HEADER.unpack(raw)
    if magic != MAGIC:
        raise UnsupportedFormat(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedFormat(f"unsupported version {version}")
    if flags & ~(FLAG_DELTA | FLAG_HASH | FLAG_PHRASE):
        raise UnsupportedFormat(f"unknown flag bits in {flags:#x}")
    if n != len(text):
        raise TextMismatch(f"index built over {n} bytes, text has {len(text)}")
    if checksum != text_checksum(text):
        raise TextMismatch("text checksum does not match the index header")
    try:
        params = SamplingParams(q, p)
    except SamsamiError as exc:
        raise CorruptIndex(f"invalid sampling params in header: {exc}") from exc
    if flags & FLAG_DELTA and n > MAX_DELTA_TEXT:
        raise CorruptIndex("delta flag set but text exceeds the packed limit")

    packed = np.frombuffer(rd.exactly(4 * n_sampled), dtype="<u4")
    if flags & FLAG_DELTA:
        positions = (packed & np.uint32((1 << 28) - 1)) + np.uint32(1)
        nibbles = (packed >> np.uint32(28)).astype(np.uint8)
    else:
        positions = packed + np.uint32(1)
        nibbles = None
    if len(positions) and int(positions.max()) > n:
        raise CorruptIndex("offset beyond the end of the text")

    idx = SamsamiIndex(text=text, params=params, sa=positions.copy(), n=n)
    bundle = IndexBundle(index=idx)
    if nibbles is not None:
        bundle.delta = DeltaAnnotation(delta=nibbles.copy())

    if flags & FLAG_HASH:
        (capacity,) = struct.unpack("<Q", rd.exactly(8))
        if capacity < 2 or capacity & (capacity - 1):
            raise CorruptIndex(f"hash capacity {capacity} not a power of two")
        slots = np.frombuffer(rd.exactly(8 * capacity), dtype="<u4")
        slots = slots.reshape(capacity, 2).copy()
        used = slots[:, 0] != EMPTY_SLOT
        if (slots[used] > n_sampled).any():
            raise CorruptIndex("hash range beyond the sampled array")
        bundle.table = PrefixRangeTable(k=k, capacity=int(capacity), slots=slots)

    if flags & FLAG_PHRASE:
        (count,) = struct.unpack("<I", rd.exactly(4))
        phrases = []
        for _ in range(count):
            (length,) = struct.unpack("<I", rd.exactly(4))
            phrases.append(rd.exactly(length))
        (stream_len,) = struct.unpack("<Q", rd.exactly(8))
        stream = rd.exactly(stream_len)
        dictionary = PhraseDictionary(
            phrases=phrases,
            ids={ph: i for i, ph in enumerate(phrases)},
            codewords=[encode_id(i) for i in range(count)],
        )
        try:
            encoded = rebuild_positions(dictionary, stream)
        except SamsamiError as exc:
            raise CorruptIndex(f"phrase stream does not decode: {exc}") from exc
        span = 0
        if encoded.phrase_count:
            last = encoded.phrase_count - 1
            span = (int(encoded.text_positions[last]) - 1
                    + len(phrases[int(encoded.phrase_ids[last])]))
        if span != n:
            raise CorruptIndex("phrase stream does not span the text")
        bundle.dictionary = dictionary
        bundle.encoded = encoded
    return bundle
