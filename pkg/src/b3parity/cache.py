"""On-disk format for truncated coefficient series.

Layout of a cache file:

  offset  size  field
  0       4     magic "B3P1"
  4       1     format version, 0x01
  5       1     ring tag: 0 = GF(2), 1 = mod 2^k
  6       1     k (0 for GF(2))
  7       8     truncation L, unsigned little endian
  15      n     coefficients, k bits each (1 for GF(2)), bit-packed in
                little bit order; n = ceil(L * kbits / 8)
  15+n    8     CRC-64/ECMA-182 of bytes [0, 15+n), little endian

Exact-integer series have unbounded coefficients and are not cacheable.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from b3parity.series import CoefficientSeries, Ring

MAGIC = b"B3P1"
VERSION = 1

_CRC_POLY = 0x42F0E1EBA9EA3693
_CRC_MASK = (1 << 64) - 1
_CRC_TABLE: list[int] | None = None


def _crc_table() -> list[int]:
    global _CRC_TABLE
    if _CRC_TABLE is None:
        table = []
        for i in range(256):
            c = i << 56
            for _ in range(8):
                c = ((c << 1) ^ _CRC_POLY if c & (1 << 63) else c << 1) & _CRC_MASK
            table.append(c)
        _CRC_TABLE = table
    return _CRC_TABLE


def crc64(data: bytes, crc: int = 0) -> int:
    """CRC-64/ECMA-182: polynomial 0x42F0E1EBA9EA3693, MSB first, no reflection."""
    table = _crc_table()
    for b in data:
        crc = (table[((crc >> 56) ^ b) & 0xFF] ^ (crc << 8)) & _CRC_MASK
    return crc


_PACK_CHUNK = 1 << 20


def _pack_payload(series: CoefficientSeries) -> bytes:
    if series.ring.kind == "gf2":
        return series.parity_bytes()
    k = series.ring.k
    arr = series._arr
    shifts = np.arange(k, dtype=arr.dtype)
    out = []
    for lo in range(0, len(arr), _PACK_CHUNK):
        chunk = arr[lo : lo + _PACK_CHUNK]
        bits = ((chunk[:, None] >> shifts) & arr.dtype.type(1)).astype(np.uint8)
        out.append(np.packbits(bits.ravel(), bitorder="little").tobytes())
    return b"".join(out)


def _unpack_payload(payload: bytes, L: int, k: int) -> CoefficientSeries:
    if k == 0:
        return CoefficientSeries(Ring.gf2(), L, payload)
    dtype = np.uint8 if k <= 8 else np.uint64
    bits = np.unpackbits(
        np.frombuffer(payload, dtype=np.uint8), bitorder="little", count=L * k
    )
    weights = (np.uint64(1) << np.arange(k, dtype=np.uint64)).astype(np.uint64)
    arr = (bits.reshape(L, k).astype(np.uint64) @ weights).astype(dtype)
    return CoefficientSeries(Ring.mod_pow2(k), L, arr)


def save_series(series: CoefficientSeries, path: str | os.PathLike) -> None:
    """Write a series to disk; exact-integer series raise ValueError."""
    if series.ring.kind == "exact":
        raise ValueError("exact-integer series are not cacheable")
    tag = 0 if series.ring.kind == "gf2" else 1
    k = 0 if tag == 0 else series.ring.k
    header = MAGIC + struct.pack("<BBBQ", VERSION, tag, k, series.truncation)
    body = header + _pack_payload(series)
    tmp = os.fspath(path) + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(body)
        fh.write(struct.pack("<Q", crc64(body)))
    os.replace(tmp, path)


def load_series(path: str | os.PathLike) -> CoefficientSeries:
    """Read a series written by save_series, validating the checksum."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 23 or blob[:4] != MAGIC:
        raise ValueError(f"{path}: not a series cache file")
    version, tag, k, L = struct.unpack("<BBBQ", blob[4:15])
    if version != VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    if tag not in (0, 1):
        raise ValueError(f"{path}: unknown ring tag {tag}")
    if tag == 0 and k != 0:
        raise ValueError(f"{path}: GF(2) payload with nonzero k")
    if tag == 1 and not 1 <= k <= 64:
        raise ValueError(f"{path}: k = {k} outside 1..64")
    if L < 1:
        raise ValueError(f"{path}: empty series")
    kbits = 1 if tag == 0 else k
    n = (L * kbits + 7) // 8
    if len(blob) != 15 + n + 8:
        raise ValueError(f"{path}: truncated or oversized payload")
    (stored,) = struct.unpack("<Q", blob[-8:])
    if crc64(blob[:-8]) != stored:
        raise ValueError(f"{path}: checksum mismatch, file is corrupt")
    return _unpack_payload(blob[15:-8], L, k)
