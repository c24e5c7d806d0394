import struct

import pytest

from b3parity.cache import MAGIC, crc64, load_series, save_series
from b3parity.series import B3_ETA, Ring, eta_quotient_series


def round_trip(tmp_path, ring, L=500):
    series = eta_quotient_series(B3_ETA, L, ring)
    path = tmp_path / "series.b3p"
    save_series(series, path)
    loaded = load_series(path)
    assert loaded.ring == series.ring
    assert loaded.truncation == series.truncation
    assert loaded.to_list() == series.to_list()


def test_round_trip_gf2(tmp_path):
    round_trip(tmp_path, Ring.gf2())


def test_round_trip_mod2(tmp_path):
    round_trip(tmp_path, Ring.mod_pow2(1))


def test_round_trip_mod32(tmp_path):
    round_trip(tmp_path, Ring.mod_pow2(5))


def test_round_trip_mod2_64(tmp_path):
    round_trip(tmp_path, Ring.mod_pow2(64))


def test_round_trip_unaligned_length(tmp_path):
    # lengths that are not multiples of 8 exercise the bit packing tail
    round_trip(tmp_path, Ring.gf2(), L=77)
    round_trip(tmp_path, Ring.mod_pow2(3), L=77)


def test_exact_series_not_cacheable(tmp_path):
    series = eta_quotient_series(B3_ETA, 50, Ring.exact())
    with pytest.raises(ValueError, match="not cacheable"):
        save_series(series, tmp_path / "exact.b3p")


def test_corruption_detected(tmp_path):
    series = eta_quotient_series(B3_ETA, 500, Ring.gf2())
    path = tmp_path / "series.b3p"
    save_series(series, path)
    blob = bytearray(path.read_bytes())
    blob[20] ^= 0x40
    path.write_bytes(bytes(blob))
    with pytest.raises(ValueError, match="checksum mismatch"):
        load_series(path)


def test_bad_magic(tmp_path):
    path = tmp_path / "bogus.b3p"
    path.write_bytes(b"NOPE" + bytes(40))
    with pytest.raises(ValueError, match="not a series cache file"):
        load_series(path)


def test_bad_version(tmp_path):
    series = eta_quotient_series(B3_ETA, 64, Ring.gf2())
    path = tmp_path / "series.b3p"
    save_series(series, path)
    blob = bytearray(path.read_bytes())
    blob[4] = 9
    body = bytes(blob[:-8])
    path.write_bytes(body + struct.pack("<Q", crc64(body)))
    with pytest.raises(ValueError, match="version"):
        load_series(path)


def test_truncated_payload(tmp_path):
    series = eta_quotient_series(B3_ETA, 500, Ring.gf2())
    path = tmp_path / "series.b3p"
    save_series(series, path)
    blob = path.read_bytes()
    path.write_bytes(blob[:-9])
    with pytest.raises(ValueError):
        load_series(path)


def test_crc64_known_vector():
    # CRC-64/ECMA-182 of "123456789"
    assert crc64(b"123456789") == 0x6C40DF5F0B497347


def test_header_matches_spec(tmp_path):
    series = eta_quotient_series(B3_ETA, 500, Ring.mod_pow2(5))
    path = tmp_path / "series.b3p"
    save_series(series, path)
    blob = path.read_bytes()
    assert blob[:4] == MAGIC
    version, tag, k, L = struct.unpack("<BBBQ", blob[4:15])
    assert (version, tag, k, L) == (1, 1, 5, 500)
    assert len(blob) == 15 + (500 * 5 + 7) // 8 + 8
