"""Truncated power series over selectable coefficient rings.

Three rings are supported: GF(2) with bit-packed storage, integers modulo
2^k for 1 <= k <= 64 on numpy arrays, and exact unbounded integers. Infinite
products (q^d;q^d)_inf^e expand through the pentagonal number theorem, so a
factor contributes only O(sqrt(L/d)) terms below the truncation L.

Negative exponents are handled per ring. Over GF(2) squaring is the
Frobenius map, so (q^d;q^d)^(2^K) = (q^(d*2^K);q^(d*2^K)) = 1 + O(q^(d*2^K));
choosing 2^K >= max(L/d, |e|) turns any exponent e into the nonnegative
e + 2^K and the whole quotient into a short product of sparse factors. The
other rings use the forward recurrence c(n) = f(n) - sum_g s_g c(n-g) against
the sparse pentagonal polynomial, which is exact for any ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from b3parity.residues import ResidueSet

# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    kind: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gf2", "mod_pow2", "exact"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod_pow2":
            if self.k is None or not 1 <= self.k <= 64:
                raise ValueError("mod_pow2 requires 1 <= k <= 64")
        elif self.k is not None:
            raise ValueError("k is only meaningful for mod_pow2")

    @staticmethod
    def gf2() -> "Ring":
        return Ring("gf2")

    @staticmethod
    def mod_pow2(k: int) -> "Ring":
        return Ring("mod_pow2", k)

    @staticmethod
    def exact() -> "Ring":
        return Ring("exact")


# ---------------------------------------------------------------------------
# eta exponent vectors


@dataclass(frozen=True)
class EtaExponents:
    """Exponent vector r = (r_d) over the positive divisors of M."""

    M: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError("M must be positive")
        seen = set()
        for d, _ in self.entries:
            if d < 1 or self.M % d != 0:
                raise ValueError(f"key {d} does not divide M = {self.M}")
            if d in seen:
                raise ValueError(f"duplicate key {d}")
            seen.add(d)

    @staticmethod
    def from_dict(entries: dict[int, int], M: int | None = None) -> "EtaExponents":
        if M is None:
            M = 1
            for d in entries:
                M = M * d // math.gcd(M, d)
        items = tuple(sorted(entries.items()))
        return EtaExponents(M, items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in self.entries if e != 0]

    def weighted_sum(self) -> int:
        """sum of d * r_d over all entries."""
        return sum(d * e for d, e in self.entries)

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.entries)


# ---------------------------------------------------------------------------
# pentagonal expansions


def pentagonal_exponents(scale: int, limit: int) -> list[int]:
    """Exponents g < limit of (q^scale;q^scale)_inf, including 0."""
    out = [0]
    k = 1
    while True:
        g = scale * (k * (3 * k - 1) // 2)
        if g >= limit:
            return out
        out.append(g)
        g = scale * (k * (3 * k + 1) // 2)
        if g < limit:
            out.append(g)
        k += 1


def pentagonal_terms(scale: int, limit: int) -> list[tuple[int, int]]:
    """(offset, sign) pairs with offset > 0, ascending, of (q^scale;q^scale)."""
    out = []
    k = 1
    while True:
        g = scale * (k * (3 * k - 1) // 2)
        if g >= limit:
            return out
        s = -1 if k % 2 else 1
        out.append((g, s))
        g = scale * (k * (3 * k + 1) // 2)
        if g < limit:
            out.append((g, s))
        k += 1


# ---------------------------------------------------------------------------
# GF(2) kernel: series live in Python big ints, bit i = coefficient of q^i


def _gf2_mul_scales(x: int, scale: int, L: int, mask: int) -> int:
    acc = 0
    for e in pentagonal_exponents(scale, L):
        acc ^= x << e
    return acc & mask


def _gf2_factor_scales(d: int, e: int, L: int) -> list[int]:
    """Scales whose pentagonal products realize (q^d;q^d)^e mod 2, mod q^L."""
    if e < 0:
        K = 0
        while d * (1 << K) < L or (1 << K) < -e:
            K += 1
        e += 1 << K
    scales = []
    j = 0
    while e:
        if e & 1:
            scales.append(d << j)
        e >>= 1
        j += 1
    return scales


def _gf2_eta(entries: list[tuple[int, int]], L: int) -> int:
    mask = (1 << L) - 1
    x = 1
    for d, e in entries:
        for scale in _gf2_factor_scales(d, e, L):
            x = _gf2_mul_scales(x, scale, L, mask)
    return x


def _gf2_geometric_scales(j: int, L: int) -> list[int]:
    """Scales a with (1 + q^(j*2^a)) multiplying to 1/(1-q^j) mod 2, mod q^L."""
    out = []
    s = j
    while s < L:
        out.append(s)
        s <<= 1
    return out


# ---------------------------------------------------------------------------
# mod 2^k kernel: numpy arrays with natural wraparound, masked on finalize


@lru_cache(maxsize=None)
def _divide_kernel():
    from numba import njit

    @njit(cache=True)
    def divide_sparse(c, offs, signs):
        n_terms = len(offs)
        for n in range(len(c)):
            acc = c[n]
            for i in range(n_terms):
                g = offs[i]
                if g > n:
                    break
                acc -= signs[i] * c[n - g]
            c[n] = acc

    return divide_sparse


def _np_terms(terms: list[tuple[int, int]], dtype) -> tuple[np.ndarray, np.ndarray]:
    offs = np.array([g for g, _ in terms], dtype=np.int64)
    signs = np.array([s for _, s in terms], dtype=np.int64).astype(dtype)
    return offs, signs


def _np_mul_sparse(c: np.ndarray, terms: list[tuple[int, int]]) -> np.ndarray:
    out = c.copy()
    L = len(c)
    dtype = c.dtype
    for g, s in terms:
        if s == 1:
            out[g:] += c[: L - g]
        elif s == -1:
            out[g:] -= c[: L - g]
        else:
            out[g:] += dtype.type(s) * c[: L - g]
    return out


def _np_div_sparse(c: np.ndarray, terms: list[tuple[int, int]]) -> None:
    offs, signs = _np_terms(terms, c.dtype)
    _divide_kernel()(c, offs, signs)


def _np_eta(entries: list[tuple[int, int]], L: int, dtype) -> np.ndarray:
    c = np.zeros(L, dtype=dtype)
    c[0] = 1
    for d, e in entries:
        terms = pentagonal_terms(d, L)
        for _ in range(abs(e)):
            if e > 0:
                c = _np_mul_sparse(c, terms)
            else:
                _np_div_sparse(c, terms)
    return c


def _mod_dtype(bits: int):
    return np.uint8 if bits <= 8 else np.uint64


# ---------------------------------------------------------------------------
# exact kernel: plain Python integer lists


def _exact_mul_sparse(c: list[int], terms: list[tuple[int, int]]) -> list[int]:
    out = c[:]
    L = len(c)
    for g, s in terms:
        for n in range(g, L):
            out[n] += s * c[n - g]
    return out


def _exact_div_sparse(c: list[int], terms: list[tuple[int, int]]) -> None:
    L = len(c)
    for n in range(L):
        acc = c[n]
        for g, s in terms:
            if g > n:
                break
            acc -= s * c[n - g]
        c[n] = acc


def _exact_eta(entries: list[tuple[int, int]], L: int) -> list[int]:
    c = [0] * L
    c[0] = 1
    for d, e in entries:
        terms = pentagonal_terms(d, L)
        for _ in range(abs(e)):
            if e > 0:
                c = _exact_mul_sparse(c, terms)
            else:
                _exact_div_sparse(c, terms)
    return c


# ---------------------------------------------------------------------------
# series container


class CoefficientSeries:
    """Dense truncated series c[0..L-1] over a fixed ring.

    GF(2) storage is bit-packed (bit i of byte i >> 3), so coefficient
    queries are constant time and memory stays at L/8 + O(1) bytes.
    """

    __slots__ = ("ring", "truncation", "_bits", "_arr", "_list")

    def __init__(self, ring: Ring, truncation: int, data) -> None:
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        self.ring = ring
        self.truncation = truncation
        self._bits = self._arr = self._list = None
        if ring.kind == "gf2":
            if not isinstance(data, bytes):
                raise TypeError("gf2 series stores bytes")
            if len(data) != (truncation + 7) // 8:
                raise ValueError("gf2 payload length mismatch")
            self._bits = data
        elif ring.kind == "mod_pow2":
            self._arr = data
        else:
            self._list = data

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_bigint(x: int, L: int) -> "CoefficientSeries":
        return CoefficientSeries(Ring.gf2(), L, x.to_bytes((L + 7) // 8, "little"))

    @staticmethod
    def from_array(arr: np.ndarray, k: int) -> "CoefficientSeries":
        mask = (1 << k) - 1
        arr = arr & arr.dtype.type(mask)
        return CoefficientSeries(Ring.mod_pow2(k), len(arr), arr)

    @staticmethod
    def from_list(values: list[int]) -> "CoefficientSeries":
        return CoefficientSeries(Ring.exact(), len(values), values)

    # -- access ---------------------------------------------------------------

    def __len__(self) -> int:
        return self.truncation

    def coefficient(self, i: int) -> int:
        if not 0 <= i < self.truncation:
            raise IndexError(f"index {i} outside truncation {self.truncation}")
        if self._bits is not None:
            return (self._bits[i >> 3] >> (i & 7)) & 1
        if self._arr is not None:
            return int(self._arr[i])
        return self._list[i]

    def parity(self, i: int) -> int:
        if not 0 <= i < self.truncation:
            raise IndexError(f"index {i} outside truncation {self.truncation}")
        if self._bits is not None:
            return (self._bits[i >> 3] >> (i & 7)) & 1
        if self._arr is not None:
            return int(self._arr[i]) & 1
        return self._list[i] & 1

    def to_list(self, limit: int | None = None) -> list[int]:
        n = self.truncation if limit is None else min(limit, self.truncation)
        return [self.coefficient(i) for i in range(n)]

    def parity_bytes(self) -> bytes:
        """Bit-packed parities, bit i of byte i >> 3."""
        if self._bits is not None:
            return self._bits
        if self._arr is not None:
            bits = (self._arr & self._arr.dtype.type(1)).astype(np.uint8)
        else:
            bits = np.array([v & 1 for v in self._list], dtype=np.uint8)
        return np.packbits(bits, bitorder="little").tobytes()


def series_parity_at(series: CoefficientSeries, indices) -> list[int]:
    """Coefficient parities at the given indices."""
    return [series.parity(i) for i in indices]


# ---------------------------------------------------------------------------
# eta quotients


def _coerce_eta(r) -> EtaExponents:
    if isinstance(r, EtaExponents):
        return r
    return EtaExponents.from_dict(dict(r))


def eta_quotient_series(r, L: int, ring: Ring) -> CoefficientSeries:
    """The product over d | M of (q^d;q^d)_inf^(r_d), truncated at L."""
    if L < 1:
        raise ValueError("truncation must be >= 1")
    entries = _coerce_eta(r).nonzero()
    if ring.kind == "gf2":
        return CoefficientSeries.from_bigint(_gf2_eta(entries, L), L)
    if ring.kind == "mod_pow2":
        arr = _np_eta(entries, L, _mod_dtype(ring.k))
        return CoefficientSeries.from_array(arr, ring.k)
    return CoefficientSeries.from_list(_exact_eta(entries, L))


# ---------------------------------------------------------------------------
# partition series over a ResidueSet

_MODES = ("unbounded", "bounded", "signed_by_length", "signed_bounded", "length_parity_pair")


def partition_series(
    S: ResidueSet,
    L: int,
    ring: Ring,
    mode: str = "unbounded",
    k: int | None = None,
):
    """Partition counting series with parts from S.

    Modes:
      unbounded          p(S;n), parts repeat freely
      bounded            q_k(S;n), each part at most k-1 times (k >= 2)
      signed_by_length   p_e(S;n) - p_o(S;n), the product of 1/(1+q^j)
      signed_bounded     q_e(S;n) - q_o(S;n), the product of (1-q^j)
      length_parity_pair the pair (p_e(S;.), p_o(S;.)); needs a ring where
                         halving is exact (mod_pow2 with k <= 63, or exact)

    Cost is O(L * |S ∩ [1,L)|) ring operations except over GF(2), where each
    part costs O(L log L / wordsize); intended for moderate L.
    """
    if L < 1:
        raise ValueError("truncation must be >= 1")
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "bounded":
        if k is None or k < 2:
            raise ValueError("bounded mode requires k >= 2")
    elif k is not None:
        raise ValueError("k is only meaningful in bounded mode")

    if mode == "length_parity_pair":
        return _length_parity_pair(S, L, ring)

    parts = S.members(L)
    if ring.kind == "gf2":
        return _gf2_partition(parts, L, mode, k)
    if ring.kind == "mod_pow2":
        return _np_partition(parts, L, mode, k, _mod_dtype(ring.k), ring.k)
    return _exact_partition(parts, L, mode, k)


def _gf2_partition(parts, L, mode, k) -> CoefficientSeries:
    mask = (1 << L) - 1
    x = 1
    for j in parts:
        if mode == "unbounded" or mode == "signed_by_length":
            # 1/(1 +- q^j) mod 2 is the geometric chain of doubling scales
            for s in _gf2_geometric_scales(j, L):
                x = (x ^ (x << s)) & mask
        elif mode == "signed_bounded":
            x = (x ^ (x << j)) & mask
        else:
            # bounded: 1 + q^j + ... + q^(j(k-1))
            acc = 0
            for i in range(k):
                e = j * i
                if e >= L:
                    break
                acc ^= x << e
            x = acc & mask
    return CoefficientSeries.from_bigint(x, L)


def _np_partition(parts, L, mode, k, dtype, out_k) -> CoefficientSeries:
    c = np.zeros(L, dtype=dtype)
    c[0] = 1
    for j in parts:
        if mode == "unbounded":
            _np_div_sparse(c, [(j, -1)])
        elif mode == "signed_by_length":
            _np_div_sparse(c, [(j, 1)])
        elif mode == "signed_bounded":
            c = _np_mul_sparse(c, [(j, -1)])
        else:
            if j * k < L:
                c = _np_mul_sparse(c, [(j * k, -1)])
            _np_div_sparse(c, [(j, -1)])
    return CoefficientSeries.from_array(c, out_k)


def _exact_partition(parts, L, mode, k) -> CoefficientSeries:
    c = [0] * L
    c[0] = 1
    for j in parts:
        if mode == "unbounded":
            for n in range(j, L):
                c[n] += c[n - j]
        elif mode == "signed_by_length":
            for n in range(j, L):
                c[n] -= c[n - j]
        elif mode == "signed_bounded":
            nxt = c[:]
            for n in range(j, L):
                nxt[n] -= c[n - j]
            c = nxt
        else:
            if j * k < L:
                nxt = c[:]
                for n in range(j * k, L):
                    nxt[n] -= c[n - j * k]
                c = nxt
            for n in range(j, L):
                c[n] += c[n - j]
    return CoefficientSeries.from_list(c)


def _length_parity_pair(S: ResidueSet, L: int, ring: Ring):
    """(p_e, p_o) from the total and the signed series, halved exactly."""
    if ring.kind == "gf2":
        raise ValueError("length_parity_pair needs a ring where halving is exact")
    if ring.kind == "exact":
        total = partition_series(S, L, ring, "unbounded")
        signed = partition_series(S, L, ring, "signed_by_length")
        even, odd = [], []
        for t, s in zip(total._list, signed._list):
            if (t + s) % 2 or (t - s) % 2:
                raise AssertionError("parity split is not integral")
            even.append((t + s) // 2)
            odd.append((t - s) // 2)
        return CoefficientSeries.from_list(even), CoefficientSeries.from_list(odd)
    # mod 2^k: work one bit wider so the halving keeps k exact bits
    if ring.k > 63:
        raise ValueError("length_parity_pair supports mod_pow2 k <= 63")
    dtype = _mod_dtype(ring.k + 1)
    parts = S.members(L)
    total = np.zeros(L, dtype=dtype)
    total[0] = 1
    signed = np.zeros(L, dtype=dtype)
    signed[0] = 1
    for j in parts:
        _np_div_sparse(total, [(j, -1)])
        _np_div_sparse(signed, [(j, 1)])
    one = dtype(1)
    sdiff = total - signed
    ssum = total + signed
    if np.any(ssum & one) or np.any(sdiff & one):
        raise AssertionError("parity split is not integral")
    even = CoefficientSeries.from_array(ssum >> one, ring.k)
    odd = CoefficientSeries.from_array(sdiff >> one, ring.k)
    return even, odd


# ---------------------------------------------------------------------------
# the 3-regular family

# parts not divisible by 3, and the residue classes mod 24 whose partitions
# count the same as 3-regular partitions into an even number of parts
PARTS_COPRIME_TO_3 = ResidueSet.not_multiples_of(3)
S3_RESIDUES = ResidueSet.of(
    24, set(range(24)) - {0, 1, 23, 10, 14, 11, 13, 12}
)

# eta exponents: the 3-regular counting series, its even-index parity
# companion with b3(2n) = b(n) mod 2, and the length-signed 3-regular series
B3_ETA = {3: 1, 1: -1}
B_ETA = {1: 4, 3: -1}
B3_SIGNED_ETA = {1: 1, 2: -1, 3: -1, 6: 1}


class B3Family:
    """Lazy bundle of series tied to 3-regular partition parity.

    Everything is truncated at L and built on first access, so asking for
    one member never pays for the others.
    """

    def __init__(self, L: int) -> None:
        if L < 1:
            raise ValueError("truncation must be >= 1")
        self.L = L

    @cached_property
    def b3(self) -> CoefficientSeries:
        """Parity of the 3-regular partition counts."""
        return eta_quotient_series(B3_ETA, self.L, Ring.gf2())

    @cached_property
    def b(self) -> CoefficientSeries:
        """Parity of the series with b(n) = b3(2n) mod 2."""
        return eta_quotient_series(B_ETA, self.L, Ring.gf2())

    @cached_property
    def _length_pair(self) -> tuple[CoefficientSeries, CoefficientSeries]:
        # (total +- signed)/2 needs one headroom bit beyond the 1 kept
        total = _np_eta(EtaExponents.from_dict(B3_ETA).nonzero(), self.L, np.uint8)
        signed = _np_eta(
            EtaExponents.from_dict(B3_SIGNED_ETA).nonzero(), self.L, np.uint8
        )
        one = np.uint8(1)
        ssum = total + signed
        sdiff = total - signed
        if np.any(ssum & one) or np.any(sdiff & one):
            raise AssertionError("parity split is not integral")
        even = CoefficientSeries.from_array(ssum >> one, 1)
        odd = CoefficientSeries.from_array(sdiff >> one, 1)
        return even, odd

    @property
    def b3_even(self) -> CoefficientSeries:
        """Parity of the count of 3-regular partitions with evenly many parts."""
        return self._length_pair[0]

    @property
    def b3_odd(self) -> CoefficientSeries:
        """Parity of the count of 3-regular partitions with oddly many parts."""
        return self._length_pair[1]

    def a_series(self, limit: int | None = None) -> np.ndarray:
        """a(s) = #{(x, y) in N^2 : x^2 + 24 y^2 = 24 s + 1, y = 0 or 3 does not divide y}.

        Returned as a uint32 array over 0 <= s < limit. The solutions are
        enumerated by y; the x range forces x odd and coprime to 3, which is
        exactly the condition x^2 = 1 mod 24.
        """
        if limit is None:
            limit = self.L
        if limit < 1:
            raise ValueError("limit must be >= 1")
        chunks = []
        for y in range(math.isqrt(limit - 1) + 1):
            if y and y % 3 == 0:
                continue
            rem = 24 * (limit - 1) + 1 - 24 * y * y
            x = np.arange(1, math.isqrt(rem) + 1, 2, dtype=np.int64)
            x = x[x % 3 != 0]
            chunks.append((x * x - 1) // 24 + y * y)
        hits = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
        return np.bincount(hits, minlength=limit).astype(np.uint32)

    def s3_check(self, limit: int = 5000, exact_limit: int = 400) -> bool:
        """Test b3_even(n) = p(S3; n) as counts, not just parities.

        The comparison runs mod 2^63 out to `limit` and over exact integers
        out to `exact_limit`.
        """
        limit = max(2, limit)
        total = _np_eta(EtaExponents.from_dict(B3_ETA).nonzero(), limit, np.uint64)
        signed = _np_eta(
            EtaExponents.from_dict(B3_SIGNED_ETA).nonzero(), limit, np.uint64
        )
        even = ((total + signed) >> np.uint64(1)) & np.uint64((1 << 63) - 1)
        ps3 = partition_series(S3_RESIDUES, limit, Ring.mod_pow2(63))
        if not np.array_equal(even, ps3._arr):
            return False
        exact_limit = max(2, exact_limit)
        even_x, _ = partition_series(
            PARTS_COPRIME_TO_3, exact_limit, Ring.exact(), "length_parity_pair"
        )
        ps3_x = partition_series(S3_RESIDUES, exact_limit, Ring.exact())
        return even_x.to_list() == ps3_x.to_list()


def b3_family(L: int) -> B3Family:
    """Series bundle for 3-regular parity work, truncated at L."""
    return B3Family(L)
