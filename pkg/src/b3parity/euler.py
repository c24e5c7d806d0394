"""Euler pairs, the digit-expansion bijection, the parity-reversing
involution, and mod-2 identities for bounded-multiplicity partitions.

A pair (S1, S2) is an Euler pair of order k when q_k(S1; n) = p(S2; n) for
all n, which happens exactly when k*S1 is contained in S1 and S2 = S1 minus
k*S1. All series checks here run over exact integers or GF(2) through the
series module; combinatorial maps operate on explicit part tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

from b3parity.residues import ResidueSet
from b3parity.series import Ring, eta_quotient_series, partition_series


def _as_partition(parts) -> tuple[int, ...]:
    t = tuple(sorted(parts, reverse=True))
    if any(p < 1 for p in t):
        raise ValueError("parts must be positive integers")
    return t


def length_in_doubled(parts, S1: ResidueSet) -> int:
    """l2: the number of parts lying in 2*S1."""
    return sum(1 for p in parts if p % 2 == 0 and S1.contains(p // 2))


# ---------------------------------------------------------------------------
# Euler pair verdicts


@dataclass(frozen=True)
class EulerPairVerdict:
    structural: bool
    numeric: bool

    @property
    def is_pair(self) -> bool:
        return self.structural and self.numeric


def euler_pair_check(
    S1: ResidueSet, S2: ResidueSet, k: int, limit: int
) -> EulerPairVerdict:
    """Check k*S1 in S1 and S2 = S1 minus k*S1 elementwise below limit, and
    the counting identity q_k(S1; n) = p(S2; n) for n < limit."""
    if k < 2:
        raise ValueError("order must be >= 2")
    structural = all(S1.contains(k * j) for j in S1.members((limit + k - 1) // k))
    for n in range(1, limit):
        in_shifted = n % k == 0 and S1.contains(n // k)
        if S2.contains(n) != (S1.contains(n) and not in_shifted):
            structural = False
            break
    bounded = partition_series(S1, limit, Ring.exact(), "bounded", k=k)
    plain = partition_series(S2, limit, Ring.exact())
    numeric = bounded.to_list() == plain.to_list()
    return EulerPairVerdict(structural, numeric)


# ---------------------------------------------------------------------------
# the digit-expansion bijection between p(S2; n) and q_k(S1; n) objects


def glaisher_map(parts, S1: ResidueSet, k: int) -> tuple[int, ...]:
    """Expand multiplicities in base k: a part j taken mu times becomes
    parts j*k^i, each d_i times, where mu = sum of d_i k^i. Sends partitions
    with parts in S2 to partitions with parts in S1, every multiplicity
    below k."""
    parts = _as_partition(parts)
    out: list[int] = []
    for j in set(parts):
        mu = parts.count(j)
        scale = j
        while mu:
            mu, digit = divmod(mu, k)
            out.extend([scale] * digit)
            scale *= k
    result = _as_partition(out)
    if any(not S1.contains(p) for p in result):
        raise ValueError("image escapes S1; the pair is not an Euler pair of this order")
    return result


def glaisher_inverse(parts, S1: ResidueSet, k: int) -> tuple[int, ...]:
    """Merge each part x = j * k^i down to k^i copies of its root j, the
    unique ancestor of x outside k*S1. Requires all multiplicities < k."""
    parts = _as_partition(parts)
    for j in set(parts):
        if parts.count(j) >= k:
            raise ValueError("multiplicity bound violated")
        if not S1.contains(j):
            raise ValueError("parts must lie in S1")
    out: list[int] = []
    for x in parts:
        copies = 1
        while x % k == 0 and S1.contains(x // k):
            x //= k
            copies *= k
        out.extend([x] * copies)
    return _as_partition(out)


# ---------------------------------------------------------------------------
# weighted-parity reversal


@dataclass(frozen=True)
class WeightedVerdict:
    reversal: bool
    alternating: bool | None


def _has_even_member(S: ResidueSet, probe: int) -> bool:
    return any(m % 2 == 0 for m in S.members(probe))


def weighted_identities(
    S1: ResidueSet, S2: ResidueSet, limit: int, check_alternating: bool = True
) -> WeightedVerdict:
    """Check q_e(S2;n) - q_o(S2;n) = p_e(S1;n) - p_o(S1;n) as exact integers,
    and optionally the alternating form (-1)^n q(S2;n) for S2 inside the odd
    numbers; an even member of S2 rejects that branch."""
    lhs = partition_series(S2, limit, Ring.exact(), "signed_bounded")
    rhs = partition_series(S1, limit, Ring.exact(), "signed_by_length")
    reversal = lhs.to_list() == rhs.to_list()
    alternating = None
    if check_alternating:
        probe = max(limit, 2 * S2.modulus + 2)
        if _has_even_member(S2, probe):
            raise ValueError("alternating form needs S2 inside the odd numbers")
        q = partition_series(S2, limit, Ring.exact(), "bounded", k=2)
        alternating = all(
            (-1) ** n * q.coefficient(n) == rhs.coefficient(n) for n in range(limit)
        )
    return WeightedVerdict(reversal, alternating)


# ---------------------------------------------------------------------------
# the parity-reversing involution


def gupta_involution(parts, S1: ResidueSet) -> tuple[int, ...]:
    """Merge two copies of the largest repeated part r into 2r when 2r > e,
    else split the largest part e from 2*S1 into two halves. Defined on
    partitions with parts in S1 having a repeated part or a part in 2*S1;
    flips the parity of l2."""
    parts = _as_partition(parts)
    if any(not S1.contains(p) for p in parts):
        raise ValueError("parts must lie in S1")
    r = 0
    for p in set(parts):
        if parts.count(p) >= 2:
            r = max(r, p)
    e = 0
    for p in parts:
        if p % 2 == 0 and S1.contains(p // 2):
            e = max(e, p)
    if r == 0 and e == 0:
        raise ValueError("fixed-point domain violation")
    work = list(parts)
    if 2 * r > e:
        work.remove(r)
        work.remove(r)
        work.append(2 * r)
    else:
        if e % 2:
            raise AssertionError("largest doubled part is odd")
        work.remove(e)
        work.extend([e // 2, e // 2])
    result = _as_partition(work)
    if any(not S1.contains(p) for p in result):
        raise AssertionError("involution image escapes S1")
    return result


# ---------------------------------------------------------------------------
# overpartitions


@dataclass(frozen=True)
class OverPartition:
    """A partition with a subset of its distinct part values overlined."""

    parts: tuple[int, ...]
    overlined: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", _as_partition(self.parts))
        if not self.overlined <= set(self.parts):
            raise ValueError("overlined values must occur as parts")


# ---------------------------------------------------------------------------
# mod-2 congruences


@dataclass(frozen=True)
class Mod2Verdict:
    distinct_bounded: bool | None
    overpartition: bool | None


def _gf2_bits(series) -> int:
    return int.from_bytes(series.parity_bytes(), "little")


def mod2_theorems(
    r: int,
    limit: int,
    S1: ResidueSet | None = None,
) -> Mod2Verdict:
    """Two congruences for bounded-multiplicity counts.

    With r odd: q_r(N; n) = q(odds not divisible by r; n) mod 2.
    With S1 given and (S1, S1 minus r*S1) an Euler pair of order r:
    q_r(S1; n) agrees mod 2 with the overpartition count generated by
    prod over i in r*S1 of (1 + q^i) times prod over i in S1 of 1/(1 - q^i),
    where overlined parts come from r*S1.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if r < 1:
        raise ValueError("r must be positive")
    distinct_bounded = None
    if r % 2 == 1 and r > 1:
        q_r = eta_quotient_series({r: 1, 1: -1}, limit, Ring.gf2())
        odd_no_r = ResidueSet.odds().without_multiples(r)
        q_odd = partition_series(odd_no_r, limit, Ring.gf2(), "bounded", k=2)
        distinct_bounded = q_r.to_list() == q_odd.to_list()

    overpartition = None
    if S1 is not None:
        lhs = partition_series(S1, limit, Ring.gf2(), "bounded", k=r)
        base = partition_series(S1, limit, Ring.gf2())
        mask = (1 << limit) - 1
        acc = _gf2_bits(base) & mask
        for i in S1.scaled(r).members(limit):
            acc = (acc ^ (acc << i)) & mask
        overpartition = acc == _gf2_bits(lhs) & mask
    return Mod2Verdict(distinct_bounded, overpartition)


# canonical pairs: Schur (order 2), Subbarao (order 3), Goellnitz (order 2)
SCHUR_S1 = ResidueSet.of(3, {1, 2})
SCHUR_S2 = ResidueSet.of(6, {1, 5})
SUBBARAO_S1 = ResidueSet.odds()
SUBBARAO_S2 = ResidueSet.of(6, {1, 5})
GOELLNITZ_S1 = ResidueSet.of(6, {2, 4, 5})
GOELLNITZ_S2 = ResidueSet.of(12, {2, 5, 11})
