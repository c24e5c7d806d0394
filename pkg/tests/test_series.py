import numpy as np
import pytest

from b3parity.residues import ResidueSet
from b3parity.series import (
    B3_ETA,
    B3_SIGNED_ETA,
    B_ETA,
    CoefficientSeries,
    EtaExponents,
    PARTS_COPRIME_TO_3,
    Ring,
    S3_RESIDUES,
    b3_family,
    eta_quotient_series,
    partition_series,
    pentagonal_exponents,
    pentagonal_terms,
    series_parity_at,
)

from oracles import (
    PARTITION_LITERALS,
    THREE_REGULAR_LITERALS,
    brute_a_value,
    count_partitions,
)

L = 200


def exact_list(series):
    return series.to_list()


# ---------------------------------------------------------------------------
# pentagonal expansion


def test_pentagonal_terms():
    assert pentagonal_terms(1, 27) == [
        (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1), (22, 1), (26, 1),
    ]
    assert pentagonal_terms(3, 40) == [
        (3, -1), (6, -1), (15, 1), (21, 1), (36, -1),
    ]
    assert pentagonal_exponents(1, 27) == [0, 1, 2, 5, 7, 12, 15, 22, 26]


# ---------------------------------------------------------------------------
# ring and container validation


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring("nonsense")
    with pytest.raises(ValueError):
        Ring.mod_pow2(0)
    with pytest.raises(ValueError):
        Ring.mod_pow2(65)
    with pytest.raises(ValueError):
        Ring("gf2", k=3)
    assert Ring.mod_pow2(64).k == 64


def test_eta_exponent_validation():
    with pytest.raises(ValueError):
        EtaExponents(6, ((4, 1),))
    with pytest.raises(ValueError):
        EtaExponents(6, ((3, 1), (3, 2)))
    r = EtaExponents.from_dict({1: -1, 3: 1})
    assert r.M == 3
    assert r.as_dict() == {1: -1, 3: 1}
    assert r.weighted_sum() == 2
    assert r.exponent_sum() == 0
    assert EtaExponents.from_dict({2: 1, 3: 1}).M == 6


def test_series_container():
    s = CoefficientSeries.from_list([1, 0, 2, 5])
    assert len(s) == 4
    assert s.coefficient(3) == 5
    assert s.parity(3) == 1
    assert s.to_list(2) == [1, 0]
    with pytest.raises(IndexError):
        s.coefficient(4)
    with pytest.raises(IndexError):
        s.parity(-1)
    with pytest.raises(TypeError):
        CoefficientSeries(Ring.gf2(), 8, [1, 0])
    with pytest.raises(ValueError):
        CoefficientSeries(Ring.gf2(), 9, b"\x01")
    with pytest.raises(ValueError):
        CoefficientSeries(Ring.exact(), 0, [])


def test_gf2_bit_packing_round_trip():
    x = 0b1011001101
    s = CoefficientSeries.from_bigint(x, 10)
    assert s.to_list() == [(x >> i) & 1 for i in range(10)]
    assert int.from_bytes(s.parity_bytes(), "little") == x
    assert series_parity_at(s, [0, 2, 3, 9]) == [1, 1, 1, 1]


# ---------------------------------------------------------------------------
# eta quotients against literals and across rings


def test_partition_numbers():
    series = eta_quotient_series({1: -1}, 101, Ring.exact())
    assert series.to_list(21) == PARTITION_LITERALS
    assert series.coefficient(100) == 190569292


def test_three_regular_counts():
    series = eta_quotient_series(B3_ETA, len(THREE_REGULAR_LITERALS), Ring.exact())
    assert series.to_list() == THREE_REGULAR_LITERALS
    direct = partition_series(PARTS_COPRIME_TO_3, L, Ring.exact())
    eta = eta_quotient_series(B3_ETA, L, Ring.exact())
    assert direct.to_list() == eta.to_list()


@pytest.mark.parametrize(
    "r",
    [B3_ETA, B_ETA, B3_SIGNED_ETA, {1: 2}, {1: 1, 2: -3}, {1: -2, 6: 1}],
    ids=lambda r: str(sorted(r.items())),
)
def test_rings_agree(r):
    exact = eta_quotient_series(r, L, Ring.exact()).to_list()
    mod8 = eta_quotient_series(r, L, Ring.mod_pow2(8)).to_list()
    mod64 = eta_quotient_series(r, L, Ring.mod_pow2(64)).to_list()
    gf2 = eta_quotient_series(r, L, Ring.gf2()).to_list()
    assert mod8 == [v % 256 for v in exact]
    assert mod64 == [v % 2**64 for v in exact]
    assert gf2 == [v % 2 for v in exact]


# ---------------------------------------------------------------------------
# partition series modes against the oracle

SETS = {
    "odds": ResidueSet.odds(),
    "units-mod-6": ResidueSet.of(6, {1, 5}),
    "coprime-to-3": PARTS_COPRIME_TO_3,
    "s3-classes": S3_RESIDUES,
    "goellnitz": ResidueSet.of(6, {2, 4, 5}),
}


@pytest.mark.parametrize("name", SETS, ids=SETS.keys())
def test_unbounded_counts(name):
    S = SETS[name]
    got = partition_series(S, L, Ring.exact()).to_list()
    assert got == count_partitions(S.members(L), L)


@pytest.mark.parametrize("name", SETS, ids=SETS.keys())
@pytest.mark.parametrize("k", [2, 3, 5])
def test_bounded_counts(name, k):
    S = SETS[name]
    got = partition_series(S, L, Ring.exact(), "bounded", k=k).to_list()
    assert got == count_partitions(S.members(L), L, max_mult=k)


@pytest.mark.parametrize("name", SETS, ids=SETS.keys())
def test_signed_modes(name):
    S = SETS[name]
    by_len = partition_series(S, L, Ring.exact(), "signed_by_length").to_list()
    assert by_len == count_partitions(S.members(L), L, signed=True)
    bounded = partition_series(S, L, Ring.exact(), "signed_bounded").to_list()
    assert bounded == count_partitions(S.members(L), L, max_mult=2, signed=True)


@pytest.mark.parametrize("name", SETS, ids=SETS.keys())
def test_partition_rings_agree(name):
    S = SETS[name]
    exact = partition_series(S, L, Ring.exact()).to_list()
    mod8 = partition_series(S, L, Ring.mod_pow2(8)).to_list()
    gf2 = partition_series(S, L, Ring.gf2()).to_list()
    assert mod8 == [v % 256 for v in exact]
    assert gf2 == [v % 2 for v in exact]
    k3_exact = partition_series(S, L, Ring.exact(), "bounded", k=3).to_list()
    k3_gf2 = partition_series(S, L, Ring.gf2(), "bounded", k=3).to_list()
    assert k3_gf2 == [v % 2 for v in k3_exact]


def test_mode_validation():
    S = ResidueSet.odds()
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.exact(), "nonsense")
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.exact(), "bounded")
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.exact(), "bounded", k=1)
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.exact(), "unbounded", k=3)
    with pytest.raises(ValueError):
        partition_series(S, 0, Ring.exact())


def test_length_parity_pair():
    S = PARTS_COPRIME_TO_3
    even, odd = partition_series(S, L, Ring.exact(), "length_parity_pair")
    total = partition_series(S, L, Ring.exact())
    signed = partition_series(S, L, Ring.exact(), "signed_by_length")
    for n in range(L):
        assert even.coefficient(n) + odd.coefficient(n) == total.coefficient(n)
        assert even.coefficient(n) - odd.coefficient(n) == signed.coefficient(n)
    even1, odd1 = partition_series(S, L, Ring.mod_pow2(1), "length_parity_pair")
    assert even1.to_list() == [v % 2 for v in even.to_list()]
    assert odd1.to_list() == [v % 2 for v in odd.to_list()]
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.gf2(), "length_parity_pair")
    with pytest.raises(ValueError):
        partition_series(S, L, Ring.mod_pow2(64), "length_parity_pair")


# ---------------------------------------------------------------------------
# the 3-regular family


def test_family_doubling_identity():
    fam = b3_family(4000)
    b3 = fam.b3
    b = fam.b
    for n in range(2000):
        assert b.parity(n) == b3.parity(2 * n)


def test_family_parity_split():
    fam = b3_family(600)
    even, odd = fam.b3_even, fam.b3_odd
    b3 = eta_quotient_series(B3_ETA, 600, Ring.exact())
    signed = eta_quotient_series(B3_SIGNED_ETA, 600, Ring.exact())
    ex_even, ex_odd = partition_series(
        PARTS_COPRIME_TO_3, 600, Ring.exact(), "length_parity_pair"
    )
    for n in range(600):
        assert even.parity(n) == ex_even.coefficient(n) % 2
        assert odd.parity(n) == ex_odd.coefficient(n) % 2
        assert (even.parity(n) + odd.parity(n)) % 2 == b3.coefficient(n) % 2
        assert (even.parity(n) - odd.parity(n)) % 2 == signed.coefficient(n) % 2


def test_family_s3_identity():
    assert b3_family(2).s3_check(limit=600, exact_limit=120)


def test_a_series_matches_brute_force():
    fam = b3_family(2)
    a = fam.a_series(300)
    assert a.dtype == np.uint32
    assert [int(v) for v in a] == [brute_a_value(s) for s in range(300)]


def test_a_series_parity_tracks_b3_at_even_indices():
    fam = b3_family(1200)
    a = fam.a_series(600)
    for s in range(600):
        assert fam.b3.parity(2 * s) == int(a[s]) % 2
