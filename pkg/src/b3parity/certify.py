"""Finite certification of eta-quotient congruences on arithmetic progressions.

An instance bundles a progression step m, an eta exponent vector r over the
divisors of M, a level N, a residue t, and a modulus u. When the instance
passes six admissibility conditions and all coset slopes are nonnegative,
checking c_r(mn + t') = 0 mod u for n up to an explicit bound floor(nu) and
all t' in the residue orbit of t certifies the congruence for every n.

Everything here is exact integer or rational arithmetic; the only numpy use
is vectorizing argmin scans whose winner is re-verified with Python ints.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from b3parity.primes import factorize
from b3parity.series import (
    B_ETA,
    CoefficientSeries,
    EtaExponents,
    Ring,
    eta_quotient_series,
)

CERTIFIED = "CERTIFIED"
VIOLATED = "VIOLATED"
INAPPLICABLE = "INAPPLICABLE"

# the standard instance family: progressions of the series with
# c(n) = b3(2n) mod 2, at step m = p^2 and level N = 3p
TABLE_PRIMES = (29, 59, 79, 103, 223, 227, 241, 251, 269, 293, 337, 419, 443, 487)


@dataclass(frozen=True)
class CertInstance:
    m: int
    M: int
    N: int
    t: int
    r: EtaExponents
    u: int = 2
    a: EtaExponents | None = None

    def __post_init__(self) -> None:
        if self.m < 1 or self.M < 1 or self.N < 1 or self.u < 2:
            raise ValueError("m, M, N must be positive and u >= 2")
        if not 0 <= self.t < self.m:
            raise ValueError("t must lie in [0, m)")
        if self.r.M != self.M:
            raise ValueError("r must be indexed by divisors of M")
        if self.a is not None and self.N % self.a.M:
            raise ValueError("a must be indexed by divisors of N")

    @property
    def kappa(self) -> int:
        return math.gcd(1 - self.m * self.m, 24)

    @property
    def two_adic_split(self) -> tuple[int, int]:
        """(s, ell) with prod of delta^|r_delta| = 2^s * ell, ell odd."""
        prod = 1
        for d, e in self.r.nonzero():
            prod *= d ** abs(e)
        s = (prod & -prod).bit_length() - 1
        return s, prod >> s

    def aux_exponents(self) -> EtaExponents:
        return self.a if self.a is not None else EtaExponents(self.N, ())


def standard_instance(p: int, t: int) -> CertInstance:
    return CertInstance(m=p * p, M=3, N=3 * p, t=t, r=EtaExponents.from_dict(B_ETA))


# ---------------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class AdmissibilityReport:
    conditions: tuple[bool, ...]

    @property
    def admissible(self) -> bool:
        return all(self.conditions)

    def failed(self) -> list[int]:
        return [i + 1 for i, ok in enumerate(self.conditions) if not ok]


def admissibility_check(inst: CertInstance) -> AdmissibilityReport:
    """The six arithmetic conditions gating the certification lemma.

    Condition 6 applies only to even m; its statement contains a free symbol
    in the source material, so even m is rejected as out of scope rather
    than silently judged.
    """
    if inst.m % 2 == 0:
        raise ValueError("even m is out of scope for the admissibility test")
    kappa = inst.kappa
    rs = inst.r.nonzero()
    sum_r = sum(e for _, e in rs)
    sum_dr = sum(d * e for d, e in rs)

    c1 = all(inst.N % p == 0 for p in factorize(inst.m))
    c2 = all((inst.m * inst.N) % d == 0 for d, _ in rs)
    c3 = c2 and (kappa * inst.N * sum(e * (inst.m * inst.N // d) for d, e in rs)) % 24 == 0
    c4 = (kappa * inst.N * sum_r) % 8 == 0
    g = math.gcd(kappa * (-24 * inst.t - sum_dr), 24 * inst.m)
    c5 = inst.N % (24 * inst.m // g) == 0
    c6 = True
    return AdmissibilityReport((c1, c2, c3, c4, c5, c6))


# ---------------------------------------------------------------------------
# residue orbits


@lru_cache(maxsize=32)
def unit_square_residues(modulus: int) -> tuple[int, ...]:
    """Squares of units modulo `modulus`, ascending."""
    if modulus == 1:
        return (0,)
    x = np.arange(1, modulus, dtype=np.int64)
    units = x[np.gcd(x, modulus) == 1]
    return tuple(np.unique(units * units % modulus).tolist())


def residue_orbit(m: int, r: EtaExponents, t: int) -> frozenset[int]:
    """{t*s + (s-1)/24 * sum(delta r_delta) mod m : s a unit square mod 24m}.

    Unit squares mod 24m are 1 mod 24, so the division is exact.
    """
    if not 0 <= t < m:
        raise ValueError("t must lie in [0, m)")
    w = r.weighted_sum()
    s = np.array(unit_square_residues(24 * m), dtype=np.int64)
    vals = (t * s + (s - 1) // 24 * w) % m
    return frozenset(np.unique(vals).tolist())


# ---------------------------------------------------------------------------
# cosets and slopes


@dataclass(frozen=True)
class CosetRep:
    """The matrix (1, 0; delta, 1), one per divisor delta of a squarefree level."""

    delta: int

    @property
    def matrix(self) -> tuple[int, int, int, int]:
        return (1, 0, self.delta, 1)


@dataclass(frozen=True)
class CosetData:
    reps: tuple[CosetRep, ...]
    index: int


def coset_data(N: int) -> CosetData:
    """Double-coset representatives and the subgroup index at level N."""
    fact = factorize(N)
    if any(e > 1 for e in fact.values()):
        raise ValueError("level must be squarefree")
    index = N
    divs = [1]
    for p in sorted(fact):
        index = index // p * (p + 1)
        divs += [d * p for d in divs]
    return CosetData(tuple(CosetRep(d) for d in sorted(divs)), index)


@dataclass(frozen=True)
class SlopePair:
    p_mr: Fraction
    p_star: Fraction


def _slope_min_exact(inst: CertInstance, rep: CosetRep) -> Fraction:
    a_m, c = 1, rep.delta
    best = None
    for d in range(inst.m):
        val = sum(
            Fraction(e * math.gcd(delta * (a_m + inst.kappa * d * c), inst.m * c) ** 2, delta)
            for delta, e in inst.r.nonzero()
        )
        if best is None or val < best:
            best = val
    return best / (24 * inst.m)


def slopes(inst: CertInstance, rep: CosetRep) -> SlopePair:
    """Exact coset slope pair; the d-scan is vectorized with an int64
    headroom guard and falls back to rationals when the guard fails."""
    c = rep.delta
    mc = inst.m * c
    entries = inst.r.nonzero()
    weight_bound = sum(abs(e) * (inst.M // d) for d, e in entries) * mc * mc
    arg_bound = max(
        (d * (1 + inst.kappa * (inst.m - 1) * c) for d, _ in entries), default=0
    )
    if not entries:
        p_mr = Fraction(0)
    elif weight_bound < 2**62 and arg_bound < 2**62:
        d_arr = np.arange(inst.m, dtype=np.int64)
        base = 1 + inst.kappa * c * d_arr
        total = np.zeros(inst.m, dtype=np.int64)
        for delta, e in entries:
            g = np.gcd(delta * base, mc)
            total += (inst.M // delta) * e * g * g
        d_star = int(total.argmin())
        exact = sum(
            (inst.M // delta) * e
            * math.gcd(delta * (1 + inst.kappa * d_star * c), mc) ** 2
            for delta, e in entries
        )
        if exact != int(total[d_star]):
            raise AssertionError("vectorized slope scan disagrees with exact recompute")
        p_mr = Fraction(exact, 24 * inst.m * inst.M)
    else:
        p_mr = _slope_min_exact(inst, rep)
    p_star = sum(
        (Fraction(e * math.gcd(d, c) ** 2, d) for d, e in inst.aux_exponents().nonzero()),
        Fraction(0),
    ) / 24
    return SlopePair(p_mr, p_star)


# ---------------------------------------------------------------------------
# the bound


@dataclass(frozen=True)
class NuBound:
    nu: Fraction
    floor_nu: int
    t_min: int


def nu_bound(inst: CertInstance) -> NuBound:
    index = coset_data(inst.N).index
    orbit = residue_orbit(inst.m, inst.r, inst.t)
    t_min = min(orbit)
    aux = inst.aux_exponents()
    nu = (
        Fraction((aux.exponent_sum() + inst.r.exponent_sum()) * index - aux.weighted_sum(), 24)
        - Fraction(inst.r.weighted_sum(), 24 * inst.m)
        - Fraction(t_min, inst.m)
    )
    return NuBound(nu, math.floor(nu), t_min)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class InstanceVerdict:
    status: str
    instance: CertInstance
    reasons: tuple[str, ...] = ()
    floor_nu: int | None = None
    orbit: tuple[int, ...] = ()
    checked: int = 0
    violations: tuple[tuple[int, int, int], ...] = ()


def required_truncation(inst: CertInstance) -> int:
    """Series length needed to run the finite check for this instance."""
    bound = nu_bound(inst)
    orbit = residue_orbit(inst.m, inst.r, inst.t)
    if bound.floor_nu < 0:
        return 1
    return inst.m * bound.floor_nu + max(orbit) + 1


def _ring_for_modulus(u: int) -> Ring:
    if u == 2:
        return Ring.gf2()
    if u & (u - 1) == 0:
        return Ring.mod_pow2(u.bit_length() - 1)
    return Ring.exact()


def verify_instance(
    inst: CertInstance, series: CoefficientSeries | None = None
) -> InstanceVerdict:
    """Run the finite check; CERTIFIED means the congruence holds for all n.

    A prebuilt series for the same exponent vector may be passed to share
    one long expansion across many instances; it must be long enough.
    """
    report = admissibility_check(inst)
    if not report.admissible:
        reasons = tuple(f"condition {i} failed" for i in report.failed())
        return InstanceVerdict(INAPPLICABLE, inst, reasons)
    try:
        cosets = coset_data(inst.N)
    except ValueError as exc:
        return InstanceVerdict(INAPPLICABLE, inst, (str(exc),))
    for rep in cosets.reps:
        pair = slopes(inst, rep)
        if pair.p_mr + pair.p_star < 0:
            return InstanceVerdict(
                INAPPLICABLE, inst, (f"negative slope at coset delta={rep.delta}",)
            )
    bound = nu_bound(inst)
    orbit = tuple(sorted(residue_orbit(inst.m, inst.r, inst.t)))
    needed = 1 if bound.floor_nu < 0 else inst.m * bound.floor_nu + orbit[-1] + 1
    if series is None:
        series = eta_quotient_series(inst.r, needed, _ring_for_modulus(inst.u))
    elif series.truncation < needed:
        raise ValueError(
            f"series truncation {series.truncation} < required {needed}"
        )
    violations = []
    checked = 0
    for tp in orbit:
        for n in range(bound.floor_nu + 1):
            checked += 1
            c = series.coefficient(inst.m * n + tp)
            if c % inst.u:
                violations.append((n, tp, c % inst.u))
                if len(violations) >= 16:
                    break
        if len(violations) >= 16:
            break
    status = VIOLATED if violations else CERTIFIED
    return InstanceVerdict(
        status, inst, (), bound.floor_nu, orbit, checked, tuple(violations)
    )


# ---------------------------------------------------------------------------
# the table


@dataclass(frozen=True)
class TableRow:
    p: int
    t0: int
    alpha_excluded: int
    A: int
    nu_floor: int

    def as_dict(self) -> dict[str, int]:
        return {
            "p": self.p,
            "t0": self.t0,
            "alpha_excluded": self.alpha_excluded,
            "A": self.A,
            "nu_floor": self.nu_floor,
        }


@dataclass(frozen=True)
class TableReport:
    computed: tuple[TableRow, ...]
    expected: tuple[TableRow, ...]

    @property
    def mismatches(self) -> tuple[tuple[TableRow, TableRow], ...]:
        return tuple(
            (c, e) for c, e in zip(self.computed, self.expected) if c != e
        )

    @property
    def matches(self) -> bool:
        return not self.mismatches


def expected_table() -> tuple[TableRow, ...]:
    blob = resources.files("b3parity").joinpath("data/certification_table.json")
    rows = json.loads(blob.read_text())
    return tuple(TableRow(**row) for row in rows)


def progression_offset(p: int) -> int:
    """The residue t0 with 24 t0 = -1 mod p, represented in [1, p-1]."""
    return (-pow(24, -1, p)) % p


def compute_table_row(p: int) -> TableRow:
    """Recompute one row: offset, excluded residue, the smallest second
    orbit multiplier A covering all admissible residues, and the bound."""
    m = p * p
    r = EtaExponents.from_dict(B_ETA)
    t0 = progression_offset(p)
    alpha_ex = p // 24
    target = frozenset(
        p * alpha + t0 for alpha in range(p) if alpha != alpha_ex
    )
    orbit0 = residue_orbit(m, r, t0)
    if not orbit0 <= target:
        raise AssertionError(f"base orbit escapes the progression set for p = {p}")
    A = None
    for cand in range(1, p):
        if cand == alpha_ex:
            continue
        if orbit0 | residue_orbit(m, r, cand * p + t0) == target:
            A = cand
            break
    if A is None:
        raise AssertionError(f"no second orbit multiplier found for p = {p}")
    b0 = nu_bound(standard_instance(p, t0))
    b1 = nu_bound(standard_instance(p, A * p + t0))
    if b0.floor_nu != b1.floor_nu:
        raise AssertionError(f"orbit bounds disagree for p = {p}")
    return TableRow(p, t0, alpha_ex, A, b0.floor_nu)


def certification_table(primes: tuple[int, ...] = TABLE_PRIMES) -> TableReport:
    """Recompute every table row and diff against the stored fixture."""
    computed = tuple(compute_table_row(p) for p in primes)
    expected = tuple(row for row in expected_table() if row.p in set(primes))
    return TableReport(computed, expected)
