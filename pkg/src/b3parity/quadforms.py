"""Binary quadratic forms and Diophantine representation counting.

Counting is pure integer enumeration over the short variable: for a form
(a, b, c) of discriminant D < 0 and target w, any solution has
(2ax + by)^2 = 4aw - |D| y^2, so |y| <= sqrt(4aw/|D|) and x follows by a
square test. No reduction theory enters the counts, which keeps the closed
formulas checked elsewhere genuinely independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from b3parity.primes import factorize, divisors, is_prime, squarefree_decomposition


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; (a/1) = 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# forms and representation counts


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a <= 0 or self.discriminant() >= 0:
            raise ValueError("form must be positive definite")

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def reduced_forms(D: int) -> list[QuadForm]:
    """All primitive reduced positive forms of discriminant D, sorted by (a, b, c)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and 0 or 1 mod 4")
    forms = []
    for a in range(1, math.isqrt(-D // 3) + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            form = QuadForm(a, b, c)
            if form.is_reduced() and form.is_primitive():
                forms.append(form)
    return sorted(forms, key=lambda f: (f.a, f.b, f.c))


def class_number(D: int) -> int:
    return len(reduced_forms(D))


@dataclass(frozen=True)
class RepCount:
    target: int
    total: int
    primitive: int


def solutions(form: QuadForm, w: int) -> list[tuple[int, int]]:
    """All integer pairs (x, y) with form(x, y) = w."""
    if w <= 0:
        raise ValueError("target must be positive")
    a, b = form.a, form.b
    absD = -form.discriminant()
    out = []
    ymax = math.isqrt(4 * a * w // absD)
    for y in range(-ymax, ymax + 1):
        rhs = 4 * a * w - absD * y * y
        if rhs < 0:
            continue
        s = math.isqrt(rhs)
        if s * s != rhs:
            continue
        for sign in ((s, -s) if s else (0,)):
            num = sign - b * y
            if num % (2 * a) == 0:
                out.append((num // (2 * a), y))
    return out


def rep_count(form: QuadForm, w: int) -> RepCount:
    sols = solutions(form, w)
    primitive = sum(1 for x, y in sols if math.gcd(x, y) == 1)
    return RepCount(w, len(sols), primitive)


# the four genus representatives of discriminant -96, and the -24 pair
FORM_24 = QuadForm(1, 0, 24)
FORM_216 = QuadForm(1, 0, 216)
FORM_6 = QuadForm(1, 0, 6)
FORM_2_3 = QuadForm(2, 0, 3)
OTHER_GENUS_96 = (QuadForm(3, 0, 8), QuadForm(4, 4, 7), QuadForm(5, 2, 5))


def m1(w: int) -> int:
    return rep_count(FORM_24, w).total


def n1(w: int) -> int:
    return rep_count(FORM_24, w).primitive


def m2(w: int) -> int:
    return rep_count(FORM_216, w).total


def n2(w: int) -> int:
    return rep_count(FORM_216, w).primitive


def n3(w: int) -> int:
    return rep_count(FORM_6, w).primitive


def n4(w: int) -> int:
    return rep_count(FORM_2_3, w).primitive


@dataclass(frozen=True)
class MassFormulas:
    w: int
    divisor_sum_m1: int
    product_n96: int


def mass_formulas(w: int) -> MassFormulas:
    """Closed forms valid for w = 1 mod 24: M1 as a divisor sum, N1 as a product."""
    if w % 24 != 1:
        raise ValueError("formulas hold only for w = 1 mod 24")
    div_sum = 2 * sum(jacobi_symbol(-6, d) for d in divisors(w))
    prod = 2
    for p in factorize(w):
        prod *= 1 + jacobi_symbol(-6, p)
    return MassFormulas(w, div_sum, prod)


@dataclass(frozen=True)
class ImprimitiveSplit:
    u: int
    g: int
    h: int
    terms: tuple[tuple[int, ...], tuple[int, ...]]

    def sums(self) -> tuple[int, int]:
        return tuple(sum(t) for t in self.terms)


def imprimitive_decomposition(u: int) -> ImprimitiveSplit:
    """Split M_i(u) = sum over d | h of N_i(g d^2) where u = g h^2, g squarefree.

    Verified against the directly counted M_i(u) for both forms; a mismatch
    is a counting bug, not a data condition.
    """
    g, h = squarefree_decomposition(u)
    terms1 = tuple(n1(g * d * d) for d in divisors(h))
    terms2 = tuple(n2(g * d * d) for d in divisors(h))
    split = ImprimitiveSplit(u, g, h, (terms1, terms2))
    if split.sums() != (m1(u), m2(u)):
        raise AssertionError(f"imprimitive decomposition failed for u = {u}")
    return split


# ---------------------------------------------------------------------------
# the prime classifier

# residue class mod 24 -> the only j in {1, 4, 8} that can admit a primitive
# solution of x^2 + 216 y^2 = j p (j = 1 forces p = 1, j = 4 forces p = 7,
# j = 8 forces p = 5 or 11; classes 13, 17, 19, 23 admit none)
_J_FOR_RESIDUE = {1: 1, 7: 4, 5: 8, 11: 8}


@dataclass(frozen=True)
class PrimeClassRecord:
    p: int
    in_class: bool
    j: int | None
    witness: tuple[int, int] | None
    residue: int


def _primitive_witness(target: int) -> tuple[int, int] | None:
    """Lexicographically first primitive (x >= 0, y >= 0) with x^2 + 216 y^2 = target."""
    for y in range(math.isqrt(target // 216) + 1):
        rhs = target - 216 * y * y
        x = math.isqrt(rhs)
        if x * x == rhs and math.gcd(x, y) == 1:
            return (x, y)
    return None


def classify_prime(p: int) -> PrimeClassRecord:
    """Decide whether x^2 + 216 y^2 = j p has a primitive solution for some
    j in {1, 4, 8}, searching only the single j the residue of p allows."""
    if p in (2, 3) or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    residue = p % 24
    j = _J_FOR_RESIDUE.get(residue)
    if j is None:
        return PrimeClassRecord(p, False, None, None, residue)
    witness = _primitive_witness(j * p)
    if witness is None:
        return PrimeClassRecord(p, False, None, None, residue)
    x1, _ = witness
    if j == 8:
        # 2-adic constraint on any primitive witness of 8p
        v2 = (x1 & -x1).bit_length() - 1
        ok = v2 == 2 if residue == 5 else v2 >= 3
        if not ok:
            raise AssertionError(f"2-adic constraint failed for p = {p}, witness {witness}")
    return PrimeClassRecord(p, True, j, witness, residue)


@lru_cache(maxsize=None)
def classify_prime_cached(p: int) -> PrimeClassRecord:
    return classify_prime(p)


def primitive_solutions_216(target: int) -> list[tuple[int, int]]:
    """All primitive (x, y) in Z^2 with x^2 + 216 y^2 = target."""
    out = []
    for y in range(math.isqrt(target // 216) + 1):
        rhs = target - 216 * y * y
        x = math.isqrt(rhs)
        if x * x != rhs or math.gcd(x, y) != 1:
            continue
        ys = (y, -y) if y else (0,)
        xs = (x, -x) if x else (0,)
        out.extend((sx, sy) for sx in xs for sy in ys)
    return out


@dataclass(frozen=True)
class FiberStructure:
    p: int
    m: int
    j: int
    big: tuple[tuple[int, int], ...]
    small: tuple[tuple[int, int], ...]
    fibers: dict[tuple[int, int], tuple[tuple[int, int], ...]]


def two_to_one_map(record: PrimeClassRecord, m: int) -> FiberStructure:
    """The two-to-one surjection from primitive solutions of x^2+216y^2 = pm
    onto primitive solutions of a^2+216b^2 = jm, built from a witness for jp.

    Every structural claim is asserted: the case split is exclusive, the
    image is integral, primitive, and on target, every fiber has exactly two
    points, and the map is onto.
    """
    if not record.in_class:
        raise ValueError("record must certify class membership")
    p, j = record.p, record.j
    if m < 1 or m % p == 0 or (p * m) % 24 != 1:
        raise ValueError("need m >= 1, p not dividing m, and pm = 1 mod 24")
    x1, y1 = record.witness
    big = primitive_solutions_216(p * m)
    small = primitive_solutions_216(j * m)
    small_set = set(small)
    fibers: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for x, y in big:
        minus = (x1 * x - 216 * y1 * y) % p == 0
        plus = (x1 * x + 216 * y1 * y) % p == 0
        if minus == plus:
            raise AssertionError(f"case split not exclusive at {(x, y)}")
        if minus:
            num_a, num_b = x1 * x - 216 * y1 * y, x1 * y + y1 * x
        else:
            num_a, num_b = x1 * x + 216 * y1 * y, x1 * y - y1 * x
        if num_a % p or num_b % p:
            raise AssertionError(f"image not integral at {(x, y)}")
        a, b = num_a // p, num_b // p
        if a * a + 216 * b * b != j * m or math.gcd(a, b) != 1:
            raise AssertionError(f"image off target at {(x, y)}")
        if (a, b) not in small_set:
            raise AssertionError(f"image {(a, b)} missing from enumeration")
        fibers.setdefault((a, b), []).append((x, y))
    if set(fibers) != small_set or any(len(v) != 2 for v in fibers.values()):
        raise AssertionError(f"fibers are not uniformly of size 2 for p={p}, m={m}")
    return FiberStructure(
        p, m, j, tuple(big), tuple(small),
        {k: tuple(v) for k, v in fibers.items()},
    )


def p_squared_witness(record: PrimeClassRecord) -> tuple[int, int]:
    """A primitive solution of x^2 + 216 y^2 = p^2 derived from the jp witness."""
    if not record.in_class:
        raise ValueError("record must certify class membership")
    x1, y1 = record.witness
    j, p = record.j, record.p
    num_x, num_y = x1 * x1 - 216 * y1 * y1, 2 * x1 * y1
    if num_x % j or num_y % j:
        raise AssertionError("witness construction not integral")
    xp, yp = num_x // j, num_y // j
    if xp * xp + 216 * yp * yp != p * p or math.gcd(xp, yp) != 1:
        raise AssertionError("constructed pair is not a primitive solution")
    return (xp, yp)


# ---------------------------------------------------------------------------
# conjectured closed form for the primitive count of x^2 + 216 y^2 = m

FORBIDDEN_RESIDUES = frozenset({13, 17, 19, 23})
B_INTERPRETATIONS = ("a", "c")


def conjecture_n2_formula(m: int, interpretation: str = "a") -> int:
    """Predicted primitive-solution count for x^2 + 216 y^2 = m, m = 1 mod 24.

    Factor m into class members p_i^(a_i) and non-members q_i^(b_i). With
    k and n the two counts of distinct primes, the prediction is
    2^(B+k) * (2^(n-B+1) + 4*(-1)^(n-B)) / 3, and 0 whenever some prime
    divisor is in a residue class 13, 17, 19, 23 mod 24.

    B counts exponents b_i in a selectable congruence class: interpretation
    "a" reads b_i = 0 mod 3, interpretation "c" reads b_i = 0 mod 2. The
    source statement is ambiguous; the scanner decides empirically.
    """
    if m < 1 or m % 24 != 1:
        raise ValueError("m must be a positive integer = 1 mod 24")
    if interpretation not in B_INTERPRETATIONS:
        raise ValueError(f"unknown interpretation {interpretation!r}")
    k = n = B = 0
    modulus = 3 if interpretation == "a" else 2
    for q, e in factorize(m).items():
        if q % 24 in FORBIDDEN_RESIDUES:
            return 0
        if classify_prime_cached(q).in_class:
            k += 1
        else:
            n += 1
            if e % modulus == 0:
                B += 1
    num = (1 << (B + k)) * ((1 << (n - B + 1)) + 4 * (-1) ** (n - B))
    if num % 3:
        raise AssertionError(f"formula value not integral at m = {m}")
    return num // 3
