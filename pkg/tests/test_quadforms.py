import pytest

from b3parity.primes import prime_sieve
from b3parity.quadforms import (
    FORM_24,
    FORM_216,
    OTHER_GENUS_96,
    QuadForm,
    class_number,
    classify_prime,
    conjecture_n2_formula,
    imprimitive_decomposition,
    jacobi_symbol,
    m1,
    m2,
    mass_formulas,
    n1,
    n2,
    p_squared_witness,
    primitive_solutions_216,
    reduced_forms,
    rep_count,
    solutions,
    two_to_one_map,
)

from oracles import brute_representations, naive_prime


def test_jacobi_matches_euler_criterion():
    for p in prime_sieve(200):
        if p == 2:
            continue
        for a in range(1, p):
            expect = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
            assert jacobi_symbol(a, p) == expect
    assert jacobi_symbol(5, 1) == 1
    assert jacobi_symbol(15, 9) == 0
    with pytest.raises(ValueError):
        jacobi_symbol(3, 4)


def test_jacobi_multiplicativity():
    for n in range(1, 60, 2):
        for a in range(-10, 30):
            for b in range(-10, 30):
                assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)


def test_form_validation():
    with pytest.raises(ValueError):
        QuadForm(0, 0, 1)
    with pytest.raises(ValueError):
        QuadForm(1, 3, 1)
    assert QuadForm(1, 0, 24).discriminant() == -96
    assert QuadForm(2, 0, 3).value(1, 2) == 14


def test_reduced_forms_and_class_numbers():
    assert reduced_forms(-24) == [QuadForm(1, 0, 6), QuadForm(2, 0, 3)]
    assert reduced_forms(-96) == [
        QuadForm(1, 0, 24),
        QuadForm(3, 0, 8),
        QuadForm(4, 4, 7),
        QuadForm(5, 2, 5),
    ]
    assert class_number(-24) == 2
    assert class_number(-96) == 4
    assert class_number(-216) == 6
    assert class_number(-864) == 12
    with pytest.raises(ValueError):
        reduced_forms(-5)


def test_rep_counts_match_brute_force():
    forms = [FORM_24, FORM_216, QuadForm(3, 0, 8), QuadForm(4, 4, 7), QuadForm(5, 2, 5)]
    for form in forms:
        for w in range(1, 400):
            rc = rep_count(form, w)
            assert rc.total == brute_representations(form.a, form.b, form.c, w, False)
            assert rc.primitive == brute_representations(form.a, form.b, form.c, w, True)


def test_solutions_are_exact():
    sols = solutions(FORM_24, 25)
    assert sorted(sols) == [(-5, 0), (-1, -1), (-1, 1), (1, -1), (1, 1), (5, 0)]
    with pytest.raises(ValueError):
        solutions(FORM_24, 0)


def test_mass_formulas_match_counts():
    for w in range(1, 4000, 24):
        mf = mass_formulas(w)
        assert mf.divisor_sum_m1 == m1(w)
        assert mf.product_n96 == n1(w)
    with pytest.raises(ValueError):
        mass_formulas(5)


def test_anchor_values():
    assert (m1(25), n1(25)) == (6, 4)
    assert n2(25) == 0
    assert n2(1) == 2
    assert n2(2233) == 8


def test_imprimitive_decomposition():
    for u in (25, 49, 169, 625, 1225):
        split = imprimitive_decomposition(u)
        assert split.g * split.h * split.h == u
        assert split.sums() == (m1(u), m2(u))


def test_classifier_examples():
    # in class, with j forced by the residue
    for p, j in ((29, 8), (59, 8), (79, 4), (103, 4), (241, 1)):
        rec = classify_prime(p)
        assert rec.in_class and rec.j == j
        x, y = rec.witness
        assert x * x + 216 * y * y == j * p
    assert classify_prime(241).witness == (5, 1)
    # out of class despite an allowed residue
    for p in (5, 7, 11, 73, 97):
        assert not classify_prime(p).in_class
    # forbidden residues are never in the class
    for p in (13, 17, 19, 23, 37, 41, 43, 47):
        assert not classify_prime(p).in_class
        assert classify_prime(p).j is None
    with pytest.raises(ValueError):
        classify_prime(3)
    with pytest.raises(ValueError):
        classify_prime(15)


def test_classifier_matches_brute_force():
    for p in prime_sieve(1500):
        if p < 5:
            continue
        brute = any(
            brute_representations(1, 0, 216, j * p, True) > 0 for j in (1, 4, 8)
        )
        assert classify_prime(p).in_class == brute


def test_two_to_one_map():
    rec = classify_prime(29)
    fib = two_to_one_map(rec, 77)
    assert len(fib.big) == 8 and len(fib.small) == 4
    assert all(len(v) == 2 for v in fib.fibers.values())
    assert set(fib.fibers) == set(fib.small)
    # m = 5: both sides empty, the map is trivially a bijection of nothing
    empty = two_to_one_map(rec, 5)
    assert empty.big == () and empty.small == ()
    with pytest.raises(ValueError):
        two_to_one_map(rec, 29 * 5)
    with pytest.raises(ValueError):
        two_to_one_map(rec, 7)
    with pytest.raises(ValueError):
        two_to_one_map(classify_prime(13), 77)


def test_p_squared_witness():
    for p in (29, 59, 79, 103, 241):
        x, y = p_squared_witness(classify_prime(p))
        assert x * x + 216 * y * y == p * p
    assert p_squared_witness(classify_prime(29)) == (-25, 1)
    with pytest.raises(ValueError):
        p_squared_witness(classify_prime(13))


def test_primitive_solutions_216_symmetry():
    for target in (1, 25, 217, 2233):
        sols = primitive_solutions_216(target)
        assert len(sols) == brute_representations(1, 0, 216, target, True)
        assert all(x * x + 216 * y * y == target for x, y in sols)


def test_conjecture_formula_anchors():
    assert conjecture_n2_formula(2233) == 8
    assert conjecture_n2_formula(25, "a") == 0
    assert conjecture_n2_formula(25, "c") == 4
    assert conjecture_n2_formula(5**6, "a") == 4
    assert conjecture_n2_formula(1) == 2
    # a forbidden divisor forces zero under both readings
    assert conjecture_n2_formula(13 * 61) == 0
    with pytest.raises(ValueError):
        conjecture_n2_formula(2)
    with pytest.raises(ValueError):
        conjecture_n2_formula(25, "b")
