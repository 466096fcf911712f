from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpart.partitions import Partition, conjugate, partitions_of, schur_at_pinfty
from fatpart.symfun import (
    PowerSums,
    SchurEvaluator,
    Specialization,
    cauchy_littlewood_check,
    charmap_schur,
    elementary_schur,
    format_number,
    matrix_power_sums,
    mn_character,
    parse_number,
    phi_character,
    schur_at,
    schur_from_eigenvalues,
    schur_from_power_sums,
    schur_of_matrix,
    z_centralizer,
)

from oracles import bialternant_schur, frobenius_character, ssyt_count

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def test_parse_number():
    assert parse_number("1/2") == Fraction(1, 2)
    assert parse_number("-3") == -3
    assert parse_number("0.25") == 0.25
    assert format_number(Fraction(3, 4)) == "3/4"
    with pytest.raises(ValueError):
        parse_number("abc")


@pytest.mark.parametrize("text", ["pinf", "pa:5/2", "pa:-3", "miwa:+:1/2,1/3", "miwa:-:3/10",
                                  "scale:2:pinf", "explicit:1,0,1/2"])
def test_spec_roundtrip(text):
    s = Specialization.parse(text)
    assert str(s) == text
    assert Specialization.parse(str(s)) == s


@pytest.mark.parametrize("text", ["pa", "miwa:0.3", "miwa:*:1", "scale:x:pinf", "gauss"])
def test_spec_parse_errors(text):
    with pytest.raises(ValueError):
        Specialization.parse(text)


def test_spec_bounds():
    assert Specialization.parse("miwa:+:1/2,1/3").length_bound() == 2
    assert Specialization.parse("miwa:-:1/2").width_bound() == 1
    assert Specialization.parse("scale:2:miwa:+:1/3").length_bound() == 2
    assert Specialization.parse("pa:-3").width_bound() == 3
    assert Specialization.parse("pa:1/2").length_bound() is None
    assert Specialization.pinf().width_bound() is None


def test_complete_homogeneous_of_pinf():
    h = elementary_schur(Specialization.pinf().to_power_sums(5), 5)
    assert h == [Fraction(1, 1), 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]


@given(st.lists(rationals, min_size=1, max_size=3, unique=True), st.integers(0, 6))
@settings(max_examples=40, deadline=None)
def test_schur_matches_bialternant(xs, n):
    for lam in partitions_of(n):
        assert schur_from_eigenvalues(lam, xs) == bialternant_schur(lam.parts, xs)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_schur_at_ones_counts_tableaux(n):
    for w in range(5):
        for lam in partitions_of(w):
            assert schur_at(lam, Specialization.p_of_a(n)) == ssyt_count(lam.parts, n)


def test_schur_of_pinf():
    for w in range(7):
        for lam in partitions_of(w):
            assert schur_at(lam, Specialization.pinf()) == schur_at_pinfty(lam)


def test_float_and_exact_agree():
    xs = [Fraction(1, 3), Fraction(-2, 5), Fraction(3, 2)]
    pe = PowerSums(tuple(sum(x**k for x in xs) for k in range(1, 7)))
    pf = PowerSums(tuple(float(v) for v in pe.values))
    ee, ef = SchurEvaluator(pe), SchurEvaluator(pf)
    for lam in [Partition((2, 1)), Partition((3, 2, 1)), Partition((2, 2, 2))]:
        assert abs(float(ee(lam)) - ef(lam)) < 1e-10


def test_truncation_guard():
    with pytest.raises(ValueError):
        schur_from_power_sums(Partition((3,)), PowerSums((1, 0)))
    with pytest.raises(ValueError):
        Specialization.explicit((1,)).to_power_sums(2)


@given(st.lists(rationals, min_size=6, max_size=6))
@settings(max_examples=20, deadline=None)
def test_omega_involution(vals):
    p = PowerSums(tuple(vals))
    ev, evn = SchurEvaluator(p), SchurEvaluator(-p)
    for w in range(7):
        for lam in partitions_of(w):
            assert ev(lam) == (-1) ** w * evn(conjugate(lam))


def test_matrix_schur_exact_and_numeric():
    X = [[1, 2], [Fraction(1, 2), 3]]
    # eigenvalue-free check: s_(1,1) = det, s_(1) = trace
    assert schur_of_matrix(Partition((1, 1)), X) == 2
    assert schur_of_matrix(Partition((1,)), X) == 4
    Y = np.array([[1.0, 2.0], [0.5, 3.0]])
    assert abs(schur_of_matrix(Partition((2, 1)), Y) - float(schur_of_matrix(Partition((2, 1)), X))) < 1e-9
    with pytest.raises(ValueError):
        matrix_power_sums([[1, 2, 3]], 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_mn_matches_frobenius_formula(n):
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            assert mn_character(lam, mu) == frobenius_character(lam.parts, mu.parts)


def test_character_orthogonality():
    parts = partitions_of(6)
    for a in parts:
        for b in parts:
            s = sum(Fraction(mn_character(a, mu) * mn_character(b, mu), z_centralizer(mu)) for mu in parts)
            assert s == (1 if a == b else 0)


def test_phi_and_charmap():
    assert phi_character(Partition((2, 1)), Partition((1, 1, 1))) == 1
    with pytest.raises(ValueError):
        mn_character(Partition((2,)), Partition((1,)))
    rng = np.random.default_rng(5)
    X = [[Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for _ in range(3)] for _ in range(3)]
    for n in range(1, 6):
        for lam in partitions_of(n):
            assert charmap_schur(lam, X) == schur_of_matrix(lam, X)


def test_cauchy_littlewood_zero():
    X = [[Fraction(1, 2), 1], [Fraction(-1, 3), 2]]
    p = PowerSums((Fraction(1, 3), Fraction(-2), Fraction(1, 5), 1, 0))
    assert cauchy_littlewood_check(X, p, 5) == 0
