from fractions import Fraction

import pytest
from sympy import Matrix
from sympy.ntheory import primerange

from qtrace.ingest import load_basis
from qtrace.modforms import (
    E2N,
    E2N_prime,
    F2,
    He_series,
    LevelData,
    NoAppendixForm,
    appendix_GN,
    eisenstein_E2,
    mobius,
    sigma1,
    sigmaN_series,
)
from qtrace.qseries import eta_expand


def test_E2_coefficients():
    assert list(eisenstein_E2(7).num) == [1, -24, -72, -96, -168, -144, -288]


def test_sigma1_and_mobius():
    assert [sigma1(n) for n in range(1, 13)] == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_level_data():
    assert LevelData.of(11).index == 12
    assert LevelData.of(14).index == 24
    assert LevelData.of(14).totient == 6
    assert LevelData.of(8).index == 12


@pytest.mark.parametrize("N", list(primerange(2, 98)))
def test_mobius_sum_matches_prime_shortcut(N):
    assert E2N(N, 60) == E2N_prime(N, 60)


@pytest.mark.parametrize("N", [1, 2, 4, 6, 8, 14, 15, 23])
def test_E2N_constant_term_is_one(N):
    assert E2N(N, 5).coeff(0) == 1


def test_E2N_level_2_and_11():
    assert list(E2N(2, 5).num) == [1, 8, -8, 32, -40]
    assert E2N(11, 3).coeff(1) == Fraction(1, 5)
    assert E2N(1, 30) == eisenstein_E2(30)


def test_F2_initial_coefficients():
    assert list(F2(8).num) == [0, 1, 1, -1, 1, -1, 4, -1]


def test_dmz_identity():
    lhs = eisenstein_E2(101) * -2 + F2(101) * 48
    rhs = He_series(101) * eta_expand({1: 3}, 101)
    assert (lhs - rhs).is_zero()
    assert lhs.order == 101


def test_He_leading_terms_and_evenness():
    He = He_series(60)
    assert He.offset == -3
    assert He.coeff(Fraction(-1, 8)) == -2
    assert He.coeff(Fraction(7, 8)) == 90
    assert He.coeff(Fraction(15, 8)) == 462
    assert He.coeff(Fraction(23, 8)) == 1540
    assert all(c.denominator == 1 and c.numerator % 2 == 0 for c in He.coeffs)


def test_sigmaN_constant_and_coefficients():
    s = sigmaN_series(11, 12)
    assert s.coeff(0) == Fraction(10, 24)
    # sigma_N(m) = sigma(m) for N not dividing m
    assert [s.coeff(m) for m in range(1, 11)] == [sigma1(m) for m in range(1, 11)]
    assert s.coeff(11) == sigma1(11) - 11 * sigma1(1)


@pytest.mark.parametrize("N", [11, 14, 15, 23])
def test_appendix_forms_are_integral_cusp_forms(N):
    G = appendix_GN(N, 200)
    assert G.is_integral
    assert G.coeff(0) == 0
    assert G.order == 200


def test_appendix_forms_on_genus_zero_levels_vanish():
    for N in range(2, 9):
        assert appendix_GN(N, 10).is_zero()
    with pytest.raises(NoAppendixForm):
        appendix_GN(13, 10)


def test_appendix_G11_is_twice_the_newform():
    assert list(appendix_GN(11, 11).num) == [0, 2, -4, -2, 4, 2, 4, -4, 0, -4, -4]


def test_appendix_G23_expansion():
    assert list(appendix_GN(23, 6).num[:4]) == [0, 1, 3, -7]


def _span_rank(forms, upto):
    return Matrix([[int(f.coeff(m)) for m in range(1, upto)] for f in forms]).rank()


@pytest.mark.parametrize("N", [11, 23])
def test_appendix_forms_lie_in_ingested_span(N):
    basis = load_basis(N)
    G = appendix_GN(N, 120)
    assert _span_rank(basis.forms, 120) == basis.dim
    assert _span_rank(list(basis.forms) + [G], 120) == basis.dim
