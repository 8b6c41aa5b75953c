from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtrace.qseries import (
    EtaQuotientSpec,
    NonUnitSeries,
    QSeries,
    eta_expand,
    euler_product,
    format_series,
    series,
    series_D,
    series_dilate,
    series_invert,
    series_pow,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def qseries(draw, min_len=1, max_len=12, unit=False, coset=0):
    coeffs = draw(st.lists(small, min_size=min_len, max_size=max_len))
    if unit and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    shift = draw(st.integers(-2, 2))
    return QSeries.from_coeffs(coeffs, coset + 24 * shift)


def naive_euler(n):
    """prod_{k<n} (1 - q^k) by repeated polynomial multiplication."""
    p = [1] + [0] * (n - 1)
    for k in range(1, n):
        p = [p[i] - (p[i - k] if i >= k else 0) for i in range(n)]
    return p


@given(qseries(), qseries())
def test_addition_and_multiplication_commute(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(qseries(), qseries(), qseries())
@settings(max_examples=50)
def test_ring_associativity_and_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == (a * b) + (a * c)


@given(qseries())
def test_negation_is_additive_inverse(a):
    assert (a - a).is_zero()
    assert -(-a) == a


@given(qseries(), qseries())
def test_leibniz_rule(a, b):
    assert series_D(a * b) == series_D(a) * b + a * series_D(b)


@given(qseries(), st.integers(1, 4), st.integers(1, 4))
def test_dilation_composes(a, j, k):
    assert series_dilate(series_dilate(a, j), k) == series_dilate(a, j * k)


@given(qseries(), qseries(), st.integers(1, 4))
def test_dilation_is_multiplicative(a, b, k):
    assert series_dilate(a * b, k) == series_dilate(a, k) * series_dilate(b, k)


@given(qseries(unit=True))
def test_inverse(a):
    one = a * series_invert(a)
    assert one == QSeries.one(a.order)


@given(qseries(unit=True, max_len=8), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=50)
def test_power_law(a, m, n):
    assert series_pow(a, m) * series_pow(a, n) == series_pow(a, m + n)


def test_zero_leading_coefficient_is_not_invertible():
    with pytest.raises(NonUnitSeries):
        series_invert(series([0, 1, 2]))
    with pytest.raises(NonUnitSeries):
        series([0, 1]) ** -1


def test_different_cosets_cannot_be_added():
    with pytest.raises(ValueError, match="cosets"):
        series([1, 2]) + QSeries.monomial(Fraction(1, 8), 2)


def test_coefficient_beyond_bound_is_an_error():
    s = series([1, 2, 3])
    assert s.coeff(2) == 3
    assert s.coeff(-5) == 0
    with pytest.raises(IndexError):
        s.coeff(3)
    with pytest.raises(ValueError):
        s.coeff(Fraction(1, 5))


def test_bound_is_minimum_of_operands():
    a, b = series([1] * 10), series([1] * 4)
    assert (a + b).order == 4
    assert (a * b).order == 4
    # a is trusted below q^10, the monomial below q^11; the product below q^11
    assert (a * QSeries.monomial(1, 10)).bound == 24 * 11


def test_fractional_offsets_multiply():
    a = QSeries.monomial(Fraction(-1, 8), 5, 2)
    b = QSeries.monomial(Fraction(1, 8), 5)
    assert (a * b) == QSeries.constant(2, 5)


def test_euler_product_matches_naive_product():
    assert euler_product(80) == naive_euler(80)


def test_eta_cubed_against_jacobi_identity():
    # eta^3 = sum (-1)^n (2n+1) q^{(2n+1)^2/8} = q^{1/8} sum (-1)^n (2n+1) q^{n(n+1)/2}
    s = eta_expand({1: 3}, 60)
    expect = [0] * 60
    n = 0
    while n * (n + 1) // 2 < 60:
        expect[n * (n + 1) // 2] = (-1) ** n * (2 * n + 1)
        n += 1
    assert s.offset == 3
    assert list(s.num) == expect


def test_eta_cubed_against_term_by_term_product():
    e = naive_euler(40)
    cube = [sum(e[i] * e[j] * e[k - i - j] for i in range(k + 1) for j in range(k + 1 - i)) for k in range(40)]
    assert list(eta_expand({1: 3}, 40).num) == cube


def test_eta_dilation():
    for k, e in ((2, 3), (5, -2), (11, 2)):
        direct = eta_expand({k: e}, 40)
        base = eta_expand({1: e}, 40)
        assert direct.offset == k * e
        assert list(direct.num) == list(series_dilate(base, k).num[:40])


def test_reciprocal_eta_is_partition_generating_function():
    assert list(eta_expand({1: -1}, 11).num) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_discriminant_gives_ramanujan_tau():
    assert list(eta_expand({1: 24}, 8).num) == [1, -24, 252, -1472, 4830, -6048, -16744, 84480]


def test_eta_quotient_spec_normalises():
    s = EtaQuotientSpec.of({2: 16, 1: -8}) * EtaQuotientSpec.of({1: 8})
    assert s == EtaQuotientSpec.of({2: 16})
    assert EtaQuotientSpec.of({1: 1, 5: -5}).leading_units == -24
    assert EtaQuotientSpec.of({1: 8, 2: -16}).weight == -4
    assert str(EtaQuotientSpec.of({1: 8, 2: -16})) == "eta(t)^8/eta(2t)^16"
    with pytest.raises(ValueError):
        EtaQuotientSpec.of({0: 1})


def test_D_on_leading_monomial():
    d = series_D(eta_expand({1: -24}, 5))
    assert d.leading_exponent == -1
    assert d.coeff(-1) == -1
    assert d.coeff(0) == 0


def test_format_series():
    assert format_series(series([1, -2, 0, 3])) == "1 - 2*q + 3*q^3 + O(q^4)"
    assert format_series(QSeries.monomial(Fraction(-1, 8), 2, -2)) == "-2*q^(-1/8) + O(q^(15/8))"
    assert format_series(QSeries.zero(3)) == "0 + O(q^3)"


def test_truncate_and_integral_flags():
    s = series([Fraction(1, 2), 1, 2, 3])
    assert not s.is_integral
    assert s.truncate(2).order == 2
    assert (s * 2).integer_coeffs() == [1, 2, 4, 6]
    with pytest.raises(ValueError):
        s.integer_coeffs()
