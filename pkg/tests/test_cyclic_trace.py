from fractions import Fraction
from math import gcd

import pytest
from sympy.ntheory import primerange

from qtrace.congruence import mazur_search
from qtrace.cyclic_trace import (
    M23_ORDERS,
    CongruenceViolation,
    F_g,
    Q1_N,
    Q_M23,
    QN_N,
    TraceFunctionSet,
    constants,
    trace_functions,
)
from qtrace.ingest import load_basis
from qtrace.modforms import E2N, appendix_GN, eisenstein_E2
from qtrace.qseries import QSeries

PRIMES = list(primerange(2, 98))


@pytest.mark.parametrize(
    "N, n, ell",
    [(1, 1, 1), (2, 1, 1), (3, 1, 1), (5, 1, 1), (7, 1, 2), (11, 5, 5), (13, 1, 7), (23, 11, 22), (37, 3, 57)],
)
def test_constants(N, n, ell):
    c = constants(N)
    assert (c.n_N, c.ell_N) == (n, ell)


@pytest.mark.parametrize("N", PRIMES)
def test_constant_invariants_for_primes(N):
    c = constants(N)
    assert c.n_N == Fraction(N - 1, 12).numerator
    assert gcd(c.n_N, N) == 1
    if N > 3:
        assert c.ell_N * 24 == N * N - 1
    else:
        assert c.ell_N == 1


def test_Q_M23_identity_is_minus_two_E2():
    assert Q_M23(1, 50) == eisenstein_E2(50) * -2


@pytest.mark.parametrize("N", M23_ORDERS)
def test_Q_M23_is_integral(N):
    s = Q_M23(N, 300)
    assert s.is_integral
    assert s.coeff(0) == -2


def test_Q_M23_examples():
    assert Q_M23(11, 5).coeff(1) == 4
    assert Q_M23(5, 40) == E2N(5, 40) * -2


def test_literal_numerator_is_not_integral_at_14_and_15():
    # num((N-1)/12) is 13 and 7 here; the integral denominators are 3 and 4
    for N in (14, 15):
        n = constants(N).n_N
        s = E2N(N, 10) * -2 + appendix_GN(N, 10) * Fraction(N, n)
        assert not s.is_integral


def test_Q_M23_rejects_other_orders():
    with pytest.raises(ValueError):
        Q_M23(9, 10)


def test_QN_N_with_positive_newform_is_rejected():
    newform = appendix_GN(11, 40) * Fraction(1, 2)
    with pytest.raises(CongruenceViolation):
        QN_N(11, newform, 40)


def test_QN_N_with_searched_form_is_integral():
    _, G = mazur_search(11, load_basis(11), 24)
    s = QN_N(11, G, 200)
    assert s.is_integral
    assert s.coeff(0) == -1


def test_QN_N_level_2():
    s = QN_N(2, QSeries.zero(30), 30)
    assert s == E2N(2, 30) * -1
    assert list(s.num[:4]) == [-1, -8, 8, -32]


def test_Q1_and_F_constant_terms():
    assert Q1_N(23, 5).coeff(0) == -2
    assert F_g(7, True, 5).coeff(0) == -2
    assert F_g(7, False, 5).coeff(0) == -2


@pytest.mark.parametrize("N", PRIMES)
def test_Q1_N_is_integral(N):
    assert Q1_N(N, 100).is_integral


def test_trace_function_sets():
    _, G = mazur_search(11, load_basis(11), 24)
    t = trace_functions(11, "cyclic_with_cusp", 50, G)
    assert t.identity_series.coeff(0) == -1
    e = trace_functions(11, "cyclic_eisenstein", 50)
    assert e.identity_series.coeff(0) == -5
    m = trace_functions(23, "M23", 50)
    assert m.cusp_form_used == appendix_GN(23, 50)
    with pytest.raises(ValueError):
        trace_functions(11, "other", 50)


def test_trace_function_set_checks_integrality():
    with pytest.raises(CongruenceViolation):
        TraceFunctionSet(11, QSeries.constant(Fraction(1, 2), 3), QSeries.zero(3), "M23")
