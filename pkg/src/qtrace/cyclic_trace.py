"""Trace functions built from E_{2,N} and cusp forms.

Three families:

* ``Q_M23(N)`` -- the weight-2 trace function of an order-N element of M23,
  ``-2 E_{2,N} + (N/d_N) G_N`` with the fixed eta-product G_N.
* ``f_g^{(N)}`` -- for N prime, ``Q1_N`` on the identity and ``QN_N`` on the
  other elements, with a cusp form G satisfying the Eisenstein congruence.
* ``F_g^{(N)}`` -- the purely Eisenstein pair ``-l_N E2``, ``-l_N E_{2,N}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy.ntheory import isprime

from .modforms import E2N, appendix_GN, eisenstein_E2
from .qseries import QSeries

M23_ORDERS = (1, 2, 3, 4, 5, 6, 7, 8, 11, 14, 15, 23)
# denominator of the cusp-form multiple N/d in Q_M23.  For the prime orders
# this is num((N-1)/12); for 14 and 15 that numerator (13, 7) does not give
# integral coefficients and the integral choices are 3 and 4.
M23_CUSP_DENOMINATOR = {11: 5, 14: 3, 15: 4, 23: 11}


class CongruenceViolation(ArithmeticError):
    """A cusp form that does not make the trace function integral."""


@dataclass(frozen=True)
class MoonshineConstants:
    N: int
    n_N: int
    ell_N: int


def constants(N: int) -> MoonshineConstants:
    """``n_N = num((N-1)/12)`` and ``l_N = num((N^2-1)/24)``.

    Both numerators vanish at N = 1; they are set to 1 there so that
    ``Q_M23(1) = -2 E2`` is well formed.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return MoonshineConstants(1, 1, 1)
    return MoonshineConstants(N, Fraction(N - 1, 12).numerator, Fraction(N * N - 1, 24).numerator)


def _require_prime(N: int):
    if not isprime(N):
        raise ValueError(f"N={N} must be prime")


def Q_M23(N: int, bound: int) -> QSeries:
    if N not in M23_ORDERS:
        raise ValueError(f"{N} is not the order of an element of M23")
    e = E2N(N, bound) * -2
    if N not in M23_CUSP_DENOMINATOR:
        return e
    return e + appendix_GN(N, bound) * Fraction(N, M23_CUSP_DENOMINATOR[N])


def QN_N(N: int, G: QSeries, bound: int) -> QSeries:
    """``(-l_N E_{2,N} - N G) / n_N``; must come out integral."""
    _require_prime(N)
    c = constants(N)
    out = (E2N(N, bound) * -c.ell_N - G * N) * Fraction(1, c.n_N)
    if out.order < bound:
        raise ValueError(f"cusp form G is only known through q^{out.order - 1}")
    if out.den != 1:
        bad = next(e for e, x in zip(out.exponents(), out.coeffs) if x.denominator != 1)
        raise CongruenceViolation(
            f"cusp form violates the Eisenstein congruence mod {c.n_N}: coefficient of q^{bad} is {out.coeff(bad)}"
        )
    return out


def Q1_N(N: int, bound: int) -> QSeries:
    _require_prime(N)
    c = constants(N)
    return eisenstein_E2(bound) * Fraction(-c.ell_N, c.n_N)


def f_g(N: int, is_identity: bool, G: Optional[QSeries], bound: int) -> QSeries:
    if is_identity:
        return Q1_N(N, bound)
    if G is None:
        raise ValueError("the non-identity trace function needs a cusp form G")
    return QN_N(N, G, bound)


def F_g(N: int, is_identity: bool, bound: int) -> QSeries:
    _require_prime(N)
    ell = constants(N).ell_N
    return (eisenstein_E2(bound) if is_identity else E2N(N, bound)) * -ell


FLAVORS = ("M23", "cyclic_with_cusp", "cyclic_eisenstein")


@dataclass(frozen=True)
class TraceFunctionSet:
    N: int
    identity_series: QSeries
    nonidentity_series: QSeries
    flavor: str
    cusp_form_used: Optional[QSeries] = None

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        for name in ("identity_series", "nonidentity_series"):
            s = getattr(self, name)
            if not s.is_integral:
                raise CongruenceViolation(f"{name} of {self.flavor} N={self.N} is not integral")
        c = constants(self.N)
        if self.flavor != "M23":
            want = Fraction(-c.ell_N, c.n_N) if self.flavor == "cyclic_with_cusp" else -c.ell_N
            if self.identity_series.coeff(0) != want:
                raise ValueError("identity series has the wrong constant term")


def trace_functions(N: int, flavor: str, bound: int, G: Optional[QSeries] = None) -> TraceFunctionSet:
    """Assemble the (identity, non-identity) pair of one family."""
    if flavor == "M23":
        return TraceFunctionSet(N, Q_M23(1, bound), Q_M23(N, bound), flavor, appendix_GN(N, bound) if N != 1 else None)
    if flavor == "cyclic_with_cusp":
        return TraceFunctionSet(N, f_g(N, True, G, bound), f_g(N, False, G, bound), flavor, G)
    return TraceFunctionSet(N, F_g(N, True, bound), F_g(N, False, bound), flavor)
