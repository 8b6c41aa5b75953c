"""Named weight-2 series: E2, E_{2,N}, F2, the normalised level-N Eisenstein
series, the Mathieu function H_e and the fixed cusp forms G_N for M23 orders.

Every constructor takes ``bound`` = number of integer powers of q returned
(``q^0 .. q^(bound-1)``), except :func:`He_series` which starts at q^(-1/8).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy.ntheory import divisors, factorint, isprime

from .qseries import EtaQuotientSpec, QSeries, eta_expand, series_add, series_dilate

APPENDIX_LEVELS = (2, 3, 4, 5, 6, 7, 8, 11, 14, 15, 23)
GENUS_ZERO_APPENDIX = (2, 3, 4, 5, 6, 7, 8)


class NoAppendixForm(ValueError):
    pass


@dataclass(frozen=True)
class LevelData:
    N: int
    index: int
    totient: int

    @classmethod
    def of(cls, N: int) -> "LevelData":
        if N < 1:
            raise ValueError("level must be positive")
        idx = phi = N
        for p in factorint(N):
            idx = idx // p * (p + 1)
            phi = phi // p * (p - 1)
        return cls(N, idx, phi)


def mobius(n: int) -> int:
    f = factorint(n)
    return 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)


@lru_cache(maxsize=8)
def _sigma1(n: int) -> tuple[int, ...]:
    s = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            s[m] += d
    return tuple(s)


def sigma1(n: int) -> int:
    return sum(divisors(n))


def at_offset_zero(s: QSeries, bound: int) -> QSeries:
    """Re-express ``s`` (offset a non-negative multiple of 24) from q^0 through q^(bound-1)."""
    out = series_add(QSeries.zero(bound), s)
    if out.order < bound:
        raise ValueError(f"series only trusted through q^{out.order - 1}, asked for {bound}")
    return out.truncate(bound)


def dilated(s_of_bound, k: int, bound: int) -> QSeries:
    """``f(k tau)`` through ``bound`` where ``s_of_bound(n)`` builds ``f`` with order n."""
    return series_dilate(s_of_bound(-(-bound // k)), k).truncate(bound)


def eisenstein_E2(bound: int) -> QSeries:
    """``1 - 24 sum sigma_1(n) q^n``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    sig = _sigma1(bound)
    return QSeries._make(0, [1] + [-24 * sig[n] for n in range(1, bound)])


def E2N(N: int, bound: int) -> QSeries:
    """``(1/(i(N) phi(N))) sum_{M|N} mu(N/M) M^2 E2(M tau)``; E_{2,1} = E2."""
    ld = LevelData.of(N)
    acc = QSeries.zero(bound)
    for M in divisors(N):
        mu = mobius(N // M)
        if mu:
            acc = acc + dilated(eisenstein_E2, M, bound) * (mu * M * M)
    return acc * Fraction(1, ld.index * ld.totient)


def E2N_prime(N: int, bound: int) -> QSeries:
    """Prime-level shortcut ``(N^2 E2(N tau) - E2(tau)) / ((N+1)(N-1))``; a cross-check for :func:`E2N`."""
    if not isprime(N):
        raise ValueError(f"{N} is not prime")
    return (dilated(eisenstein_E2, N, bound) * (N * N) - eisenstein_E2(bound)) * Fraction(1, (N + 1) * (N - 1))


def F2(bound: int) -> QSeries:
    """``sum (-1)^r s q^(rs/2)`` over r > s > 0 with r - s odd.

    The sign makes ``H_e eta^3 - 48 F2 = -2 E2`` hold; without it the q^3
    coefficient is already wrong.
    """
    c = [0] * bound
    for n in range(1, bound):
        m = 2 * n
        t = 0
        s = 1
        while s * s < m:
            if m % s == 0:
                r = m // s
                if (r - s) % 2:
                    t += -s if r % 2 else s
            s += 1
        c[n] = t
    return QSeries._make(0, c)


def sigmaN_series(N: int, bound: int) -> QSeries:
    """``(1/24)(N E2(N tau) - E2(tau))``: constant (N-1)/24, then sigma_N(m)."""
    if not isprime(N):
        raise ValueError(f"{N} is not prime")
    return (dilated(eisenstein_E2, N, bound) * N - eisenstein_E2(bound)) * Fraction(1, 24)


def He_series(bound: int) -> QSeries:
    """``H_e = (-2 E2 + 48 F2) / eta^3`` from q^(-1/8) on, ``bound`` terms."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    num = eisenstein_E2(bound) * -2 + F2(bound) * 48
    return num * eta_expand({1: -3}, bound)


def _eta(factors: dict[int, int], bound: int) -> QSeries:
    return at_offset_zero(eta_expand(EtaQuotientSpec.of(factors), bound), bound)


def appendix_GN(N: int, bound: int) -> QSeries:
    """The cusp form G_N attached to an element of order N in M23.

    Levels 2..8 have no weight-2 cusp forms, so G_N = 0 there.
    """
    if N in GENUS_ZERO_APPENDIX:
        return QSeries.zero(bound)
    if N == 11:
        return _eta({1: 2, 11: 2}, bound) * 2
    if N == 14:
        return _eta({1: 1, 2: 1, 7: 1, 14: 1}, bound)
    if N == 15:
        return _eta({1: 1, 3: 1, 5: 1, 15: 1}, bound)
    if N == 23:
        return G23a(bound) + G23b(bound) * 3
    raise NoAppendixForm(f"no appendix form for N={N}")


def G23a(bound: int) -> QSeries:
    top = eta_expand({1: 3, 23: 3}, bound + 3)
    bottom = eta_expand({2: 1, 46: 1}, bound + 3)
    quot = at_offset_zero(top / bottom, bound)
    return (
        quot
        + _eta({1: 2, 23: 2}, bound) * 3
        + _eta({1: 1, 2: 1, 23: 1, 46: 1}, bound) * 4
        + _eta({2: 2, 46: 2}, bound) * 4
    )


def G23b(bound: int) -> QSeries:
    return _eta({1: 2, 23: 2}, bound)
