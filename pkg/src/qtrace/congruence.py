"""Congruence and integrality checks for the prime-level trace functions.

The cusp form entering ``Q_N^{(N)}`` is found by solving the Eisenstein
congruence ``c_g(m) = sigma_N(m) (mod n_N)`` over an ingested basis of
S_2(Gamma0(N)); everything else here is coefficient-wise bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Optional, Sequence

from sympy.ntheory import factorint

from .cyclic_trace import Q1_N, QN_N, constants
from .cyclotomic import CyclotomicRing
from .modforms import E2N, LevelData, sigmaN_series
from .qseries import QSeries


class NonIntegralComparison(ValueError):
    pass


class InsolubleCongruence(ArithmeticError):
    pass


class ModuleExistenceViolated(ArithmeticError):
    pass


@dataclass(frozen=True)
class Witness:
    """Outcome of a coefficient-wise check; falsy on failure.

    ``exponent`` is the first failing q-exponent (or prime, for prime-indexed
    checks) and ``detail`` a short human-readable reason.
    """

    ok: bool
    exponent: Optional[Fraction | int] = None
    detail: str = ""
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def sturm_bound(N: int, weight: int = 2) -> int:
    return ceil(Fraction(weight * LevelData.of(N).index, 12))


def min_window(N: int) -> int:
    """Smallest verification window accepted: twice the Sturm bound."""
    return 2 * sturm_bound(N)


def series_congruent(a: QSeries, b: QSeries, m: int, skip_constant: bool = False, upto=None) -> Witness:
    """Check ``a = b (mod m)`` coefficient-wise through the common bound (or ``upto``)."""
    d = a - b
    if upto is not None:
        d = d.truncate(upto)
    checked = 0
    for e, c in zip(d.exponents(), d.coeffs):
        if skip_constant and e == 0:
            continue
        checked += 1
        if c.denominator != 1:
            raise NonIntegralComparison(f"coefficient of q^{e} is not integral in a - b: {c}")
        if c.numerator % m:
            return Witness(False, e, f"difference {c} at q^{e} is not 0 mod {m}", checked)
    return Witness(True, None, "", checked)


@dataclass(frozen=True)
class CuspBasis:
    level: int
    forms: tuple[QSeries, ...]
    bound: int

    def __post_init__(self):
        for i, f in enumerate(self.forms, 1):
            if not f.is_integral:
                raise ValueError(f"form {i} of level {self.level} has non-integral coefficients")
            if f.coeff(0) != 0:
                raise ValueError(f"form {i} of level {self.level} has a nonzero constant term")
            if f.order < self.bound + 1:
                raise ValueError(f"form {i} is shorter than the declared bound {self.bound}")

    @property
    def dim(self) -> int:
        return len(self.forms)

    def combination(self, x: Sequence[int]) -> QSeries:
        acc = QSeries.zero(self.bound + 1)
        for xi, f in zip(x, self.forms):
            if xi:
                acc = acc + f * xi
        return acc


# -- linear algebra over Z/nZ ------------------------------------------------


def _solve_prime_power(A: list[list[int]], b: list[int], p: int, k: int) -> Optional[list[int]]:
    """Solve ``A x = b (mod p^k)``; free variables are set to 0.

    Full pivoting on minimal p-adic valuation keeps every pivot dividing the
    rest of its row, so solubility reduces to divisibility of the rhs.
    """
    q = p**k
    rows = [[v % q for v in r] + [bi % q] for r, bi in zip(A, b)]
    ncols = len(A[0]) if A else 0
    cols = list(range(ncols))

    def val(v):
        if v == 0:
            return k
        e = 0
        while v % p == 0:
            v //= p
            e += 1
        return e

    pivots = []  # (row index, column position, valuation)
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(rows)):
            for j in range(c, ncols):
                v = val(rows[i][j])
                if v < k and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        rows[r], rows[i] = rows[i], rows[r]
        if j != c:
            for row in rows:
                row[c], row[j] = row[j], row[c]
            cols[c], cols[j] = cols[j], cols[c]
        piv = rows[r][c]
        unit_inv = pow(piv // p**v, -1, q)
        for i2 in range(r + 1, len(rows)):
            t = rows[i2][c]
            if t:
                f = (t // p**v) * unit_inv % q
                rows[i2] = [(x - f * y) % q for x, y in zip(rows[i2], rows[r])]
        pivots.append((r, c, v))
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] % q:
            return None
    y = [0] * ncols
    for ri, c, v in reversed(pivots):
        row = rows[ri]
        rhs = (row[-1] - sum(row[j] * y[j] for j in range(c + 1, ncols))) % q
        pv = p**v
        if rhs % pv:
            return None
        mod = p ** (k - v)
        y[c] = (rhs // pv) * pow(row[c] // pv, -1, mod) % mod
    x = [0] * ncols
    for pos, orig in enumerate(cols):
        x[orig] = y[pos]
    return x


def solve_mod(A: list[list[int]], b: list[int], n: int) -> Optional[list[int]]:
    """A solution of ``A x = b (mod n)`` with entries in [0, n), or None."""
    ncols = len(A[0]) if A else 0
    if n == 1:
        return [0] * ncols
    x = [0] * ncols
    mod = 1
    for p, k in sorted(factorint(n).items()):
        part = _solve_prime_power(A, b, p, k)
        if part is None:
            return None
        q = p**k
        # CRT: combine x (mod mod) with part (mod q)
        inv = pow(mod, -1, q)
        x = [xi + mod * ((pi - xi) * inv % q) for xi, pi in zip(x, part)]
        mod *= q
    return [xi % n for xi in x]


def solve_mod_exhaustive(A, b, n, limit: int = 10**6) -> Optional[list[int]]:
    """Brute force over (Z/nZ)^d, smallest solution in lexicographic order."""
    d = len(A[0]) if A else 0
    if n**d > limit:
        raise ValueError(f"search space {n}^{d} exceeds limit")
    for x in product(range(n), repeat=d):
        if all((sum(a * xi for a, xi in zip(row, x)) - bi) % n == 0 for row, bi in zip(A, b)):
            return list(x)
    return None


def mazur_search(N: int, basis: CuspBasis, window: int) -> tuple[QSeries, QSeries]:
    """Integral cusp form ``g`` with ``c_g(m) = sigma_N(m) (mod n_N)`` for 1 <= m < window.

    Returns ``(g, G)`` with ``G = -g``.
    """
    if basis.level != N:
        raise ValueError(f"basis has level {basis.level}, expected {N}")
    if window < min_window(N):
        raise ValueError(f"window {window} is below the minimum {min_window(N)} for level {N}")
    if window > basis.bound + 1:
        raise ValueError(f"window {window} exceeds the basis bound {basis.bound}")
    order = basis.bound + 1
    if N in (2, 3):
        z = QSeries.zero(order)
        return z, z
    n = constants(N).n_N
    sig = (sigmaN_series(N, window) - Fraction(N - 1, 24)).integer_coeffs()[1:]
    if n == 1 or basis.dim == 0:
        if n > 1 and any(s % n for s in sig):
            raise InsolubleCongruence(f"congruence system insoluble for level {N} with an empty basis")
        z = QSeries.zero(order)
        return z, z
    cols = [f.integer_coeffs() for f in basis.forms]
    A = [[cols[i][m] for i in range(basis.dim)] for m in range(1, window)]
    x = solve_mod(A, sig, n)
    if x is None:
        raise InsolubleCongruence(f"congruence system insoluble mod {n} for level {N}")
    g = basis.combination(x)
    return g, -g


def prop33_check(N: int, G: QSeries, window: int) -> Witness:
    """``l_N E_{2,N} = -N G (mod n_N)`` for exponents 0 <= m < window."""
    c = constants(N)
    lhs = E2N(N, window) * c.ell_N
    return series_congruent(lhs, G.truncate(window) * -N, c.n_N, upto=window)


def lemma34_check(N: int, G: QSeries, window: int) -> Witness:
    """``Q_N^{(N)} = Q_1^{(N)} (mod N)`` for exponents below ``window``."""
    return series_congruent(QN_N(N, G, window), Q1_N(N, window), N)


@dataclass(frozen=True)
class MultiplicityTable:
    """Multiplicities ``m_i(n)`` of the characters of Z/NZ in each graded piece."""

    N: int
    rows: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def reconstruct(self) -> tuple[list[int], list[int]]:
        """(identity trace, non-identity trace) recovered from the multiplicities."""
        fe, fo = [], []
        for n in sorted(self.rows):
            m = self.rows[n]
            if len(set(m[1:])) > 1:
                raise ValueError(f"non-trivial characters have unequal multiplicity at n={n}")
            fe.append(sum(m))
            fo.append(m[0] - (m[1] if len(m) > 1 else 0))
        return fe, fo

    def reconstruct_cyclotomic(self, power: int = 1) -> list[int]:
        """Trace of ``g^power`` computed as ``sum_i m_i zeta^(i*power)`` in Z[zeta_N]."""
        R = CyclotomicRing(self.N)
        out = []
        for n in sorted(self.rows):
            acc = R.zero
            for i, mi in enumerate(self.rows[n]):
                if mi:
                    acc = R.add(acc, R.scale(R.root(i * power), mi))
            out.append(R.to_int(acc))
        return out


def znz_multiplicities(N: int, f_identity: QSeries, f_other: QSeries, bound: int) -> MultiplicityTable:
    """Decompose a class function on Z/NZ into character multiplicities, n < bound."""
    fe = f_identity.truncate(bound).integer_coeffs()
    fo = f_other.truncate(bound).integer_coeffs()
    if len(fe) < bound or len(fo) < bound:
        raise ValueError(f"trace series are shorter than the bound {bound}")
    rows = {}
    for n in range(bound):
        m0, r0 = divmod(fe[n] + (N - 1) * fo[n], N)
        m1, r1 = divmod(fe[n] - fo[n], N)
        if r0 or r1:
            raise ModuleExistenceViolated(f"module existence violated at n={n}: multiplicities are not integers")
        rows[n] = (m0,) + (m1,) * (N - 1)
    return MultiplicityTable(N, rows)
