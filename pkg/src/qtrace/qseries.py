"""Exact truncated q-series on the exponent lattice (1/24)Z.

A :class:`QSeries` is ``q^(offset/24) * sum_i c_i q^i`` for ``0 <= i < order``
with exact rational ``c_i``.  Every series in this package (eta powers,
Eisenstein series, the weight-1/2 ``q^(-1/8)`` expansions) lives on a single
coset ``offset + 24Z`` of the lattice, so coefficients are stored densely at
integer steps from the offset.  The truncation is part of the value: a series
is trusted for lattice exponents ``< offset + 24*order`` and every operation
propagates the smallest bound of its operands.

Coefficients are held as integer numerators over one positive common
denominator, which keeps convolutions in machine-free integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

LATTICE = 24


class NonUnitSeries(ZeroDivisionError):
    """Inversion or negative power of a series with zero leading coefficient."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


@dataclass(frozen=True, eq=True)
class QSeries:
    """Truncated series ``q^(offset/24) * sum(num[i]/den * q^i)``.

    Construct through :func:`series` or the class helpers; the raw
    constructor expects an already-normalised numerator tuple.
    """

    offset: int
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    # -- construction -----------------------------------------------------

    @classmethod
    def _make(cls, offset: int, num: Sequence[int], den: int = 1) -> "QSeries":
        g = den
        for c in num:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        return cls(offset, tuple(num), den)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, offset: int = 0) -> "QSeries":
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls._make(offset, [c.numerator * (den // c.denominator) for c in fr], den)

    @classmethod
    def zero(cls, order: int, offset: int = 0) -> "QSeries":
        return cls(offset, (0,) * order, 1)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        if order < 1:
            return cls(0, (), 1)
        c = _as_fraction(c)
        return cls._make(0, (c.numerator,) + (0,) * (order - 1), c.denominator)

    @classmethod
    def monomial(cls, exponent, order: int, coeff=1) -> "QSeries":
        """``coeff * q^exponent`` trusted for ``order`` integer steps."""
        off = lattice_units(exponent)
        c = _as_fraction(coeff)
        return cls._make(off, (c.numerator,) + (0,) * (order - 1), c.denominator)

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        """Number of trusted integer steps beyond the offset."""
        return len(self.num)

    @property
    def bound(self) -> int:
        """Exclusive lattice bound: trusted for exponents ``< bound/24``."""
        return self.offset + LATTICE * len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def is_integral(self) -> bool:
        return self.den == 1 and self.offset % LATTICE == 0

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(self.offset, LATTICE)

    def exponents(self) -> list[Fraction]:
        return [Fraction(self.offset + LATTICE * i, LATTICE) for i in range(len(self.num))]

    def coeff(self, exponent) -> Fraction:
        """Coefficient of ``q^exponent``; reading past the bound is an error."""
        u = lattice_units(exponent)
        if u >= self.bound:
            raise IndexError(f"q^{exponent} is beyond the truncation bound q^{Fraction(self.bound, 24)}")
        d = u - self.offset
        if d < 0 or d % LATTICE:
            return Fraction(0)
        return Fraction(self.num[d // LATTICE], self.den)

    def integer_coeffs(self) -> list[int]:
        """Coefficients as ints (raises if any is non-integral)."""
        if self.den != 1:
            bad = next(i for i, c in enumerate(self.num) if c % self.den)
            raise ValueError(f"coefficient of q^{self.exponents()[bad]} is not an integer")
        return list(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def valuation(self) -> Fraction | None:
        for i, c in enumerate(self.num):
            if c:
                return Fraction(self.offset + LATTICE * i, LATTICE)
        return None

    def truncate(self, exponent_bound) -> "QSeries":
        """Keep only exponents strictly below ``exponent_bound``."""
        u = lattice_units(exponent_bound)
        n = max(0, min(len(self.num), -(-(u - self.offset) // LATTICE)))
        return QSeries._make(self.offset, self.num[:n], self.den)

    def __repr__(self) -> str:
        return f"QSeries({format_series(self, terms=6)}, order={self.order})"

    def __str__(self) -> str:
        return format_series(self)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, tuple(-c for c in self.num), self.den)

    def __add__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return series_add(self, other)
        if isinstance(other, (int, Rational)):
            return series_add(self, QSeries.constant(other, max(1, self.bound // LATTICE)))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (QSeries, int, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Rational)):
            return series_scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return series_mul(self, series_invert(other))
        if isinstance(other, (int, Rational)):
            return series_scale(self, 1 / _as_fraction(other))
        return NotImplemented

    def __pow__(self, e: int) -> "QSeries":
        return series_pow(self, e)


def lattice_units(exponent) -> int:
    """``24 * exponent`` as an int; rejects exponents off the 1/24 lattice."""
    x = _as_fraction(exponent) * LATTICE
    if x.denominator != 1:
        raise ValueError(f"exponent {exponent} is not on the (1/24)Z lattice")
    return x.numerator


def series(coeffs: Iterable, offset=0) -> QSeries:
    """Build a series from coefficients of ``q^offset, q^(offset+1), ...``.

    ``offset`` is a q-exponent (int or Fraction), not lattice units.
    """
    return QSeries.from_coeffs(coeffs, lattice_units(offset))


def format_series(s: QSeries, terms: int | None = None) -> str:
    parts = []
    shown = 0
    for e, c in zip(s.exponents(), s.coeffs):
        if not c:
            continue
        if terms is not None and shown >= terms:
            parts.append("...")
            break
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}" if e.denominator == 1 else f"q^({e})")
        if mono and abs(c) == 1:
            cs = "-" if c < 0 else ""
        else:
            cs = str(c)
        parts.append(cs + ("*" if mono and cs not in ("", "-") else "") + mono)
        shown += 1
    body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    b = Fraction(s.bound, LATTICE)
    return f"{body} + O(q^{b if b.denominator == 1 else f'({b})'})"


def _align(a: QSeries, b: QSeries):
    if (a.offset - b.offset) % LATTICE:
        raise ValueError(
            f"series on different lattice cosets (offsets {a.offset}/24 and {b.offset}/24) cannot be combined"
        )
    off = min(a.offset, b.offset)
    bound = min(a.bound, b.bound)
    n = max(0, (bound - off) // LATTICE)
    return off, n


def _window(s: QSeries, off: int, n: int, scale: int) -> list[int]:
    shift = (s.offset - off) // LATTICE
    out = [0] * n
    for i, c in enumerate(s.num):
        j = i + shift
        if j >= n:
            break
        out[j] = c * scale
    return out


def series_add(a: QSeries, b: QSeries) -> QSeries:
    off, n = _align(a, b)
    den = _lcm(a.den, b.den)
    x = _window(a, off, n, den // a.den)
    y = _window(b, off, n, den // b.den)
    return QSeries._make(off, [u + v for u, v in zip(x, y)], den)


def series_scale(a: QSeries, r) -> QSeries:
    r = _as_fraction(r)
    return QSeries._make(a.offset, [c * r.numerator for c in a.num], a.den * r.denominator)


def _convolve(x: Sequence[int], y: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    if len(x) > len(y):
        x, y = y, x
    for i, u in enumerate(x[:n]):
        if u:
            for j, v in enumerate(y[: n - i], i):
                out[j] += u * v
    return out


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.order, b.order)
    return QSeries._make(a.offset + b.offset, _convolve(a.num, b.num, n), a.den * b.den)


def series_dilate(a: QSeries, k: int) -> QSeries:
    """Substitute ``q -> q^k``."""
    if k < 1:
        raise ValueError("dilation factor must be a positive integer")
    if k == 1:
        return a
    out = [0] * (k * len(a.num))
    out[::k] = a.num
    return QSeries(a.offset * k, tuple(out), a.den)


def series_D(a: QSeries) -> QSeries:
    """The operator ``q d/dq``."""
    return QSeries._make(
        a.offset,
        [c * (a.offset + LATTICE * i) for i, c in enumerate(a.num)],
        a.den * LATTICE,
    )


def _unit_power(num: Sequence[int], e: int) -> list:
    """``(sum num[i] q^i)^e`` for ``num[0] != 0`` via the J.C.P. Miller recurrence.

    Integer in, integer out when ``num[0]`` is +-1; Fractions otherwise.
    """
    n = len(num)
    a0 = num[0]
    if a0 in (1, -1):
        g = [a0 ** abs(e)] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if num[j]:
                    acc += ((e + 1) * j - k) * num[j] * g[k - j]
            q, r = divmod(acc, k)
            if r:
                raise ArithmeticError("inexact division in power recurrence")
            g[k] = q * a0
        return g
    g = [Fraction(a0) ** e] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        acc = sum(((e + 1) * j - k) * num[j] * g[k - j] for j in range(1, k + 1) if num[j])
        g[k] = Fraction(acc) / (k * a0)
    return g


def series_pow(a: QSeries, e: int) -> QSeries:
    if not isinstance(e, int):
        raise TypeError("only integer powers are supported")
    if e == 0:
        return QSeries.one(a.order)
    if e == 1:
        return a
    if not a.num or a.num[0] == 0:
        if e < 0:
            raise NonUnitSeries("non-unit series")
        out = a
        for _ in range(e - 1):
            out = series_mul(out, a)
        return out
    g = _unit_power(a.num, e)
    res = QSeries._make(a.offset * e, g) if a.num[0] in (1, -1) else QSeries.from_coeffs(g, a.offset * e)
    return series_scale(res, Fraction(1, a.den) ** e) if a.den != 1 else res


def series_invert(a: QSeries) -> QSeries:
    """Multiplicative inverse through the bound; offset is negated."""
    if not a.num or a.num[0] == 0:
        raise NonUnitSeries("non-unit series")
    return series_pow(a, -1)


# -- eta quotients ---------------------------------------------------------


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod eta(k tau)^e`` over ``factors``; normalised (sorted, merged, e != 0)."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for k, e in self.factors:
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"eta dilation must be a positive integer, got {k!r}")
            merged[k] = merged.get(k, 0) + int(e)
        object.__setattr__(self, "factors", tuple(sorted((k, e) for k, e in merged.items() if e)))

    @classmethod
    def of(cls, mapping: dict[int, int] | Iterable[tuple[int, int]]) -> "EtaQuotientSpec":
        items = mapping.items() if isinstance(mapping, dict) else mapping
        return cls(tuple(items))

    @property
    def leading_units(self) -> int:
        """Leading exponent in lattice units, ``sum k*e``."""
        return sum(k * e for k, e in self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    def __mul__(self, other: "EtaQuotientSpec") -> "EtaQuotientSpec":
        return EtaQuotientSpec(self.factors + other.factors)

    def __truediv__(self, other: "EtaQuotientSpec") -> "EtaQuotientSpec":
        return self * other ** -1

    def __pow__(self, n: int) -> "EtaQuotientSpec":
        return EtaQuotientSpec(tuple((k, e * n) for k, e in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        num = [f"eta({'' if k == 1 else k}t)" + (f"^{e}" if e != 1 else "") for k, e in self.factors if e > 0]
        den = [f"eta({'' if k == 1 else k}t)" + (f"^{-e}" if e != -1 else "") for k, e in self.factors if e < 0]
        s = "*".join(num) or "1"
        return s + ("/" + "*".join(den) if den else "")


def euler_product(order: int) -> list[int]:
    """Coefficients of ``prod_{n>=1} (1 - q^n)`` below ``q^order`` (pentagonal theorem)."""
    out = [0] * order
    k = 0
    while True:
        hit = False
        for m in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if m < order:
                out[m] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def eta_expand(spec: EtaQuotientSpec | dict | Iterable, bound: int) -> QSeries:
    """Expand an eta quotient, trusted for ``bound`` integer steps past its leading term."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec.of(spec)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    acc = [1] + [0] * (bound - 1)
    base = euler_product(bound)
    for k, e in spec.factors:
        m = -(-bound // k)
        g = _unit_power(base[:m], e)
        dil = [0] * bound
        dil[::k] = g[: len(dil[::k])]
        acc = _convolve(acc, dil, bound)
    return QSeries._make(spec.leading_units, acc, 1)
