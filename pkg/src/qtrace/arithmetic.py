"""Point counts on elliptic curves over F_p and the divisibility of #J_0(N)(F_p).

For N in {11, 14, 15} the Jacobian J_0(N) is an elliptic curve and its
normalised newform has ``c_N(p) = p + 1 - #J_0(N)(F_p)`` at good primes.  The
integrality of the M23 trace functions forces fixed divisors of these counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy.ntheory import factorint, primerange

from .modforms import appendix_GN
from .qseries import QSeries

# level -> (divisor of #J_0(N)(F_p), normaliser of the appendix form to the newform)
DIVISIBILITY = {11: (5, 2), 14: (3, 1), 15: (4, 1)}
POINT_CHECK_LIMIT = 200


class SingularCurve(ValueError):
    pass


class BadReduction(ValueError):
    pass


@dataclass(frozen=True)
class CurveModel:
    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    level: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise SingularCurve(f"curve {self.label} is singular (zero discriminant)")
        stray = [p for p in self.bad_primes() if self.level % p]
        if stray:
            raise SingularCurve(f"curve {self.label}: bad primes {stray} do not divide the level {self.level}")

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def bad_primes(self) -> list[int]:
        return sorted(factorint(abs(self.discriminant)))


def count_points(curve: CurveModel, p: int) -> int:
    """#E(F_p) including the point at infinity, by enumeration over x."""
    if curve.discriminant % p == 0:
        raise BadReduction(f"{curve.label} has bad reduction at {p}")
    if p == 2:
        a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
        affine = sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0
        )
        return affine + 1
    b2, b4, b6, _ = curve.b_invariants
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6; roots of Y^2 = r number 1 + (r/p)
    nroots = [0] * p
    for y in range(p):
        nroots[y * y % p] += 1
    total = 1
    for x in range(p):
        total += nroots[(((4 * x + b2) * x + 2 * b4) * x + b6) % p]
    return total


def hasse_ok(p: int, count: int) -> bool:
    t = p + 1 - count
    return t * t <= 4 * p


def ap_from_series(form: QSeries, p: int, normalization: int = 1) -> int:
    """``form[p] / normalization``, required to be an integer."""
    c = form.coeff(p)
    q, r = divmod(c, normalization) if c.denominator == 1 else (None, 1)
    if r:
        raise ValueError(f"coefficient {c} of q^{p} is not divisible by the normalization {normalization}")
    return int(q)


@dataclass
class PrimeCheck:
    p: int
    c: int
    count: int
    ok: bool
    point_count: Optional[int] = None

    def line(self) -> str:
        extra = "" if self.point_count is None else f" points {self.point_count}"
        return f"p {self.p} c {self.c} count {self.count}{extra} {'pass' if self.ok else 'fail'}"


@dataclass
class DivisibilityReport:
    level: int
    divisor: int
    checked: list[PrimeCheck] = field(default_factory=list)
    excluded: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checked)

    @property
    def first_failure(self) -> Optional[int]:
        return next((c.p for c in self.checked if not c.ok), None)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checked]
        out += [f"p {p} excluded count {v}" for p, v in sorted(self.excluded.items())]
        return out


def newform_series(N: int, bound: int) -> QSeries:
    """The normalised newform of level N in {11, 14, 15}."""
    _, norm = DIVISIBILITY[N]
    return appendix_GN(N, bound) * Fraction(1, norm)


def divisibility_report(N: int, prime_bound: int, curve: Optional[CurveModel] = None) -> DivisibilityReport:
    """Check ``d | p + 1 - c_N(p)`` for good primes below ``prime_bound``.

    With a curve model, also compare the enumerated point count for p < 200.
    Primes dividing N are reported with the count ``p + 1 - c_N(p)``.
    """
    if N not in DIVISIBILITY:
        raise ValueError(f"level {N} is not one of {sorted(DIVISIBILITY)}")
    d, norm = DIVISIBILITY[N]
    G = appendix_GN(N, max(prime_bound, N + 1))
    rep = DivisibilityReport(N, d)
    for p in primerange(2, prime_bound):
        c = ap_from_series(G, p, norm)
        count = p + 1 - c
        if N % p == 0:
            rep.excluded[p] = count
            continue
        ok = count % d == 0
        pc = None
        if curve is not None and p < POINT_CHECK_LIMIT:
            pc = count_points(curve, p)
            ok = ok and pc == count and hasse_ok(p, pc)
        rep.checked.append(PrimeCheck(p, c, count, ok, pc))
    for p in factorint(N):
        if p not in rep.excluded:
            c = ap_from_series(appendix_GN(N, p + 1), p, norm)
            rep.excluded[p] = p + 1 - c
    return rep


def residue_equivalence(prime_bound: int, N: int = 11) -> "Witness":
    """``p = 4 (mod 5)`` iff ``5 | c_11(p)`` for primes p != 11 below the bound."""
    from .congruence import Witness

    if N != 11:
        raise ValueError("the residue equivalence is stated for level 11 only")
    G = appendix_GN(11, prime_bound)
    n = 0
    for p in primerange(2, prime_bound):
        if p == 11:
            continue
        c = ap_from_series(G, p, 2)
        n += 1
        if (p % 5 == 4) != (c % 5 == 0):
            return Witness(False, p, f"p={p} (mod 5 = {p % 5}) but c_11(p)={c}", n)
    return Witness(True, None, "", n)
