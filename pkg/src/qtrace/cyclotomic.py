"""Exact arithmetic in Z[zeta_L] = Z[x]/(Phi_L(x)) with elements as int tuples."""
from __future__ import annotations

from functools import lru_cache

from sympy.ntheory import divisors

from .modforms import mobius


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _pdiv_exact(a, b):
    """Exact division of integer polynomials (b monic), coefficients low to high."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, v in enumerate(b):
                a[i + j] -= c * v
    if any(a):
        raise ArithmeticError("polynomial division is not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    num, den = [1], [1]
    for d in divisors(n):
        f = [-1] + [0] * (d - 1) + [1]
        mu = mobius(n // d)
        if mu == 1:
            num = _pmul(num, f)
        elif mu == -1:
            den = _pmul(den, f)
    return tuple(_pdiv_exact(num, den))


class CyclotomicRing:
    """Z[zeta_L]; ``root(j)`` is zeta_L^j."""

    def __init__(self, L: int):
        self.L = L
        self.phi = cyclotomic_poly(L)
        self.deg = len(self.phi) - 1
        self.zero = (0,) * self.deg
        self.one = self.scalar(1)
        self._roots = [self._reduce([0] * j + [1]) for j in range(L)]

    def _reduce(self, a) -> tuple[int, ...]:
        a = list(a) + [0] * max(0, self.deg - len(a))
        for i in range(len(a) - 1, self.deg - 1, -1):
            c = a[i]
            if c:
                a[i] = 0
                for j in range(self.deg):
                    a[i - self.deg + j] -= c * self.phi[j]
        return tuple(a[: self.deg])

    def scalar(self, c: int) -> tuple[int, ...]:
        return (c,) + (0,) * (self.deg - 1)

    def root(self, j: int) -> tuple[int, ...]:
        return self._roots[j % self.L]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def scale(self, a, c: int):
        return tuple(c * x for x in a)

    def mul(self, a, b):
        return self._reduce(_pmul(a, b))

    def is_rational(self, a) -> bool:
        return not any(a[1:])

    def to_int(self, a) -> int:
        if not self.is_rational(a):
            raise ArithmeticError(f"element {a} of Z[zeta_{self.L}] is not rational")
        return a[0]
