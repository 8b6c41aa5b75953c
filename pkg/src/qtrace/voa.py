"""Graded traces of the Heisenberg / Clifford / Heisenberg tensor product.

The purely Eisenstein trace functions ``F_g^{(N)}`` are realised as

    D(tr(gamma | V)) * tr(sigma p(0) | A_tw) * tr(1 | U)

where V is a Heisenberg Fock space on which ``gamma`` acts with a given frame
shape, A_tw a product of plus-twisted free-fermion modules permuted by a
cycle shape ``sigma``, and U an untwisted Heisenberg factor.  Each factor is
an eta quotient; the brute-force oracles here recompute the first two from
explicit bases so the eta identities are tested rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator

from sympy.ntheory import isprime

from .cyclic_trace import F_g, constants
from .cyclotomic import CyclotomicRing
from .qseries import EtaQuotientSpec, QSeries, eta_expand, series_D

BRUTE_DEGREE_LIMIT = 25


class DegreeGuardExceeded(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FrameShape:
    """``prod_k (x^k - 1)^{e_k}``, the characteristic polynomial of an automorphism.

    Negative exponents are allowed (``{N: N, 1: -1}`` is ``(x^N-1)^N/(x-1)``).
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: dict[int, int] = {}
        for k, e in self.entries:
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"cycle length must be a positive integer, got {k!r}")
            merged[k] = merged.get(k, 0) + int(e)
        object.__setattr__(self, "entries", tuple(sorted((k, e) for k, e in merged.items() if e)))

    @classmethod
    def of(cls, mapping: dict[int, int]) -> "FrameShape":
        return cls(tuple(mapping.items()))

    @property
    def degree(self) -> int:
        return sum(k * e for k, e in self.entries)

    @property
    def order(self) -> int:
        return lcm(*(k for k, _ in self.entries)) if self.entries else 1

    def __str__(self) -> str:
        return " ".join(f"{k}^{e}" for k, e in self.entries) or "1"


@dataclass(frozen=True)
class CycleShape:
    """Cycle type of a permutation of tensor factors (sorted lengths)."""

    cycles: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(k, int) or k < 1 for k in self.cycles):
            raise ValueError("cycle lengths must be positive integers")
        object.__setattr__(self, "cycles", tuple(sorted(self.cycles)))

    @classmethod
    def power(cls, k: int, count: int) -> "CycleShape":
        return cls((k,) * count)

    @property
    def size(self) -> int:
        return sum(self.cycles)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self.cycles:
            out[k] = out.get(k, 0) + 1
        return out

    def __str__(self) -> str:
        return " ".join(f"{k}^{c}" for k, c in sorted(self.counts().items())) or "1"


@dataclass(frozen=True)
class VOAConfig:
    N: int
    heisenberg_dim: int
    clifford_factors: int
    U_dim: int
    gamma: FrameShape
    sigma: CycleShape

    def __post_init__(self):
        if self.gamma.degree != self.heisenberg_dim:
            raise ShapeMismatch(f"frame shape {self.gamma} has degree {self.gamma.degree}, not {self.heisenberg_dim}")
        if self.sigma.size != self.clifford_factors:
            raise ShapeMismatch(f"cycle shape {self.sigma} permutes {self.sigma.size} factors, not {self.clifford_factors}")
        if self.prefactor_units(True) != self.prefactor_units(False):
            raise ShapeMismatch("twisted and untwisted q-prefactors disagree")

    @classmethod
    def for_prime(cls, N: int) -> "VOAConfig":
        if not isprime(N):
            raise ValueError(f"N={N} must be prime")
        dim = 24 * constants(N).ell_N
        if N == 2:
            return cls(2, dim, 32, 8, FrameShape.of({2: 16, 1: -8}), CycleShape.power(2, 16))
        if N == 3:
            return cls(3, dim, 27, 3, FrameShape.of({3: 9, 1: -3}), CycleShape.power(3, 9))
        return cls(N, dim, N * N, 1, FrameShape.of({N: N, 1: -1}), CycleShape.power(N, N))

    @property
    def identity_shape(self) -> FrameShape:
        return FrameShape.of({1: self.heisenberg_dim})

    @property
    def identity_cycles(self) -> CycleShape:
        return CycleShape.power(1, self.clifford_factors)

    def prefactor_units(self, is_identity: bool) -> int:
        """Leading exponent of the assembled trace, in 1/24 units.

        The three factors contribute ``-dim V``, ``+#fermions`` and ``-dim U``;
        with the configured dimensions this is always 0.
        """
        shape = self.identity_shape if is_identity else self.gamma
        cycles = self.identity_cycles if is_identity else self.sigma
        return -shape.degree + cycles.size - self.U_dim


# -- closed forms ------------------------------------------------------------


def heisenberg_spec(shape: FrameShape) -> EtaQuotientSpec:
    """``prod eta(k tau)^{-e_k}``, since ``det(1 - gamma q^n) = prod (1 - q^{kn})^{e_k}``."""
    return EtaQuotientSpec.of({k: -e for k, e in shape.entries})


def heisenberg_trace(shape: FrameShape, bound: int) -> QSeries:
    return eta_expand(heisenberg_spec(shape), bound)


def heisenberg_weighted_trace(shape: FrameShape, bound: int) -> QSeries:
    """Trace with ``L(0) - c/24`` inserted, i.e. ``D`` of the graded trace."""
    return series_D(heisenberg_trace(shape, bound))


def clifford_spec(factors: int, shape: CycleShape) -> EtaQuotientSpec:
    if shape.size != factors:
        raise ShapeMismatch(f"cycle shape {shape} permutes {shape.size} factors, but there are {factors}")
    return EtaQuotientSpec.of(shape.counts())


def clifford_trace(factors: int, shape: CycleShape, bound: int) -> QSeries:
    return eta_expand(clifford_spec(factors, shape), bound)


def U_spec(dim: int) -> EtaQuotientSpec:
    if dim < 1:
        raise ValueError("U must have positive dimension")
    return EtaQuotientSpec.of({1: -dim})


def U_trace(dim: int, bound: int) -> QSeries:
    return eta_expand(U_spec(dim), bound)


def W_trace(N: int, is_identity: bool, bound: int) -> QSeries:
    """The assembled trace on the full module; equals ``F_g^{(N)}``."""
    cfg = VOAConfig.for_prime(N)
    shape = cfg.identity_shape if is_identity else cfg.gamma
    cycles = cfg.identity_cycles if is_identity else cfg.sigma
    return (
        heisenberg_weighted_trace(shape, bound)
        * clifford_trace(cfg.clifford_factors, cycles, bound)
        * U_trace(cfg.U_dim, bound)
    )


def W_trace_residual(N: int, is_identity: bool, bound: int) -> QSeries:
    """``W_trace - F_g``; zero through the bound when the construction works."""
    return W_trace(N, is_identity, bound) - F_g(N, is_identity, bound)


# -- enumeration oracles -----------------------------------------------------


def _guard(max_degree: int):
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if max_degree > BRUTE_DEGREE_LIMIT:
        raise DegreeGuardExceeded(f"max_degree {max_degree} exceeds the oracle limit {BRUTE_DEGREE_LIMIT}")


def brute_sym_trace(shape: FrameShape, max_degree: int) -> QSeries:
    """Trace of ``gamma`` on the symmetric algebra of ``h (x) t^{-1}C[t^{-1}]``.

    ``gamma`` is diagonalised: a length-k factor of the frame shape gives the
    eigenvalues ``zeta_k^j`` (0 <= j < k) with multiplicity ``e_k``.  Each
    eigenvector in mode n spans a polynomial ring whose trace is the geometric
    series in ``lambda q^n``; a negative multiplicity divides that back out.
    Arithmetic is exact in Z[zeta_L] and every coefficient must be rational.
    """
    _guard(max_degree)
    L = shape.order
    R = CyclotomicRing(L)
    mult: dict[int, int] = {}
    for k, e in shape.entries:
        for j in range(k):
            r = j * (L // k)
            mult[r] = mult.get(r, 0) + e
    n_terms = max_degree + 1
    acc = [R.one] + [R.zero] * (n_terms - 1)
    for r, m in sorted(mult.items()):
        if m == 0:
            continue
        lam = R.root(r)
        for n in range(1, n_terms):
            for _ in range(abs(m)):
                if m > 0:
                    # multiply by 1/(1 - lam q^n): b_i = a_i + lam b_{i-n}
                    for i in range(n, n_terms):
                        acc[i] = R.add(acc[i], R.mul(lam, acc[i - n]))
                else:
                    for i in range(n_terms - 1, n - 1, -1):
                        acc[i] = R.add(acc[i], R.scale(R.mul(lam, acc[i - n]), -1))
    return QSeries._make(-shape.degree, [R.to_int(a) for a in acc], 1)


def strict_partitions(max_sum: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    """All sets of distinct positive parts (as increasing tuples) with sum <= max_sum."""
    yield ()
    for p in range(smallest, max_sum + 1):
        for rest in strict_partitions(max_sum - p, p + 1):
            yield (p,) + rest


def brute_ext_trace(shape: CycleShape, max_degree: int) -> QSeries:
    """Signed trace of ``sigma p(0)`` on a product of ``wedge(p(-n))v+`` factors.

    Basis vectors are tuples of strict partitions, one per factor; ``sigma``
    permutes them, so only tuples constant on each cycle survive.  On such a
    tuple a k-cycle carrying the monomial S contributes ``(-1)^{k|S|}`` from
    ``p(0)`` and the Koszul sign ``(-1)^{(k-1)|S|}`` of rotating k odd blocks,
    i.e. ``(-1)^{|S|} q^{k sum(S)}``.  Each factor's ground state sits at
    ``q^{1/24}``.
    """
    _guard(max_degree)
    n_terms = max_degree + 1
    acc = QSeries.one(n_terms)
    for k in shape.cycles:
        coeffs = [0] * n_terms
        for S in strict_partitions(max_degree // k):
            coeffs[k * sum(S)] += -1 if len(S) % 2 else 1
        acc = acc * QSeries._make(0, coeffs, 1)
    return QSeries._make(shape.size, list(acc.num), acc.den)


def _koszul_rotation_sign(blocks: tuple[tuple[int, ...], ...]) -> int:
    # moving the last block (|S_k| odd generators) to the front past the others
    last = len(blocks[-1])
    passed = sum(len(b) for b in blocks[:-1])
    return -1 if (last * passed) % 2 else 1


def _full_cycle_trace(k: int, max_degree: int) -> list[int]:
    """Trace of one k-cycle (with ``p(0)`` signs) by summing over every basis tuple."""
    parts = list(strict_partitions(max_degree))
    out = [0] * (max_degree + 1)

    def tuples(i: int, budget: int, acc: tuple):
        if i == k:
            yield acc
            return
        for S in parts:
            s = sum(S)
            if s <= budget:
                yield from tuples(i + 1, budget - s, acc + (S,))

    for t in tuples(0, max_degree, ()):
        image = (t[-1],) + t[:-1]
        if image != t:
            continue
        parity = sum(len(S) for S in t) % 2
        out[sum(sum(S) for S in t)] += _koszul_rotation_sign(t) * (-1 if parity else 1)
    return out


def eta_closed_forms(N: int) -> dict[str, EtaQuotientSpec]:
    """The eta quotients of the three factors, g = e and g != e."""
    cfg = VOAConfig.for_prime(N)
    return {
        "heisenberg_e": heisenberg_spec(cfg.identity_shape),
        "heisenberg_g": heisenberg_spec(cfg.gamma),
        "clifford_e": clifford_spec(cfg.clifford_factors, cfg.identity_cycles),
        "clifford_g": clifford_spec(cfg.clifford_factors, cfg.sigma),
        "U": U_spec(cfg.U_dim),
    }


def iter_shapes(N: int) -> Iterable[tuple[str, FrameShape, CycleShape]]:
    cfg = VOAConfig.for_prime(N)
    yield "e", cfg.identity_shape, cfg.identity_cycles
    yield "g", cfg.gamma, cfg.sigma
