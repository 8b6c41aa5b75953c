from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtrace.cyclic_trace import F_g, constants
from qtrace.modforms import E2N, eisenstein_E2
from qtrace.qseries import EtaQuotientSpec, QSeries, eta_expand, series_D
from qtrace.voa import (
    CycleShape,
    DegreeGuardExceeded,
    FrameShape,
    ShapeMismatch,
    U_trace,
    VOAConfig,
    W_trace,
    _full_cycle_trace,
    brute_ext_trace,
    brute_sym_trace,
    clifford_spec,
    clifford_trace,
    heisenberg_spec,
    heisenberg_trace,
    heisenberg_weighted_trace,
    iter_shapes,
    strict_partitions,
)


def test_heisenberg_closed_forms():
    assert heisenberg_spec(FrameShape.of({1: 24})) == EtaQuotientSpec.of({1: -24})
    assert heisenberg_spec(FrameShape.of({5: 5, 1: -1})) == EtaQuotientSpec.of({1: 1, 5: -5})
    assert heisenberg_spec(VOAConfig.for_prime(2).gamma) == EtaQuotientSpec.of({1: 8, 2: -16})
    assert heisenberg_trace(FrameShape.of({1: 24}), 10) == eta_expand({1: -24}, 10)


def test_weighted_trace_leading_term():
    d = heisenberg_weighted_trace(FrameShape.of({1: 24}), 3)
    assert d.coeff(-1) == -1


@pytest.mark.parametrize("N", [2, 3, 5, 7, 11, 13])
def test_log_derivative_identities(N):
    cfg = VOAConfig.for_prime(N)
    ell = constants(N).ell_N
    for shape, E in ((cfg.identity_shape, eisenstein_E2(80)), (cfg.gamma, E2N(N, 80))):
        h = heisenberg_trace(shape, 80)
        assert heisenberg_weighted_trace(shape, 80) == h * E * -ell


def test_clifford_closed_forms():
    assert clifford_trace(1, CycleShape((1,)), 20) == eta_expand({1: 1}, 20)
    assert clifford_spec(25, CycleShape.power(1, 25)) == EtaQuotientSpec.of({1: 25})
    assert clifford_spec(32, CycleShape.power(2, 16)) == EtaQuotientSpec.of({2: 16})
    with pytest.raises(ShapeMismatch):
        clifford_spec(30, CycleShape.power(2, 16))


def test_U_trace():
    assert U_trace(1, 10) == eta_expand({1: -1}, 10)
    assert U_trace(8, 10) == eta_expand({1: -8}, 10)
    assert U_trace(3, 10) == eta_expand({1: -3}, 10)


@pytest.mark.parametrize("N", [2, 3, 5, 7, 11, 13, 17])
def test_config_invariants(N):
    cfg = VOAConfig.for_prime(N)
    assert cfg.heisenberg_dim == 24 * constants(N).ell_N
    assert cfg.gamma.degree == cfg.heisenberg_dim
    assert cfg.sigma.size == cfg.clifford_factors
    assert cfg.prefactor_units(True) == cfg.prefactor_units(False) == 0


def test_special_configurations():
    c2, c3 = VOAConfig.for_prime(2), VOAConfig.for_prime(3)
    assert (c2.clifford_factors, c2.U_dim, str(c2.sigma)) == (32, 8, "2^16")
    assert (c3.clifford_factors, c3.U_dim, str(c3.sigma)) == (27, 3, "3^9")
    assert str(c2.gamma) == "1^-8 2^16"
    with pytest.raises(ValueError):
        VOAConfig.for_prime(9)
    with pytest.raises(ShapeMismatch):
        VOAConfig(5, 24, 25, 1, FrameShape.of({5: 5}), CycleShape.power(5, 5))


def test_W_trace_examples():
    assert W_trace(2, True, 60) == eisenstein_E2(60) * -1
    assert W_trace(5, False, 60) == E2N(5, 60) * -1
    assert W_trace(3, False, 60) == E2N(3, 60) * -1


@pytest.mark.parametrize("N", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("identity", [True, False])
def test_W_trace_is_F_g(N, identity):
    assert W_trace(N, identity, 201) == F_g(N, identity, 201)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_oracles_match_closed_forms(N):
    for _, shape, cycles in iter_shapes(N):
        assert brute_sym_trace(shape, 25) == heisenberg_trace(shape, 26)
        assert brute_ext_trace(cycles, 25) == clifford_trace(cycles.size, cycles, 26)


@given(st.dictionaries(st.integers(1, 6), st.integers(-3, 4), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_sym_oracle_on_random_shapes(entries):
    shape = FrameShape.of(entries)
    assert brute_sym_trace(shape, 12) == heisenberg_trace(shape, 13)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
@settings(max_examples=40, deadline=None)
def test_ext_oracle_on_random_cycles(cycles):
    shape = CycleShape(tuple(cycles))
    assert brute_ext_trace(shape, 15) == clifford_trace(shape.size, shape, 16)


def test_ext_oracle_examples():
    one = brute_ext_trace(CycleShape((1,)), 15)
    assert one.offset == 1
    assert [int(c) for c in one.coeffs] == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
    two = brute_ext_trace(CycleShape((2,)), 10)
    assert two == eta_expand({2: 1}, 11)


def test_degree_zero_is_the_prefactor():
    assert brute_sym_trace(FrameShape.of({3: 9, 1: -3}), 0) == QSeries.monomial(Fraction(-1), 1)
    assert brute_ext_trace(CycleShape.power(2, 16), 0) == QSeries.monomial(Fraction(32, 24), 1)


def test_degree_guard():
    with pytest.raises(DegreeGuardExceeded):
        brute_sym_trace(FrameShape.of({1: 1}), 26)
    with pytest.raises(DegreeGuardExceeded):
        brute_ext_trace(CycleShape((1,)), 26)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_full_tuple_enumeration_matches_diagonal_shortcut(k):
    full = _full_cycle_trace(k, 12)
    quick = brute_ext_trace(CycleShape((k,)), 12)
    assert full == [int(c) for c in quick.coeffs]


def test_strict_partitions():
    parts = list(strict_partitions(6))
    assert len([p for p in parts if sum(p) == 6]) == 4
    assert () in parts and (1, 2, 3) in parts and (2, 2) not in parts


def test_frame_shape_validation():
    assert FrameShape.of({1: 0, 2: 3}).entries == ((2, 3),)
    assert FrameShape.of({5: 5, 1: -1}).order == 5
    with pytest.raises(ValueError):
        FrameShape.of({0: 1})
    with pytest.raises(ValueError):
        CycleShape((0,))
