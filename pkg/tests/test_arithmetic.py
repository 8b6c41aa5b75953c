import pytest
from sympy.ntheory import primerange

from qtrace.arithmetic import (
    BadReduction,
    CurveModel,
    SingularCurve,
    ap_from_series,
    count_points,
    divisibility_report,
    hasse_ok,
    newform_series,
    residue_equivalence,
)
from qtrace.ingest import default_curves, parse_curves


@pytest.fixture(scope="module")
def curves():
    return {c.level: c for c in parse_curves(default_curves())}


def brute_count(c: CurveModel, p: int) -> int:
    """Projective points by checking every (x, y) directly."""
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + c.a1 * x * y + c.a3 * y - (x**3 + c.a2 * x * x + c.a4 * x + c.a6)) % p == 0:
                n += 1
    return n


def test_level_11_counts(curves):
    E = curves[11]
    assert [count_points(E, p) for p in (2, 3, 5)] == [5, 5, 5]
    assert E.discriminant == -161051


def test_level_11_newform_values():
    f = newform_series(11, 40)
    assert f.coeff(7) == -2
    assert f.coeff(19) % 5 == 0


@pytest.mark.parametrize("N", [11, 14, 15])
def test_counts_match_brute_force_and_hasse(N, curves):
    E = curves[N]
    for p in primerange(2, 60):
        if N % p == 0:
            continue
        n = count_points(E, p)
        assert n == brute_count(E, p)
        assert hasse_ok(p, n)


def test_bad_primes_divide_level(curves):
    assert curves[11].bad_primes() == [11]
    assert curves[14].bad_primes() == [2, 7]
    assert curves[15].bad_primes() == [3, 5]
    with pytest.raises(BadReduction):
        count_points(curves[14], 7)


def test_singular_model_rejected():
    with pytest.raises(SingularCurve, match="cusp"):
        CurveModel("cusp", 0, 0, 0, 0, 0, 1)
    with pytest.raises(SingularCurve, match="do not divide"):
        CurveModel("wrong-level", 0, -1, 1, -10, -20, 13)


def test_ap_normalization():
    f = newform_series(11, 10) * 2
    assert ap_from_series(f, 2, 2) == -2
    with pytest.raises(ValueError):
        ap_from_series(f, 2, 3)


@pytest.mark.parametrize("N, d, excluded", [(11, 5, {11: 11}), (14, 3, {2: 4, 7: 7}), (15, 4, {3: 5, 5: 5})])
def test_divisibility(N, d, excluded, curves):
    rep = divisibility_report(N, 500, curves[N])
    assert rep.passed, rep.first_failure
    assert rep.divisor == d
    assert rep.excluded == excluded
    assert all(c.point_count == c.count for c in rep.checked if c.p < 200)


def test_divisibility_report_lines():
    rep = divisibility_report(11, 10)
    assert rep.lines() == [
        "p 2 c -2 count 5 pass",
        "p 3 c -1 count 5 pass",
        "p 5 c 1 count 5 pass",
        "p 7 c -2 count 10 pass",
        "p 11 excluded count 11",
    ]


def test_residue_equivalence():
    w = residue_equivalence(2000)
    assert w
    assert w.checked == 302
    with pytest.raises(ValueError):
        residue_equivalence(100, N=14)
