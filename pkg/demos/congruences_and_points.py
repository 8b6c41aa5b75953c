"""Eisenstein congruences at prime level and point counts on X_0(N)."""
from qtrace import (
    QN_N,
    Q1_N,
    constants,
    divisibility_report,
    format_series,
    lemma34_check,
    load_basis,
    mazur_search,
    prop33_check,
    znz_multiplicities,
)
from qtrace.cyclic_trace import f_g
from qtrace.ingest import default_curves, parse_curves

N = 37
c = constants(N)
print(f"N={N}: n_N={c.n_N}, l_N={c.ell_N}")

basis = load_basis(N)
print("cusp basis dimension", basis.dim)
g, G = mazur_search(N, basis, 2 * (N + 1))
print("g =", format_series(g.truncate(10)))

print("l E_{2,N} = -N G mod n_N:", bool(prop33_check(N, G, 2 * (N + 1))))
print("Q_N =", format_series(QN_N(N, G, 8)))
print("Q_1 =", format_series(Q1_N(N, 8)))
print("Q_N = Q_1 mod N through q^200:", bool(lemma34_check(N, G, 201)))

table = znz_multiplicities(N, f_g(N, True, None, 6), f_g(N, False, G, 6), 6)
for n, row in table.rows.items():
    print(f"n={n}: trivial {row[0]}, each other character {row[1]}")

# for N = 11, 14, 15 the curve X_0(N) is elliptic and the counts have a fixed divisor
curves = {e.level: e for e in parse_curves(default_curves())}
for level in (11, 14, 15):
    rep = divisibility_report(level, 60, curves[level])
    print(f"\nlevel {level}, divisor {rep.divisor}, passed {rep.passed}")
    for line in rep.lines()[:6]:
        print("  ", line)
