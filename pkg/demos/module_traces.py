"""Graded traces of the Heisenberg x Clifford x Heisenberg module."""
from qtrace import (
    CycleShape,
    F_g,
    VOAConfig,
    W_trace,
    brute_ext_trace,
    brute_sym_trace,
    clifford_trace,
    format_series,
    heisenberg_trace,
)
from qtrace.voa import heisenberg_spec

for N in (2, 3, 5):
    cfg = VOAConfig.for_prime(N)
    print(f"N={N}: gamma {cfg.gamma}, sigma {cfg.sigma}, U of dim {cfg.U_dim}")
    print("  tr(gamma | V) =", heisenberg_spec(cfg.gamma))

# the symmetric-algebra oracle enumerates eigenvalues in Z[zeta_5]
shape = VOAConfig.for_prime(5).gamma
print(format_series(brute_sym_trace(shape, 6)))
print(format_series(heisenberg_trace(shape, 7)))

# one fermion gives eta; a 2-cycle of fermions gives eta(2 tau)
print(format_series(brute_ext_trace(CycleShape((1,)), 12)))
print(format_series(clifford_trace(2, CycleShape((2,)), 12)))

# the assembled trace is the purely Eisenstein trace function
for N in (2, 7):
    for ident in (True, False):
        w = W_trace(N, ident, 201)
        print(N, "identity" if ident else "other", format_series(w.truncate(4)), w == F_g(N, ident, 201))
