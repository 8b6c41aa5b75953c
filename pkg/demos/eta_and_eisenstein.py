"""A tour of the q-series layer: eta quotients, E2, and the weight-1/2 H_e."""
from fractions import Fraction

from qtrace import E2N, F2, He_series, eisenstein_E2, eta_expand, format_series
from qtrace.qseries import EtaQuotientSpec

# eta(tau)^24 is the discriminant; its coefficients are Ramanujan's tau(n)
delta = eta_expand({1: 24}, 8)
print("Delta =", format_series(delta))

# 1/eta counts partitions, shifted by q^(-1/24)
print("1/eta =", format_series(eta_expand({1: -1}, 10)))

# eta quotients are first-class values: multiply, divide and inspect the weight
spec = EtaQuotientSpec.of({1: 8}) / EtaQuotientSpec.of({2: 16})
print(spec, "weight", spec.weight, "leading exponent", Fraction(spec.leading_units, 24))
print(format_series(eta_expand(spec, 6)))

# E2 and the level-N combination E_{2,N}
print("E2     =", format_series(eisenstein_E2(6)))
print("E_{2,2} =", format_series(E2N(2, 6)))
print("E_{2,11} =", format_series(E2N(11, 4)))

# H_e from the identity -2 E2 + 48 F2 = H_e eta^3
He = He_series(6)
print("H_e =", format_series(He))
check = eisenstein_E2(101) * -2 + F2(101) * 48 - He_series(101) * eta_expand({1: 3}, 101)
print("identity holds through q^100:", check.is_zero())
