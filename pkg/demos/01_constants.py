"""Named constants at arbitrary precision, each cross-checked by an
algorithmically independent second route.

Run: python demos/01_constants.py
"""

import mpmath as mp

from quadcheck import (
    catalan,
    catalan_alternating,
    certified_digits,
    euler_gamma,
    euler_gamma_zeta_series,
    make_context,
    pi_agm,
    pi_machin,
)

ctx = make_context(40)
print(f"context: target {ctx.target_digits}, guard {ctx.guard_digits}, "
      f"working {ctx.working_digits} digits\n")

print("truncated digit strings (prefix-stable across precisions):")
for name in ("pi", "sqrt_pi", "gamma", "catalan"):
    print(f"  {name:<8} = {certified_digits(name, ctx)}")

print("\ncross-checking gamma: Bessel quotient vs zeta series")
bessel = euler_gamma(ctx)
zeta = euler_gamma_zeta_series(ctx)
print(f"  Bessel quotient : {mp.nstr(bessel, 40)}")
print(f"  zeta series     : {mp.nstr(zeta, 40)}")
print(f"  |difference|    : {mp.nstr(abs(bessel - zeta), 3)}")

print("\ncross-checking Catalan: central binomial vs accelerated alternating sum")
binom = catalan(ctx)
accel = catalan_alternating(ctx)
print(f"  central binomial: {mp.nstr(binom, 40)}")
print(f"  accelerated sum : {mp.nstr(accel, 40)}")
print(f"  |difference|    : {mp.nstr(abs(binom - accel), 3)}")

print("\ncross-checking pi: Machin arctangents vs Gauss-Legendre AGM")
print(f"  |machin - agm|  : {mp.nstr(abs(pi_machin(ctx) - pi_agm(ctx)), 3)}")
