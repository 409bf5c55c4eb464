"""Double-exponential quadrature: near-exponential convergence in the
refinement level, honest error estimates, endpoint-safe abscissas.

Run: python demos/03_quadrature.py
"""

import mpmath as mp

from quadcheck import integrate_finite, integrate_semi_infinite, make_context

ctx = make_context(30)

print("integral_0^1 dx/(1+x^2) = pi/4 (tanh-sinh)")
result = integrate_finite(lambda x: 1 / (1 + x * x), 0, 1, ctx)
with mp.workdps(90):
    true_error = abs(result.value - mp.pi / 4)
print(f"  value          {mp.nstr(result.value, 30)}")
print(f"  estimate       {mp.nstr(result.error_estimate, 3)}")
print(f"  true error     {mp.nstr(true_error, 3)}")
print(f"  levels, nodes  {result.levels_used}, {result.nodes_evaluated}")

print("\nintegral_0^inf exp(-x^2) dx = sqrt(pi)/2 (exp-sinh)")
result = integrate_semi_infinite(lambda x: mp.exp(-x * x), ctx)
with mp.workdps(90):
    true_error = abs(result.value - mp.sqrt(mp.pi) / 2)
print(f"  value          {mp.nstr(result.value, 30)}")
print(f"  estimate       {mp.nstr(result.error_estimate, 3)}")
print(f"  true error     {mp.nstr(true_error, 3)}")
print(f"  levels, nodes  {result.levels_used}, {result.nodes_evaluated}")

print("\nprecision ladder on the Gaussian integral:")
for digits in (10, 20, 30, 40, 50):
    c = make_context(digits)
    r = integrate_semi_infinite(lambda x: mp.exp(-x * x), c)
    with mp.workdps(140):
        err = abs(r.value - mp.sqrt(mp.pi) / 2)
    print(f"  digits {digits:>3}: true error {mp.nstr(err, 3):>12}  "
          f"({r.nodes_evaluated} nodes, {r.levels_used} levels)")

print("\nan endpoint singularity in the derivative is no obstacle:")
result = integrate_finite(lambda x: mp.sqrt(x) * mp.sqrt(1 - x), 0, 1, ctx)
with mp.workdps(90):
    print(f"  integral_0^1 sqrt(x(1-x)) dx - pi/8 = "
          f"{mp.nstr(abs(result.value - mp.pi / 8), 3)}")
