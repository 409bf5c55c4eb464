"""The Gaussian sech transform T(y) = integral_0^inf exp(-x^2) sech(xy) dx,
its y <-> pi/y reciprocity, and its derivative structure.

Run: python demos/05_transform.py
"""

import mpmath as mp

from quadcheck import (
    m_transform,
    m_transform_derivative_check,
    make_context,
    modular_residual,
)

ctx = make_context(25)

print("the transform decreases from sqrt(pi)/2 at y = 0:")
for y_text in ("0", "1/2", "1", "2", "5"):
    with ctx.workdps():
        y = mp.mpf(y_text) if "/" not in y_text else mp.mpf(1) / 2
    value = m_transform(y, ctx)
    print(f"  T({y_text:>4}) = {mp.nstr(value, 25)}")

print("\nreciprocity y*T(y) = sqrt(pi)*T(pi/y):")
for y_text in ("1/2", "1", "2", "pi"):
    with ctx.workdps():
        y = {"1/2": mp.mpf(1) / 2, "1": mp.mpf(1), "2": mp.mpf(2), "pi": +mp.pi}[y_text]
    print(f"  y = {y_text:>4}: residual {mp.nstr(modular_residual(y, ctx), 3)}")

with ctx.workdps():
    fixed = mp.sqrt(mp.pi)
print(f"  y = sqrt(pi) is the fixed point: residual "
      f"{mp.nstr(modular_residual(fixed, ctx), 3)}")

print("\nderivative structure: differentiation under the integral sign")
print("produces the sinh/cosh^2 kernels, confirmed by central differences:")
check = m_transform_derivative_check(1, ctx)
print(f"  direct integral : {mp.nstr(check.direct, 25)}")
print(f"  central diff    : {mp.nstr(check.finite_diff, 25)}")
print(f"  residual        : {mp.nstr(check.residual, 3)} at step {mp.nstr(check.step, 3)}")
halved = m_transform_derivative_check(1, ctx, step=check.step / 2)
print(f"  halving the step shrinks the residual by "
      f"{mp.nstr(check.residual / halved.residual, 3)}x (second order)")
