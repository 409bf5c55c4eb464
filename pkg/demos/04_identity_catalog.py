"""The builtin catalog of twelve integral identities, verified
numerically, plus the negative control showing the harness actually has
teeth.

Run: python demos/04_identity_catalog.py   (about half a minute)
"""

import mpmath as mp

from quadcheck import builtin_catalog, make_context, verify_identity
from quadcheck.catalog import Identity, SideSpec, make_term
from quadcheck.catalog_io import serialize_catalog
from quadcheck.expressions import parse_expression
from quadcheck.quadrature import SemiInfinite

ctx = make_context(20)
catalog = builtin_catalog()

print("the catalog in its file format (first identity):\n")
print(serialize_catalog(catalog[:1]))

print(f"verifying all twelve at {ctx.target_digits} digits:")
for identity in catalog:
    record = verify_identity(identity, ctx)
    status = "PASS" if record.passed else "FAIL"
    print(f"  identity {identity.id:>2}: {status}  rel residual "
          f"{mp.nstr(record.rel_residual, 3):>10}  ({record.nodes} nodes)")

print("\nnegative control: perturb one coefficient by one part in 10^6")
perturbed_src = "x*(3 - 4.000001*pi*x^2)*exp(-pi*x*(x+1))/sinh(pi*x)"
perturbed = Identity(
    id=11,
    lhs=SideSpec(terms=(make_term(SemiInfinite(), parse_expression(perturbed_src)),)),
    rhs=SideSpec(terms=(), exact_constant=parse_expression("1/(2*pi)")),
)
record = verify_identity(perturbed, ctx)
print(f"  perturbed identity 11: passed={record.passed}, "
      f"rel residual {mp.nstr(record.rel_residual, 4)} (tolerance {mp.nstr(record.tolerance, 2)})")
