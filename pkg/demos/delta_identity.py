"""Walk through the Weyl-sum identity for the zeta polynomial at small rank.

    python demos/delta_identity.py
"""

from zetaforge.identity import (
    check_delta_antisymmetry,
    delta,
    has_collision,
    main_delta_identity,
    main_identity_integrand,
    vanishing_sum,
)
from zetaforge.weyl import make_context, rho_monomial


def main():
    ctx = make_context("unitary-inert", 5, ell=1, j=2)
    print("context:", ctx.as_dict())
    print("rho monomial:", rho_monomial(ctx))
    print("Delta has", len(delta(ctx)), "terms")

    report = check_delta_antisymmetry(ctx)
    print("antisymmetry over", report.details["group_order"], "elements:", report.status)

    # Only exponent vectors without a collision leave a nonzero alternating sum.
    for n in range(4):
        s = vanishing_sum(ctx, [n])
        print(f"n=({n}) collision={has_collision(ctx, [n])} sum is zero={s.is_zero()}")

    print("integrand:", main_identity_integrand(ctx))
    for m, ell in ((5, 1), (7, 1), (7, 2)):
        r = main_delta_identity(make_context("unitary-inert", m, ell, ell + 1))
        print(f"m={m} ell={ell}: {r.status} in {r.elapsed:.2f}s")
    r = main_delta_identity(make_context("unitary-split", 7, 2, 3))
    print("split m=7 ell=2:", r.status)


if __name__ == "__main__":
    main()
