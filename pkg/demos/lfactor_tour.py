"""Build the local factors for one unitary context and compose the unramified quotient.

    python demos/lfactor_tour.py
"""

from zetaforge import lfactors as lf
from zetaforge.weyl import make_context


def main():
    ctx = make_context("unitary-inert", 7, ell=1, j=2)
    tau, sigma, pi = lf.tau_datum(ctx), lf.sigma_datum(ctx), lf.pi_datum(ctx)
    print("tau:", tau.vars, "sigma:", sigma.vars, "pi:", pi.vars)

    print("L(s, tau x pi)        =", lf.tensor_L(tau, pi, ctx).render())
    print("L(s, tau, Asai x xi^m) =", lf.asai_L(tau, ctx, "xi^m").render())
    print("zeta(chi_sigma, 1)    =", lf.zeta_poly(lf.sigma_slice(ctx), 1, ctx))
    print("Q(chi_s, mu)          =", lf.Q_poly(tau, pi, ctx))
    print("Q matches L^-1 * d:", lf.verify_Q_identity(ctx))

    rhs = lf.unramified_rhs(tau, sigma, pi, ctx)
    num, den = rhs.factors()
    print(f"unramified quotient: {len(num)} numerator and {len(den)} denominator factors")

    blocks = lf.split_block_data(ctx, [1, 1])
    eul = lf.eulerian_rhs(blocks, sigma, pi, ctx)
    whole = lf.unramified_rhs(tau, sigma, pi, ctx)
    print("two-block composition equals the unblocked quotient:", eul == whole)

    even = make_context("unitary-inert", 6, ell=1, j=2)
    print("d(tau) at m=6:", lf.d_factor(lf.tau_datum(even), even).render())
    print("P* at m=6:", lf.P_star(even))


if __name__ == "__main__":
    main()
