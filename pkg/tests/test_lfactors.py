from fractions import Fraction

import pytest
import sympy as sp

from zetaforge.lfactors import (
    OutOfRecursionRange,
    PlaceMismatch,
    SatakeDatum,
    P_star,
    Q_poly,
    asai_L,
    c_function,
    d_factor,
    eulerian_rhs,
    full_chi,
    gamma_gl,
    gl_rankin_L,
    phi0_element,
    pi_datum,
    shift_s,
    sigma_datum,
    so_square_L,
    split_block_data,
    tau_datum,
    tensor_L,
    twist_by_s,
    unramified_rhs,
    verify_Q_identity,
    zeta_poly,
)
from zetaforge.symalg import DivisionByZero, LaurentPolynomial, RationalFunction, one, product, var
from zetaforge.weyl import make_context
from oracles import is_zero, to_sympy, zeta_expr

p, u = var("p"), var("u")


def inv(*monos):
    return RationalFunction.from_factors((), [one() - m for m in monos])


def datum(role, *names, dual=()):
    return SatakeDatum(role, "split" if dual else "inert", tuple(names), tuple(dual))


class TestTwist:
    def test_twice(self):
        tau = tau_datum(make_context("unitary-inert", 5))
        sub = twist_by_s(tau)
        assert var("x1").substitute(sub).substitute(sub) == u ** 2 * var("x1")

    def test_shifts(self):
        f = LaurentPolynomial.monomial(1, {"x1": 1, "u": 1})
        assert shift_s(f, "s+1/2") == f * p
        assert shift_s(f, "s+1") == f * p ** 2
        assert shift_s(f, "2s+1") == var("x1") * u ** 2 * p ** 2


class TestTensor:
    def test_inert_odd(self):
        ctx = make_context("unitary-inert", 5, 1, 1)
        got = tensor_L(tau_datum(ctx), pi_datum(ctx), ctx)
        x1, m1 = var("x1"), var("m1")
        assert got.value == inv(x1 * m1 * u, x1 * m1 ** -1 * u)
        assert got.render() == "[(1 - x1*m1*u)(1 - x1*m1^-1*u)]^-1"

    def test_inert_even_extra_factor(self):
        ctx = make_context("unitary-inert", 6, 0, 1)
        got = tensor_L(tau_datum(ctx), pi_datum(ctx), ctx)
        x1 = var("x1")
        monos = [x1 * var(f"m{k}") ** e * u for k in (1, 2) for e in (1, -1)]
        assert got.value == inv(*monos, x1 * u)

    def test_split(self):
        ctx = make_context("unitary-split", 3, 0, 1)
        got = tensor_L(tau_datum(ctx), pi_datum(ctx), ctx)
        t1, s1 = var("t1"), var("s1")
        monos = [t1 * var(f"m{k}") * u for k in (1, 2)] + [s1 * var(f"m{k}", -1) * u for k in (1, 2)]
        assert got.value == inv(*monos)


class TestRankin:
    def test_single(self):
        a, b = datum("tau", "x1"), datum("tau", "x2")
        assert gl_rankin_L(a, b, "s").value == inv(var("x1") * var("x2") * u)

    def test_shifted(self):
        a, b = datum("tau", "x1"), datum("tau", "x2")
        assert gl_rankin_L(a, b).value == inv(var("x1") * var("x2") * u ** 2 * p ** 2)

    def test_empty(self):
        assert gl_rankin_L(datum("tau"), datum("tau", "x1")).render() == "1"

    def test_mismatch(self):
        with pytest.raises(PlaceMismatch):
            gl_rankin_L(datum("tau", "x1"), datum("tau", "t1", dual=("s1",)))


class TestAsai:
    def test_inert(self):
        ctx = make_context("unitary-inert", 5)
        assert asai_L(tau_datum(ctx), ctx).value == inv(var("x1") * var("u", Fraction(1, 2)))

    def test_inert_twisted(self):
        ctx = make_context("unitary-inert", 5)
        assert asai_L(tau_datum(ctx), ctx, "xi^m").value == inv(-var("x1") * var("u", Fraction(1, 2)))

    def test_split(self):
        ctx = make_context("unitary-split", 5, 1, 2)
        want = inv(*[var(f"t{a}") * var(f"s{b}") * u for a in (1, 2) for b in (1, 2)])
        assert asai_L(tau_datum(ctx), ctx).value == want


class TestSquares:
    def test_exterior(self):
        assert so_square_L(datum("tau", "x1", "x2"), "exterior").value == inv(var("x1") * var("x2") * u)
        assert so_square_L(datum("tau", "x1"), "exterior").render() == "1"

    def test_symmetric(self):
        assert so_square_L(datum("tau", "x1"), "symmetric").value == inv(var("x1") ** 2 * u)


class TestZeta:
    def test_degenerate(self):
        ctx = make_context("unitary-inert", 3)
        assert zeta_poly(full_chi(ctx), 1, ctx) == 1

    def test_inert_odd(self):
        ctx = make_context("unitary-inert", 5)
        x1, x2 = var("x1"), var("x2")
        want = product([1 - x1 * x2 ** -1 * p ** 2, 1 - x1 * x2 * p ** 2, 1 + x1 * p, 1 - x1 * p ** 2,
                        1 + x2 * p, 1 - x2 * p ** 2])
        assert zeta_poly(full_chi(ctx), 1, ctx) == want

    @pytest.mark.parametrize("kind,m,t", [
        ("unitary-inert", 6, 0), ("unitary-inert", 6, 1), ("unitary-inert", 7, 0),
        ("unitary-split", 4, 0), ("unitary-split", 4, 1), ("unitary-split", 5, 0),
    ])
    def test_against_sympy(self, kind, m, t):
        ctx = make_context(kind, m)
        chi = full_chi(ctx)
        got = to_sympy(zeta_poly(chi, t, ctx))
        assert is_zero(got - zeta_expr(m, len(chi), t, ctx.place == "split"))

    def test_split_pairs(self):
        ctx = make_context("unitary-split", 4)
        xs = [var(f"x{i}") for i in range(1, 5)]
        want = product([1 - xs[a] * xs[b] ** -1 * p ** 2 for a in range(4) for b in range(a + 1, 4)])
        assert zeta_poly(full_chi(ctx), 1, ctx) == want


class TestDQ:
    def test_d_even(self):
        ctx = make_context("unitary-inert", 6, 1, 2)
        got = d_factor(tau_datum(ctx), ctx)
        assert got.value == inv(p * u * var("x1"), p * u * var("x2"))

    def test_d_trivial(self):
        for ctx in (make_context("unitary-inert", 5), make_context("unitary-split", 6, 1, 2)):
            assert d_factor(tau_datum(ctx), ctx).render() == "1"

    def test_q_inert(self):
        ctx = make_context("unitary-inert", 5, 1, 1)
        x1, m1 = var("x1"), var("m1")
        assert Q_poly(tau_datum(ctx), pi_datum(ctx), ctx) == (1 - p * u * x1 * m1) * (1 - p * u * x1 * m1 ** -1)

    def test_q_empty(self):
        ctx = make_context("unitary-inert", 4, 1, 1)
        assert ctx.mtildeH == 0
        assert Q_poly(tau_datum(ctx), pi_datum(ctx), ctx) == 1

    def test_q_split(self):
        ctx = make_context("unitary-split", 3, 0, 1)
        pi = SatakeDatum("pi", "split", ("m1",))
        t1, s1, m1 = var("t1"), var("s1"), var("m1")
        assert Q_poly(tau_datum(ctx), pi, ctx) == (1 - p * u * t1 * m1) * (1 - p * u * s1 * m1 ** -1)

    @pytest.mark.parametrize("kind,m", [("unitary-inert", 5), ("unitary-inert", 6), ("unitary-split", 5)])
    def test_q_identity(self, kind, m):
        assert verify_Q_identity(make_context(kind, m))

    def test_q_identity_with_sympy(self):
        ctx = make_context("unitary-inert", 6, 0, 1)
        tau, pi = tau_datum(ctx), pi_datum(ctx)
        L = shift_s(tensor_L(tau, pi, ctx), "s+1/2")
        lhs = to_sympy(Q_poly(tau, pi, ctx))
        rhs = sp.Integer(1)
        for f in L.factors:
            rhs *= to_sympy(f)
        for f in d_factor(tau, ctx).factors:
            rhs /= to_sympy(f)
        assert sp.cancel(lhs - rhs) == 0


class TestPStarGammaPhi:
    def test_p_star_odd(self):
        ctx = make_context("unitary-inert", 7, 0, 1)
        assert P_star(ctx) == RationalFunction(zeta_poly(["x2", "x3"], 1, ctx))

    def test_p_star_short_sigma(self):
        ctx = make_context("unitary-inert", 6, 1, 2)
        assert P_star(ctx) == RationalFunction((1 - p * var("x1")) * (1 - p * var("x2")))

    def test_p_star_even(self):
        ctx = make_context("unitary-inert", 6, 0, 1)
        assert P_star(ctx) == RationalFunction(zeta_poly(["x2", "x3"], 1, ctx) * (1 - p * var("x1")))

    def test_gamma(self):
        ctx = make_context("unitary-inert", 7, 1, 2)
        x1, x2 = var("x1"), var("x2")
        assert gamma_gl(ctx, 1) == RationalFunction(1 - x2 * x1 ** -1 * p ** 2, 1 - x1 * x2 ** -1)

    def test_gamma_pole(self):
        g = gamma_gl(make_context("unitary-inert", 7, 1, 2), 1)
        with pytest.raises(DivisionByZero):
            g.evaluate({"x1": 2, "x2": 2, "p": Fraction(1, 3)})

    def test_gamma_range(self):
        with pytest.raises(OutOfRecursionRange):
            gamma_gl(make_context("unitary-inert", 7, 1, 2), 2)

    def test_phi0_inert(self):
        ctx = make_context("unitary-inert", 5, 1, 1)
        x1, X, X1 = var("x1"), var("X"), var("X1")
        assert phi0_element(tau_datum(ctx), ctx) == (1 - p * x1 * X * X1) * (1 - p * x1 * X * X1 ** -1)

    def test_phi0_split(self):
        ctx = make_context("unitary-split", 5, 1, 1)
        got = phi0_element(tau_datum(ctx), ctx)
        t1, s1, X = var("t1"), var("s1"), var("X")
        want = product((1 - p * t1 * X * var(f"X{k}")) * (1 - p * s1 * X * var(f"X{k}", -1)) for k in (1, 2))
        assert got == want

    def test_phi0_empty(self):
        ctx = make_context("unitary-inert", 5, 1, 0)
        assert phi0_element(tau_datum(ctx), ctx) == 1


class TestCFunction:
    def test_degenerate(self):
        ctx = make_context("unitary-inert", 3)
        assert c_function(full_chi(ctx), ctx) == RationalFunction(one())

    def test_inert_odd(self):
        ctx = make_context("unitary-inert", 5)
        chi = full_chi(ctx)
        want = RationalFunction(zeta_poly(chi, 1, ctx), zeta_poly(chi, 0, ctx))
        assert c_function(chi, ctx) == want


class TestComposition:
    def test_rejects_trivial_sigma(self):
        ctx = make_context("unitary-inert", 5, 1, 2)
        with pytest.raises(ValueError):
            unramified_rhs(tau_datum(ctx), sigma_datum(ctx), pi_datum(ctx), ctx)

    def test_single_block(self):
        ctx = make_context("unitary-inert", 7, 1, 2)
        tau, sig, pi = tau_datum(ctx), sigma_datum(ctx), pi_datum(ctx)
        assert eulerian_rhs([tau], sig, pi, ctx) == unramified_rhs(tau, sig, pi, ctx)

    def test_shape(self):
        ctx = make_context("unitary-inert", 7, 1, 2)
        tau, sig, pi = tau_datum(ctx), sigma_datum(ctx), pi_datum(ctx)
        num = shift_s(tensor_L(tau, pi, ctx), "s+1/2").value
        den = shift_s(tensor_L(tau, sig, ctx), "s+1").value * shift_s(asai_L(tau, ctx, "xi^m"), "2s+1").value
        assert unramified_rhs(tau, sig, pi, ctx) == num / den

    def test_three_blocks(self):
        ctx = make_context("unitary-inert", 9, 2, 3)
        blocks = split_block_data(ctx, [1, 1, 1])
        sig, pi = sigma_datum(ctx), pi_datum(ctx)
        got = eulerian_rhs(blocks, sig, pi, ctx)
        want = product_rf(unramified_rhs(b, sig, pi, ctx) for b in blocks)
        for a in range(3):
            for b in range(a + 1, 3):
                want = want / gl_rankin_L(blocks[a], blocks[b]).value
        assert got == want


def product_rf(items):
    out = RationalFunction(one())
    for r in items:
        out = out * r
    return out


class TestInvariants:
    def test_reciprocals_are_polynomials(self):
        ctx = make_context("unitary-inert", 7, 1, 2)
        tau, sig, pi = tau_datum(ctx), sigma_datum(ctx), pi_datum(ctx)
        for L in (tensor_L(tau, pi, ctx), tensor_L(tau, sig, ctx), asai_L(tau, ctx, "xi^m"), d_factor(tau, ctx),
                  so_square_L(tau, "symmetric"), gl_rankin_L(*split_block_data(ctx, [1, 1]))):
            inverse = RationalFunction(one()) / L.value
            assert inverse.den == 1

    @pytest.mark.parametrize("kind", ["unitary-inert", "unitary-split"])
    def test_q_identity_range(self, kind):
        for m in range(3, 9):
            for j in (1, 2, 3):
                try:
                    ctx = make_context(kind, m, j - 1, j)
                except ValueError:
                    continue
                assert verify_Q_identity(ctx), (m, j)

    def test_split_tensor_contragredient(self):
        # swapping the two GL halves of tau while inverting pi relabels the factor set
        ctx = make_context("unitary-split", 5, 1, 1)
        tau, pi = tau_datum(ctx), pi_datum(ctx)
        L = tensor_L(tau, pi, ctx).value
        sub = {m: (1, {m: -1}) for m in pi.vars}
        for t, s in zip(tau.vars, tau.dual_vars):
            sub[t] = (1, {s: 1})
            sub[s] = (1, {t: 1})
        assert L.substitute(sub) == L
        assert L.substitute({s: (1, {s: -1}) for s in tau.dual_vars}) != L

    def test_split_asai_is_rankin(self):
        ctx = make_context("unitary-split", 7, 1, 2)
        tau = tau_datum(ctx)
        first = SatakeDatum("tau", "inert", tau.vars)
        second = SatakeDatum("tau", "inert", tau.dual_vars)
        assert asai_L(tau, ctx).value == gl_rankin_L(first, second, "s").value
