"""Unramified L-factors and the polynomials built from them.

Variables: ``x1..`` are character values of the torus (tau first, then
sigma), ``m1..`` Satake eigenvalues of pi, ``t1..``/``s1..`` the two GL
halves of tau at a split place, ``p = q_E**-1/2`` and ``u = q_E**-s``.

Every L-factor is stored as the list of its geometric-series denominators
``(1 - monomial)``; its value is ``1 / prod(factors)``.  Shifts of ``s`` are
substitutions on ``u``:

* ``s + 1/2``  ->  ``u * p``
* ``s + 1``    ->  ``u * p**2``
* ``2s + 1``   ->  ``u**2 * p**2``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .symalg import LaurentPolynomial, RationalFunction, one, product, var
from .weyl import GroupContext

__all__ = [
    "LFactorExpr",
    "OutOfRecursionRange",
    "PlaceMismatch",
    "Q_poly",
    "P_star",
    "SatakeDatum",
    "UnsupportedKind",
    "asai_L",
    "c_function",
    "d_factor",
    "eulerian_rhs",
    "full_chi",
    "gamma_gl",
    "gl_rankin_L",
    "phi0_element",
    "pi_datum",
    "shift_s",
    "sigma_datum",
    "sigma_slice",
    "so_square_L",
    "split_block_data",
    "tau_datum",
    "tau_slice",
    "tensor_L",
    "twist_by_s",
    "unramified_rhs",
    "verify_Q_identity",
    "zeta_factors",
    "zeta_poly",
]


class PlaceMismatch(ValueError):
    pass


class OutOfRecursionRange(ValueError):
    pass


class UnsupportedKind(ValueError):
    pass


U = "u"
P = var("p")

SHIFTS = {
    "s": None,
    "s+1/2": (1, {"u": 1, "p": 1}),
    "s+1": (1, {"u": 1, "p": 2}),
    "2s+1": (1, {"u": 2, "p": 2}),
}


def shift_s(f, which: str):
    """Evaluate a u-expression at a shifted argument (see module docstring)."""
    if which not in SHIFTS:
        raise ValueError(f"unknown shift {which!r}")
    img = SHIFTS[which]
    if img is None:
        return f
    if isinstance(f, LFactorExpr):
        return f.substitute({U: img}, f"{f.label}[{which}]")
    return f.substitute({U: img})


# -- Satake data -----------------------------------------------------------

@dataclass(frozen=True)
class SatakeDatum:
    """Variable names carrying the Satake parameters of one representation.

    ``dual_vars`` is non-empty only for tau at a split place, where it holds
    the second GL half.
    """

    role: str
    place: str
    vars: tuple[str, ...]
    dual_vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.role not in ("tau", "sigma", "pi"):
            raise ValueError(f"bad role {self.role!r}")
        if self.place not in ("inert", "split"):
            raise ValueError(f"bad place {self.place!r}")
        if self.dual_vars and len(self.dual_vars) != len(self.vars):
            raise ValueError("dual parameter list must match in length")

    @property
    def count(self) -> int:
        return len(self.vars)

    def eigenvalues(self) -> list[LaurentPolynomial]:
        return [var(v) for v in self.vars]

    def dual_eigenvalues(self) -> list[LaurentPolynomial]:
        return [var(v) for v in self.dual_vars]

    def is_split_gl_pair(self) -> bool:
        return bool(self.dual_vars)


def full_chi(ctx: GroupContext) -> list[str]:
    """Character variables of the full torus: mtilde of them, or m when split."""
    return [f"x{i}" for i in range(1, ctx.rank + 1)]


def tau_slice(ctx: GroupContext) -> list[str]:
    return [f"x{i}" for i in range(1, ctx.j + 1)]


def sigma_slice(ctx: GroupContext) -> list[str]:
    if ctx.place == "split":
        return [f"x{i}" for i in range(ctx.j + 1, ctx.m - ctx.j + 1)]
    return [f"x{i}" for i in range(ctx.j + 1, ctx.mtilde + 1)]


def tau_datum(ctx: GroupContext, first: int = 1, count: int | None = None) -> SatakeDatum:
    """tau's parameters; ``first``/``count`` pick out a block of an isobaric sum."""
    k = ctx.j if count is None else count
    idx = range(first, first + k)
    if ctx.place == "split":
        return SatakeDatum("tau", "split", tuple(f"t{i}" for i in idx), tuple(f"s{i}" for i in idx))
    return SatakeDatum("tau", "inert", tuple(f"x{i}" for i in idx))


def split_block_data(ctx: GroupContext, sizes: Sequence[int]) -> list[SatakeDatum]:
    """Consecutive blocks of tau of the given sizes (they must sum to j)."""
    if sum(sizes) != ctx.j or any(s < 1 for s in sizes):
        raise ValueError(f"block sizes {list(sizes)} do not partition j={ctx.j}")
    out, first = [], 1
    for size in sizes:
        out.append(tau_datum(ctx, first, size))
        first += size
    return out


def sigma_datum(ctx: GroupContext) -> SatakeDatum:
    return SatakeDatum("sigma", ctx.place, tuple(sigma_slice(ctx)))


def pi_count(ctx: GroupContext) -> int:
    """Number of pi-eigenvalue variables: mtildeH, or dim H when split."""
    return ctx.dimH if ctx.place == "split" else ctx.mtildeH


def pi_datum(ctx: GroupContext) -> SatakeDatum:
    return SatakeDatum("pi", ctx.place, tuple(f"m{i}" for i in range(1, pi_count(ctx) + 1)))


def twist_by_s(chi: SatakeDatum) -> dict:
    """Substitution twisting tau by |.|^s: every tau variable gets a factor u."""
    if chi.role != "tau":
        raise ValueError("only tau is twisted by s")
    return {v: (1, {v: 1, U: 1}) for v in chi.vars + chi.dual_vars}


def split_chi_map(ctx: GroupContext, datum: SatakeDatum | None = None) -> dict:
    """Express split tau parameters through the full torus: t_i = x_i, s_i = x_{m+1-i}^-1."""
    datum = datum or tau_datum(ctx)
    out = {}
    for t, s in zip(datum.vars, datum.dual_vars):
        i = int(t[1:])
        out[t] = (1, {f"x{i}": 1})
        out[s] = (1, {f"x{ctx.m + 1 - i}": -1})
    return out


# -- L-factor container ----------------------------------------------------

def _one_minus(mono: LaurentPolynomial) -> LaurentPolynomial:
    return one() - mono


def _render_factor(f: LaurentPolynomial) -> str:
    items = list(f.items())
    if len(items) == 2 and f.constant_term() == 1:
        ((key, c),) = [(k, c) for k, c in items if k != ()]
        mono = LaurentPolynomial({key: 1}).to_string()
        if c == -1:
            return f"(1 - {mono})"
        if c == 1:
            return f"(1 + {mono})"
    return f"({f.to_string()})"


@dataclass(frozen=True)
class LFactorExpr:
    """An L-factor ``1 / prod(factors)`` kept in factored form."""

    label: str
    factors: tuple[LaurentPolynomial, ...]

    @property
    def denominator(self) -> LaurentPolynomial:
        return product(self.factors)

    @property
    def value(self) -> RationalFunction:
        return RationalFunction.from_factors((), self.factors)

    def reciprocal(self) -> LaurentPolynomial:
        return self.denominator

    def substitute(self, mapping, label: str | None = None) -> "LFactorExpr":
        return LFactorExpr(label or self.label, tuple(f.substitute(mapping) for f in self.factors))

    def __mul__(self, other: "LFactorExpr") -> "LFactorExpr":
        return LFactorExpr(f"{self.label}*{other.label}", self.factors + other.factors)

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "[" + "".join(_render_factor(f) for f in self.factors) + "]^-1"

    def __str__(self):
        return self.render()


def _lf(label: str, monos: Iterable[LaurentPolynomial]) -> LFactorExpr:
    return LFactorExpr(label, tuple(_one_minus(x) for x in monos))


def _maybe_u(svar: bool) -> LaurentPolynomial:
    return var(U) if svar else one()


# -- tensor, Rankin-Selberg, Asai, square ---------------------------------

def _partner_is_odd(partner: SatakeDatum, ctx: GroupContext) -> bool:
    if partner.role == "pi":
        return ctx.dimH % 2 == 1
    if partner.role == "sigma":
        return (ctx.m - 2 * ctx.j) % 2 == 1
    return False


def tensor_L(
    tau: SatakeDatum,
    other: SatakeDatum,
    ctx: GroupContext,
    svar: bool = True,
    extra_range: str = "tau",
) -> LFactorExpr:
    """L(s, tau x other) for other = pi or sigma.

    Inert unitary: the partner's base-changed parameter is
    ``{y, y^-1 : y}`` plus an eigenvalue 1 when its Hermitian space is
    odd-dimensional; the resulting extra product runs over tau's variables
    (``extra_range="tau"``) or over x1..xn (``extra_range="n"``).
    """
    if tau.place != other.place or tau.place != ctx.place:
        raise PlaceMismatch(f"{tau.place} tau with {other.place} {other.role} in a {ctx.place} context")
    if tau.role != "tau":
        raise ValueError("first argument must be tau")
    u = _maybe_u(svar)
    label = f"L(s, tau x {other.role})"
    ys = other.eigenvalues()
    if ctx.place == "split":
        monos = [mm for t, s in zip(tau.eigenvalues(), tau.dual_eigenvalues()) for y in ys
                 for mm in (t * y * u, s * y ** -1 * u)]
        return _lf(label, monos)
    monos = [mm for x in tau.eigenvalues() for y in ys for mm in (x * y * u, x * y ** -1 * u)]
    if ctx.kind == "unitary-inert" and _partner_is_odd(other, ctx):
        if extra_range == "tau":
            extra = tau.eigenvalues()
        elif extra_range == "n":
            extra = [var(f"x{k}") for k in range(1, ctx.n + 1)]
        else:
            raise ValueError(f"extra_range must be 'tau' or 'n', got {extra_range!r}")
        monos += [x * u for x in extra]
    return _lf(label, monos)


def gl_rankin_L(a: SatakeDatum, b: SatakeDatum, shift: str = "2s+1") -> LFactorExpr:
    """Rankin-Selberg factor of two GL parameter lists.

    For split-place tau data the relevant product pairs each block's first
    half with the other's second half, matching the split Asai factor.
    """
    if a.is_split_gl_pair() != b.is_split_gl_pair():
        raise PlaceMismatch("cannot pair split and inert parameter lists")
    if shift == "2s+1":
        w = var(U, 2) * var("p", 2)
    elif shift == "s":
        w = var(U)
    else:
        raise ValueError(f"unknown shift {shift!r}")
    if a.is_split_gl_pair():
        monos = [x * y * w for x in a.eigenvalues() for y in b.dual_eigenvalues()]
        monos += [x * y * w for x in b.eigenvalues() for y in a.dual_eigenvalues()]
    else:
        monos = [x * y * w for x in a.eigenvalues() for y in b.eigenvalues()]
    return _lf(f"L({shift}, tau_a x tau_b)", monos)


def asai_L(tau: SatakeDatum, ctx: GroupContext, twist: str | None = None) -> LFactorExpr:
    """Asai factor of tau, optionally twisted by xi^m (xi(uniformizer) = -1)."""
    if tau.role != "tau":
        raise ValueError("asai_L takes tau")
    if tau.is_split_gl_pair():
        monos = [t * s * var(U) for t in tau.eigenvalues() for s in tau.dual_eigenvalues()]
        return _lf("L(s, tau, Asai)", monos)
    if twist not in (None, "none", "xi^m"):
        raise ValueError(f"unknown twist {twist!r}")
    xs = tau.eigenvalues()
    monos = [xs[a] * xs[b] * var(U) for a in range(len(xs)) for b in range(a + 1, len(xs))]
    sign = -1 if (twist == "xi^m" and ctx.m % 2 == 1) else 1
    monos += [x * var(U, Fraction(1, 2)) * sign for x in xs]
    label = "L(s, tau, Asai x xi^m)" if twist == "xi^m" else "L(s, tau, Asai)"
    return _lf(label, monos)


def so_square_L(tau: SatakeDatum, which: str) -> LFactorExpr:
    xs = tau.eigenvalues()
    monos = [xs[a] * xs[b] * var(U) for a in range(len(xs)) for b in range(a + 1, len(xs))]
    if which == "symmetric":
        monos += [x * x * var(U) for x in xs]
    elif which != "exterior":
        raise ValueError(f"which must be exterior or symmetric, got {which!r}")
    return _lf(f"L(s, tau, {'Sym2' if which == 'symmetric' else 'Ext2'})", monos)


def _square_for(tau: SatakeDatum, ctx: GroupContext) -> LFactorExpr:
    if ctx.is_unitary:
        return asai_L(tau, ctx, "xi^m")
    # SO(2k+1) pairs with the symmetric square, SO(2k) with the exterior square
    return so_square_L(tau, "symmetric" if ctx.kind == "so-odd" else "exterior")


# -- zeta polynomial, d, Q, P*, gamma, Phi0, c -----------------------------

def zeta_factors(chi: Sequence[str], t: int, ctx: GroupContext) -> list[LaurentPolynomial]:
    """The factors whose product is :func:`zeta_poly`.

    The product is 1 when the group carried by ``chi`` has Witt index at
    most one: slice length at an inert place, half of it at a split place.
    """
    xs = [var(v) for v in chi]
    witt = len(xs) // 2 if ctx.place == "split" else len(xs)
    if witt <= 1:
        return []
    if not ctx.is_unitary:
        raise UnsupportedKind(f"no zeta polynomial for {ctx.kind}")
    q_t = var("p", 2 * t)
    qF_t = var("p", t)
    out = []
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            out.append(one() - xs[a] * xs[b] ** -1 * q_t)
            if ctx.place == "inert":
                out.append(one() - xs[a] * xs[b] * q_t)
    if ctx.place == "inert":
        for x in xs:
            if ctx.m % 2 == 0:
                out.append(one() - x * qF_t)
            else:
                out.append(one() + x * qF_t)
                out.append(one() - x * q_t)
    return out


def zeta_poly(chi: Sequence[str], t: int, ctx: GroupContext) -> LaurentPolynomial:
    """Zeta polynomial of the group whose torus carries the variables ``chi``."""
    return product(zeta_factors(chi, t, ctx))


def d_factor(tau: SatakeDatum, ctx: GroupContext, svar: bool = True) -> LFactorExpr:
    if ctx.kind == "unitary-inert" and ctx.m % 2 == 0:
        return _lf("d(tau)", [P * _maybe_u(svar) * x for x in tau.eigenvalues()])
    return LFactorExpr("d(tau)", ())


def _q_factors(tau: SatakeDatum, pi: SatakeDatum) -> list[LaurentPolynomial]:
    pu = P * var(U)
    ys = pi.eigenvalues()
    if tau.is_split_gl_pair():
        pairs = zip(tau.eigenvalues(), tau.dual_eigenvalues())
        return [g for t, s in pairs for y in ys for g in (one() - pu * t * y, one() - pu * s * y ** -1)]
    return [g for x in tau.eigenvalues() for y in ys for g in (one() - pu * x * y, one() - pu * x * y ** -1)]


def Q_poly(tau: SatakeDatum, pi: SatakeDatum, ctx: GroupContext) -> LaurentPolynomial:
    return product(_q_factors(tau, pi))


def verify_Q_identity(ctx: GroupContext, extra_range: str = "tau") -> bool:
    """Q == L(s+1/2, tau x pi)^-1 * d(tau, s) as rational functions."""
    tau, pi = tau_datum(ctx), pi_datum(ctx)
    lhs = RationalFunction.from_factors(_q_factors(tau, pi))
    L = shift_s(tensor_L(tau, pi, ctx, extra_range=extra_range), "s+1/2")
    rhs = RationalFunction.from_factors(L.factors, d_factor(tau, ctx).factors)
    return lhs == rhs


def P_star(ctx: GroupContext) -> RationalFunction:
    """zeta(chi_sigma, 1) / d(chi_tau) with the s-variable dropped."""
    d = d_factor(tau_datum(ctx), ctx, svar=False)
    return RationalFunction.from_factors(zeta_factors(sigma_slice(ctx), 1, ctx) + list(d.factors))


def gamma_gl(ctx: GroupContext, i: int) -> RationalFunction:
    """GL-part ratio for the simple reflection swapping x_i and x_{i+1}."""
    ok = 1 <= i <= ctx.ell
    if ctx.place == "split":
        ok = ok or ctx.m - ctx.ell <= i <= ctx.m - 1
    if not ok:
        raise OutOfRecursionRange(f"index {i} needs the analytic base case")
    xi, xn = var(f"x{i}"), var(f"x{i + 1}")
    return RationalFunction(one() - xn * xi ** -1 * var("p", 2), one() - xi * xn ** -1)


def phi0_element(tau: SatakeDatum, ctx: GroupContext) -> LaurentPolynomial:
    X = var("X")
    aux = [var(f"X{k}") for k in range(1, pi_count(ctx) + 1)]
    if tau.is_split_gl_pair():
        out = [(one() - P * t * X * a) * (one() - P * s * X * a ** -1)
               for t, s in zip(tau.eigenvalues(), tau.dual_eigenvalues()) for a in aux]
    else:
        out = [(one() - P * x * X * a) * (one() - P * x * X * a ** -1) for x in tau.eigenvalues() for a in aux]
    return product(out)


def c_function(chi: Sequence[str], ctx: GroupContext) -> RationalFunction:
    return RationalFunction.from_factors(zeta_factors(chi, 1, ctx), zeta_factors(chi, 0, ctx))


# -- composed right-hand sides ---------------------------------------------

def unramified_rhs(tau: SatakeDatum, sigma: SatakeDatum, pi: SatakeDatum, ctx: GroupContext) -> RationalFunction:
    """L(s+1/2, tau x pi) / (L(s+1, tau x sigma) L(2s+1, tau, square))."""
    if ctx.j != ctx.ell + 1:
        raise ValueError("the unramified right-hand side needs j = ell + 1")
    if not ctx.j < ctx.mtilde:
        raise ValueError("sigma must be nontrivial (j < mtilde)")
    if len({tau.place, sigma.place, pi.place, ctx.place}) != 1:
        raise PlaceMismatch("data from different places")
    num = shift_s(tensor_L(tau, pi, ctx), "s+1/2")
    den_sigma = shift_s(tensor_L(tau, sigma, ctx), "s+1")
    den_sq = shift_s(_square_for(tau, ctx), "2s+1")
    return RationalFunction.from_factors(den_sigma.factors + den_sq.factors, num.factors)


def eulerian_rhs(taus: Sequence[SatakeDatum], sigma: SatakeDatum, pi: SatakeDatum, ctx: GroupContext) -> RationalFunction:
    if not taus:
        raise ValueError("need at least one block")
    out = RationalFunction(one())
    for t in taus:
        out = out * unramified_rhs(t, sigma, pi, ctx)
    for a in range(len(taus)):
        for b in range(a + 1, len(taus)):
            out = out * RationalFunction.from_factors(gl_rankin_L(taus[a], taus[b], "2s+1").factors)
    return out
