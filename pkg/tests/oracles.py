"""Independent reference computations used by the tests.

These go through sympy (or plain enumeration) and share no code with the
package beyond reading its polynomials back.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

from zetaforge.symalg import LaurentPolynomial


def to_sympy(f: LaurentPolynomial) -> sp.Expr:
    out = sp.Integer(0)
    for key, c in f.items():
        term = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for v, e2 in key:
            term *= sp.Symbol(v, positive=True) ** sp.Rational(e2, 2)
        out += term
    return out


def sym(name: str) -> sp.Symbol:
    return sp.Symbol(name, positive=True)


def signed_perms(k: int, kind: str = "B"):
    """(perm, flips, sign) by direct enumeration; parity from inversions."""
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        psign = -1 if inv % 2 else 1
        flip_sets = [(1,) * k] if kind == "A" else itertools.product((1, -1), repeat=k)
        for flips in flip_sets:
            s = psign
            for f in flips:
                s *= f
            yield perm, flips, s


def apply_signed(expr: sp.Expr, perm, flips, names) -> sp.Expr:
    syms = [sym(n) for n in names]
    return expr.xreplace({syms[i]: syms[perm[i]] ** flips[i] for i in range(len(names))})


def rho_expr(m: int, k: int) -> sp.Expr:
    return sp.Mul(*[sym(f"x{i}") ** (-(sp.Rational(m + 1, 2) - i)) for i in range(1, k + 1)])


def zeta_expr(m: int, k: int, t: int, split: bool) -> sp.Expr:
    xs = [sym(f"x{i}") for i in range(1, k + 1)]
    p = sym("p")
    witt = k // 2 if split else k
    if witt <= 1:
        return sp.Integer(1)
    out = sp.Integer(1)
    for a in range(k):
        for b in range(a + 1, k):
            out *= 1 - xs[a] / xs[b] * p ** (2 * t)
            if not split:
                out *= 1 - xs[a] * xs[b] * p ** (2 * t)
    if not split:
        for x in xs:
            out *= (1 - x * p ** t) if m % 2 == 0 else (1 + x * p ** t) * (1 - x * p ** (2 * t))
    return out


def is_zero(expr: sp.Expr) -> bool:
    return sp.expand(expr) == 0
