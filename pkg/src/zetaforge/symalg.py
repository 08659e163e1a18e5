"""Exact multivariate Laurent polynomials and rational functions over Q.

Exponents live on the half-integer lattice and are stored doubled, so
``p**(1/2)`` is the key ``(("p", 1),)``.  Coefficients are ``int`` or
``fractions.Fraction``; no floating point is used anywhere.

Two reserved variables appear throughout the package:

``p``
    ``q_E ** (-1/2)``; so ``q_E**-1 == p**2`` and, at inert places,
    ``q_F**-1 == p``.
``u``
    ``q_E ** (-s)``; shifts in ``s`` are monomial substitutions on ``u``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "DivisionByZero",
    "InvalidSubstitution",
    "LaurentPolynomial",
    "MissingAssignment",
    "NonRationalValue",
    "RationalFunction",
    "as_poly",
    "one",
    "rf_equals",
    "var",
    "zero",
]

Coeff = Union[int, Fraction]
Key = tuple  # tuple[tuple[str, int], ...], doubled exponents, sorted by var_sort_key


class DivisionByZero(ZeroDivisionError):
    pass


class MissingAssignment(KeyError):
    pass


class NonRationalValue(ValueError):
    """A half-integer power of a non-square rational was requested."""


class InvalidSubstitution(ValueError):
    pass


# Ordering of the variable alphabet inside a monomial: character variables
# first, then the q- and s-carriers, so "x1*m1*u" reads like the formulas.
_PREFIX_RANK = {"x": 0, "t": 1, "s": 2, "m": 3, "X": 4, "p": 6, "u": 7}
_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


@lru_cache(maxsize=None)
def var_sort_key(name: str) -> tuple:
    match = _NAME_RE.match(name)
    if match is None:
        raise ValueError(f"bad variable name {name!r}")
    prefix, digits = match.groups()
    rank = _PREFIX_RANK.get(prefix, 10)
    if prefix == "X" and digits:
        rank = 5
    return (rank, prefix, int(digits) if digits else -1)


def _norm(c: Rational) -> Coeff:
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _doubled(e) -> int:
    d = Fraction(e) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {e} is not on the half-integer lattice")
    return int(d)


def _make_key(exps: Mapping[str, int]) -> Key:
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: var_sort_key(t[0])))


@lru_cache(maxsize=1 << 17)
def _mul_keys(a: Key, b: Key) -> Key:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return _make_key(acc)


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _fmt_exp(e2: int) -> str:
    if e2 % 2 == 0:
        return str(e2 // 2)
    return "{%d/2}" % e2


def _fmt_key(key: Key) -> str:
    parts = []
    for v, e2 in key:
        parts.append(v if e2 == 2 else f"{v}^{_fmt_exp(e2)}")
    return "*".join(parts)


def _exact_power(value: Fraction, e2: int) -> Fraction:
    """``value ** (e2/2)`` exactly, or raise."""
    if e2 % 2 == 0:
        return value ** (e2 // 2)
    if value < 0:
        raise NonRationalValue(f"square root of negative value {value}")
    value = Fraction(value)
    rn, rd = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if rn * rn != value.numerator or rd * rd != value.denominator:
        raise NonRationalValue(f"square root of {value} is not rational")
    return Fraction(rn, rd) ** e2


class LaurentPolynomial:
    """Sparse Laurent polynomial with rational coefficients.

    Terms are held in a dict keyed by exponent vector, so equality and
    hashing are semantic.  The canonical (graded-lex) order is computed on
    demand by :meth:`terms`.
    """

    __slots__ = ("_terms", "_hash", "_order")

    def __init__(self, terms: Mapping[Key, Rational] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = _norm(c)
        self._terms: dict[Key, Coeff] = clean
        self._hash = None
        self._order = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._order = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c: Rational) -> "LaurentPolynomial":
        return cls({(): c})

    @classmethod
    def monomial(cls, coeff: Rational = 1, exps: Mapping[str, Rational] | None = None) -> "LaurentPolynomial":
        """``coeff * prod(v**e)``; exponents may be half-integers."""
        if not coeff:
            raise InvalidSubstitution("zero monomial")
        key = _make_key({v: _doubled(e) for v, e in (exps or {}).items()})
        return cls({key: coeff})

    @classmethod
    def var(cls, name: str, exp: Rational = 1) -> "LaurentPolynomial":
        var_sort_key(name)
        return cls.monomial(1, {name: exp})

    # -- basic queries ------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Coeff:
        return self._terms.get((), 0)

    def items(self):
        """Unordered ``(key, coeff)`` pairs; keys carry doubled exponents."""
        return self._terms.items()

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for k in self._terms for v, _ in k}
        return tuple(sorted(names, key=var_sort_key))

    def _order_key(self):
        vs = self.variables

        def key(k):
            d = dict(k)
            return (-sum(e for _, e in k), tuple(-d.get(v, 0) for v in vs))

        return key

    def terms(self) -> list[tuple[Coeff, dict[str, Fraction]]]:
        """Terms in canonical order as ``(coeff, {var: exponent})``."""
        return [(c, {v: Fraction(e, 2) for v, e in k}) for k, c in self._sorted()]

    def _sorted(self) -> list[tuple[Key, Coeff]]:
        if self._order is None:
            self._order = sorted(self._terms.items(), key=lambda kc: self._order_key()(kc[0]))
        return self._order

    def leading_coefficient(self) -> Coeff:
        if not self._terms:
            return 0
        return self._sorted()[0][1]

    def degree_in(self, name: str) -> tuple[Fraction, Fraction]:
        """(min, max) exponent of ``name`` over all terms."""
        es = [dict(k).get(name, 0) for k in self._terms] or [0]
        return Fraction(min(es), 2), Fraction(max(es), 2)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other, self
        else:
            big, small = self, other
        out = dict(big._terms)
        for k, c in small._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Key, Coeff] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _mul_keys(k1, k2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LaurentPolynomial._raw({k: _norm(c) for k, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            return LaurentPolynomial({tuple((v, e * n) for v, e in k): Fraction(1, c) ** -n})
        result = one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero constant")
            inv = Fraction(1) / other
            return LaurentPolynomial._raw({k: _norm(c * inv) for k, c in self._terms.items()})
        return RationalFunction(self, as_poly(other))

    def __rtruediv__(self, other):
        return RationalFunction(as_poly(other), self)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def canonical(self) -> "LaurentPolynomial":
        """Re-canonicalize; a no-op on any value this module produced."""
        return LaurentPolynomial(dict(self._terms))

    # -- substitution and evaluation ---------------------------------
    def substitute(self, mapping: Mapping[str, "LaurentPolynomial | tuple"]) -> "LaurentPolynomial":
        """Ring homomorphism sending each mapped variable to a monomial.

        Images are monomial :class:`LaurentPolynomial` values or
        ``(coeff, {var: exponent})`` pairs.
        """
        images = {}
        for name, img in mapping.items():
            if isinstance(img, tuple):
                coeff, exps = img
                img = LaurentPolynomial.monomial(coeff, exps) if coeff else zero()
            img = as_poly(img)
            if not img.is_monomial():
                raise InvalidSubstitution(f"image of {name} must be a nonzero monomial, got {img}")
            ((k, c),) = img._terms.items()
            images[name] = (k, c)
        if not images:
            return self
        return LaurentPolynomial._raw(_substitute_terms(self._terms, images))

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        total = Fraction(0)
        for k, c in self._terms.items():
            val = Fraction(c)
            for v, e2 in k:
                if v not in point:
                    raise MissingAssignment(v)
                x = Fraction(point[v])
                if x == 0:
                    if e2 < 0:
                        raise DivisionByZero(f"{v}=0 with negative exponent")
                    val = Fraction(0)
                    break
                val *= _exact_power(x, e2)
            total += val
        return total

    # -- rendering ----------------------------------------------------
    def to_string(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (k, c) in enumerate(self._sorted()):
            neg = c < 0
            a = -c if neg else c
            mono = _fmt_key(k)
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    __str__ = to_string

    def __repr__(self):
        return f"LaurentPolynomial({self.to_string()!r})"


def _substitute_terms(terms: dict, images: dict) -> dict:
    out: dict[Key, Coeff] = {}
    for k, c in terms.items():
        coeff = Fraction(c)
        acc: dict[str, int] = {}
        for v, e2 in k:
            if v in images:
                ik, ic = images[v]
                if ic != 1:
                    coeff *= _exact_power(Fraction(ic), e2)
                for w, f2 in ik:
                    prod = f2 * e2
                    if prod % 2:
                        raise InvalidSubstitution(f"exponent of {w} leaves the half-integer lattice")
                    acc[w] = acc.get(w, 0) + prod // 2
            else:
                acc[v] = acc.get(v, 0) + e2
        key = _make_key(acc)
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        else:
            del out[key]
    return {k: _norm(c) for k, c in out.items()}


def as_poly(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPolynomial.constant(x)
    return NotImplemented


def zero() -> LaurentPolynomial:
    return LaurentPolynomial._raw({})


def one() -> LaurentPolynomial:
    return LaurentPolynomial._raw({(): 1})


def var(name: str, exp: Rational = 1) -> LaurentPolynomial:
    return LaurentPolynomial.var(name, exp)


def poly_sum(polys: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    """Sum many polynomials with a single accumulator."""
    out: dict[Key, Coeff] = {}
    for f in polys:
        for k, c in f._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
    return LaurentPolynomial._raw({k: _norm(c) for k, c in out.items()})


def product(polys: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    result = one()
    for f in polys:
        result = result * f
    return result


class RationalFunction:
    """``num / den``, held as two multisets of polynomial factors.

    Products and quotients only merge the multisets, and equality first
    cancels factors common to both sides of the cross-multiplication before
    expanding what is left, so long products of L-factors compare cheaply.
    The expanded :attr:`num`/:attr:`den` are computed on demand, with the
    denominator scaled to canonical leading coefficient 1 and monomial
    denominators (units of the Laurent ring) moved into the numerator.
    """

    __slots__ = ("_nf", "_df", "_num", "_den")

    def __init__(self, num=None, den=None):
        num = one() if num is None else as_poly(num)
        den = one() if den is None else as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunction needs polynomial parts")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self._nf = Counter({num: 1})
        self._df = Counter({den: 1})
        self._num = self._den = None

    @classmethod
    def from_factors(cls, num_factors: Iterable[LaurentPolynomial] = (),
                     den_factors: Iterable[LaurentPolynomial] = ()) -> "RationalFunction":
        nf, df = Counter(), Counter()
        for f in num_factors:
            nf[as_poly(f)] += 1
        for f in den_factors:
            f = as_poly(f)
            if f.is_zero():
                raise DivisionByZero("zero denominator factor")
            df[f] += 1
        return cls._make(nf, df)

    @classmethod
    def _make(cls, nf: Counter, df: Counter) -> "RationalFunction":
        obj = cls.__new__(cls)
        common = nf & df
        obj._nf = nf - common
        obj._df = df - common
        obj._num = obj._den = None
        return obj

    def _expand(self) -> None:
        nf, df = self._nf, self._df
        num = product(f ** k for f, k in sorted(nf.items(), key=_fkey))
        den = product(f ** k for f, k in sorted(df.items(), key=_fkey))
        if num.is_zero():
            den = one()
        elif den.is_monomial():
            num = num * den ** -1
            den = one()
        else:
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num / lc, den / lc
        self._num, self._den = num, den

    @property
    def num(self) -> LaurentPolynomial:
        if self._num is None:
            self._expand()
        return self._num

    @property
    def den(self) -> LaurentPolynomial:
        if self._den is None:
            self._expand()
        return self._den

    def factors(self) -> tuple[list, list]:
        """Unexpanded ``(numerator, denominator)`` factor lists."""
        return list(self._nf.elements()), list(self._df.elements())

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction._make(self._nf + other._nf, self._df + other._df)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction._make(self._nf + other._df, self._df + other._nf)

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self._df == other._df:
            return RationalFunction._make(Counter({self.num_product() + other.num_product(): 1}), Counter(self._df))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def num_product(self) -> LaurentPolynomial:
        return product(f ** k for f, k in self._nf.items())

    def __neg__(self):
        return RationalFunction._make(self._nf + Counter({LaurentPolynomial.constant(-1): 1}), Counter(self._df))

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        return RationalFunction._make(Counter({f: k * n for f, k in self._nf.items()}),
                                      Counter({f: k * n for f, k in self._df.items()}))

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction._make(Counter(self._df), Counter(self._nf))

    def is_zero(self) -> bool:
        return any(f.is_zero() for f in self._nf)

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        lz = any(f.is_zero() for f in self._nf)
        rz = any(f.is_zero() for f in other._nf)
        if lz or rz:
            return lz and rz
        left = self._nf + other._df
        right = other._nf + self._df
        common = left & right
        left, right = left - common, right - common
        return product(f ** k for f, k in left.items()) == product(f ** k for f, k in right.items())

    __hash__ = None

    def is_polynomial(self) -> bool:
        return self.den == 1

    def substitute(self, mapping) -> "RationalFunction":
        nf, df = Counter(), Counter()
        for f, k in self._nf.items():
            nf[f.substitute(mapping)] += k
        for f, k in self._df.items():
            g = f.substitute(mapping)
            if g.is_zero():
                raise DivisionByZero("denominator vanishes under substitution")
            df[g] += k
        return RationalFunction._make(nf, df)

    def evaluate(self, point) -> Fraction:
        d = Fraction(1)
        for f, k in self._df.items():
            d *= f.evaluate(point) ** k
        if d == 0:
            raise DivisionByZero("denominator vanishes at point")
        n = Fraction(1)
        for f, k in self._nf.items():
            n *= f.evaluate(point) ** k
        return n / d

    def to_string(self) -> str:
        if self.den == 1:
            return self.num.to_string()
        return f"({self.num.to_string()})/({self.den.to_string()})"

    __str__ = to_string

    def __repr__(self):
        return f"RationalFunction({self.to_string()!r})"


def _fkey(item):
    return (len(item[0]), item[0].to_string())


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    p = as_poly(x)
    if p is NotImplemented:
        return NotImplemented
    return RationalFunction(p)


def rf_equals(a, b) -> bool:
    """Cross-multiplication equality of two rational functions."""
    return _as_rf(a) == _as_rf(b)


def iter_monomials(f: LaurentPolynomial) -> Iterator[tuple[Coeff, Key]]:
    for k, c in f._terms.items():
        yield c, k
