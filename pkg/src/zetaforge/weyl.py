"""Group numerology, Weyl groups as signed permutations, alternating sums."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .symalg import Key, LaurentPolynomial, _make_key, _mul_keys, _norm, poly_sum

__all__ = [
    "GroupContext",
    "InvalidContext",
    "KINDS",
    "MAX_RANK",
    "RankTooLarge",
    "WeylElement",
    "act",
    "alternating_sum",
    "check_rank",
    "chi_vars",
    "enumerate_group",
    "make_context",
    "rho_monomial",
    "simple_reflection",
    "weyl_type",
]

KINDS = ("unitary-inert", "unitary-split", "so-odd", "so-even-split", "so-even-quasisplit")
MAX_RANK = 8


class InvalidContext(ValueError):
    pass


class RankTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class GroupContext:
    kind: str
    m: int
    n: int
    mtilde: int
    ell: int
    j: int
    dimV0: int
    mtildeH: int

    @property
    def place(self) -> str:
        return "split" if self.kind == "unitary-split" else "inert"

    @property
    def is_unitary(self) -> bool:
        return self.kind.startswith("unitary")

    @property
    def rank(self) -> int:
        """Number of character variables: m for the split unitary group."""
        return self.m if self.kind == "unitary-split" else self.mtilde

    @property
    def dimW(self) -> int:
        return self.m - 2 * self.ell

    @property
    def dimH(self) -> int:
        return self.m - 2 * self.ell - 1

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "mtilde": self.mtilde,
            "ell": self.ell,
            "j": self.j,
            "dimV0": self.dimV0,
            "mtildeH": self.mtildeH,
        }


def make_context(kind: str, m: int, ell: int = 0, j: int = 1, mtilde: int | None = None) -> GroupContext:
    """Build a validated context, deriving n, the Witt index and V0 from ``kind``."""
    if kind not in KINDS:
        raise InvalidContext(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if m < 1:
        raise InvalidContext("m must be positive")
    n = m // 2
    if kind == "so-even-split" or kind == "so-even-quasisplit":
        if m % 2:
            raise InvalidContext(f"{kind} needs even m")
    if kind == "so-odd" and m % 2 == 0:
        raise InvalidContext("so-odd needs odd m")
    default_mt = n - 1 if kind == "so-even-quasisplit" else n
    mt = default_mt if mtilde is None else mtilde
    if kind == "unitary-inert":
        dim0 = m - 2 * mt
        if dim0 > 2 or dim0 < 0:
            raise InvalidContext(f"anisotropic kernel of dimension {dim0} is impossible")
    elif mtilde is not None and mtilde != default_mt:
        raise InvalidContext(f"{kind} with m={m} has Witt index {default_mt}")
    else:
        dim0 = m - 2 * mt
    if not 0 <= ell < mt <= n:
        raise InvalidContext(f"need 0 <= ell < mtilde <= n, got ell={ell}, mtilde={mt}, n={n}")
    if not 0 <= j <= mt:
        raise InvalidContext(f"need 0 <= j <= mtilde, got j={j}")
    mtH = (m - 2 * ell - 1) // 2
    return GroupContext(kind, m, n, mt, ell, j, dim0, mtH)


def chi_vars(k: int, start: int = 1) -> list[str]:
    return [f"x{i}" for i in range(start, start + k)]


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: x_i goes to x_{perm[i]} ** flips[i] (0-based)."""

    perm: tuple[int, ...]
    flips: tuple[int, ...]

    @classmethod
    def identity(cls, k: int) -> "WeylElement":
        return cls(tuple(range(k)), (1,) * k)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """``self * other``: first act by ``other``, then by ``self``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        flips = tuple(other.flips[i] * self.flips[other.perm[i]] for i in range(len(self.perm)))
        return WeylElement(perm, flips)

    __mul__ = compose

    def inverse(self) -> "WeylElement":
        k = len(self.perm)
        perm = [0] * k
        flips = [1] * k
        for i, (t, f) in enumerate(zip(self.perm, self.flips)):
            perm[t] = i
            flips[t] = f
        return WeylElement(tuple(perm), tuple(flips))

    @property
    def sign(self) -> int:
        inv = sum(1 for a, b in itertools.combinations(self.perm, 2) if a > b)
        return (-1) ** inv * math.prod(self.flips)

    def rename_table(self, names: Sequence[str]) -> dict[str, tuple[str, int]]:
        return {names[i]: (names[self.perm[i]], self.flips[i]) for i in range(len(self.perm))}


def _check_rank(k: int, max_rank: int | None) -> None:
    bound = MAX_RANK if max_rank is None else max_rank
    if k > bound:
        raise RankTooLarge(f"rank {k} exceeds enumeration bound {bound}")
    if k < 1:
        raise ValueError("rank must be at least 1")


def check_rank(ctx: GroupContext, max_rank: int | None = None) -> None:
    """Raise RankTooLarge before any work when ctx's Weyl group is too big to enumerate."""
    _check_rank(weyl_type(ctx)[1], max_rank)


def enumerate_group(wtype: str, k: int, max_rank: int | None = None) -> Iterator[WeylElement]:
    """Stream the Weyl group of type A (S_k), B (or C) or D on k letters."""
    _check_rank(k, max_rank)
    wtype = wtype.upper()
    if wtype == "C":
        wtype = "B"
    if wtype not in ("A", "B", "D"):
        raise ValueError(f"unsupported Weyl type {wtype!r}")
    for perm in itertools.permutations(range(k)):
        if wtype == "A":
            yield WeylElement(perm, (1,) * k)
            continue
        for flips in itertools.product((1, -1), repeat=k):
            if wtype == "D" and math.prod(flips) == -1:
                continue
            yield WeylElement(perm, flips)


def simple_reflection(wtype: str, k: int, i: int) -> WeylElement:
    """The i-th simple reflection (1-based).

    Type A: transposition (i, i+1), 1 <= i < k.  Type B: the same for i < k
    and the sign change of x_k for i = k.  Type D: for i = k, the map
    x_{k-1} -> x_k^-1, x_k -> x_{k-1}^-1.
    """
    wtype = wtype.upper()
    perm = list(range(k))
    flips = [1] * k
    if 1 <= i < k:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    elif i == k and wtype in ("B", "C"):
        flips[k - 1] = -1
    elif i == k and wtype == "D" and k >= 2:
        perm[k - 2], perm[k - 1] = k - 1, k - 2
        flips[k - 2] = flips[k - 1] = -1
    else:
        raise ValueError(f"no simple reflection {i} in type {wtype}{k}")
    return WeylElement(tuple(perm), tuple(flips))


def weyl_type(ctx: GroupContext) -> tuple[str, int]:
    if ctx.kind == "unitary-split":
        return "A", ctx.m
    if ctx.kind in ("so-even-split", "so-even-quasisplit"):
        # the quasi-split even orthogonal group has relative root system B
        return ("D" if ctx.kind == "so-even-split" else "B"), ctx.mtilde
    return "B", ctx.mtilde


def _act_key(key: Key, table: dict) -> Key:
    changed = False
    out = {}
    for v, e in key:
        img = table.get(v)
        if img is None:
            out[v] = e
        else:
            changed = True
            out[img[0]] = e * img[1]
    return _make_key(out) if changed else key


def act(w: WeylElement, f: LaurentPolynomial, names: Sequence[str] | None = None) -> LaurentPolynomial:
    """Apply a signed permutation to the character variables of ``f``."""
    if names is None:
        names = chi_vars(len(w.perm))
    table = w.rename_table(names)
    return LaurentPolynomial._raw({_act_key(k, table): c for k, c in f.items()})


def rho_monomial(ctx: GroupContext) -> LaurentPolynomial:
    """prod x_i ** -((m+1)/2 - i) over the character variables of ``ctx``."""
    half = Fraction(ctx.m + 1, 2)
    return LaurentPolynomial.monomial(1, {f"x{i}": -(half - i) for i in range(1, ctx.rank + 1)})


Producer = Union[LaurentPolynomial, Callable[[WeylElement], LaurentPolynomial]]


def _split_by_pattern(terms, names) -> dict:
    """Group terms by their dense character-exponent vector."""
    index = {v: i for i, v in enumerate(names)}
    groups: dict[tuple, dict] = {}
    for key, c in terms:
        vec = [0] * len(names)
        rest = []
        for v, e in key:
            if v in index:
                vec[index[v]] = e
            else:
                rest.append((v, e))
        groups.setdefault(tuple(vec), {})[tuple(rest)] = c
    return groups


def _poly_chunk(args) -> dict:
    elements, terms, names = args
    groups = _split_by_pattern(terms, names)
    k = len(names)
    signed = [(w.perm, w.flips, w.sign) for w in elements]
    out: dict = {}
    for vec, rest in groups.items():
        orbit: dict[tuple, int] = {}
        for perm, flips, sgn in signed:
            img = [0] * k
            for i in range(k):
                img[perm[i]] = flips[i] * vec[i]
            img = tuple(img)
            orbit[img] = orbit.get(img, 0) + sgn
        for img, sgn in orbit.items():
            if not sgn:
                continue
            xkey = tuple((names[i], e) for i, e in enumerate(img) if e)
            for rkey, c in rest.items():
                nk = _mul_keys(xkey, rkey)
                s = out.get(nk, 0) + sgn * c
                if s:
                    out[nk] = s
                else:
                    del out[nk]
    return out


def _merge(parts) -> LaurentPolynomial:
    out: dict = {}
    for part in parts:
        for k, c in part.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
    return LaurentPolynomial._raw({k: _norm(c) for k, c in out.items()})


def _chunks(seq: list, count: int) -> list[list]:
    size = max(1, -(-len(seq) // count))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def alternating_sum(
    ctx: GroupContext,
    f: Producer,
    *,
    workers: int | None = None,
    shards: int | None = None,
    max_rank: int | None = None,
    processes: bool = False,
) -> LaurentPolynomial:
    """sum over w of sign(w) * w(rho) * f(w).

    ``f`` is either a callable on Weyl elements or a polynomial ``g``, read
    as ``w -> act(w, g)``; the latter takes a fast path computing
    ``act(w, rho * g)`` directly.  With ``shards``/``workers`` the group is
    partitioned, each part summed separately and the partial sums merged;
    the result equals the sequential sum exactly.
    """
    wtype, k = weyl_type(ctx)
    elements = list(enumerate_group(wtype, k, max_rank))
    names = chi_vars(k)
    rho = rho_monomial(ctx)
    nparts = shards or workers or 1
    parts = _chunks(elements, nparts)

    if isinstance(f, LaurentPolynomial):
        terms = list((rho * f).items())
        jobs = [(part, terms, names) for part in parts]
        if workers and workers > 1:
            pool_cls = ProcessPoolExecutor if processes else ThreadPoolExecutor
            with pool_cls(max_workers=workers) as pool:
                partials = list(pool.map(_poly_chunk, jobs))
        else:
            partials = [_poly_chunk(job) for job in jobs]
        return _merge(partials)

    def run(part):
        return poly_sum(act(w, rho, names) * f(w) * w.sign for w in part)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, parts))
    else:
        partials = [run(part) for part in parts]
    return _merge(dict(p.items()) for p in partials)
