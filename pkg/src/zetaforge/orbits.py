"""Double-coset representatives, survival filtering, orbit counts, Jacquet tables.

Everything here is bookkeeping on small integer data: a coset datum is the
pair (alpha, beta) plus a flag for the second representative that the split
even orthogonal group carries when the isotropic part fills half of V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .weyl import GroupContext

__all__ = [
    "CosetDatum",
    "JacquetConstituent",
    "OrbitCountQuery",
    "SummandFate",
    "UnclassifiedCase",
    "bessel_orbit_count",
    "enumerate_eps",
    "jacquet_constituents_inert",
    "jacquet_constituents_split",
    "summand_fate",
    "surviving_summand",
]


class UnclassifiedCase(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CosetDatum:
    alpha: int
    beta: int
    twisted: bool = False

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "twisted": self.twisted}


def enumerate_eps(ctx: GroupContext) -> list[CosetDatum]:
    """All (alpha, beta) with 0 <= alpha <= beta <= j and j <= ell+beta-alpha <= mtilde.

    For the split even orthogonal group a pair with ell+beta-alpha = n has
    two representatives, emitted as ``twisted`` False and True.
    """
    j, ell, mt = ctx.j, ctx.ell, ctx.mtilde
    out = []
    for d in range(max(j - ell, 0), mt - ell + 1):
        # d = beta - alpha
        for alpha in range(0, j - d + 1):
            beta = alpha + d
            out.append(CosetDatum(alpha, beta))
            if ctx.kind == "so-even-split" and ell + d == ctx.n:
                out.append(CosetDatum(alpha, beta, True))
    return sorted(out)


@dataclass(frozen=True)
class Representative:
    datum: CosetDatum
    epsilon: str
    gamma: str
    epsilon_blocks: tuple[int, ...]
    gamma_blocks: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            **self.datum.as_dict(),
            "epsilon": self.epsilon,
            "gamma": self.gamma,
            "epsilon_blocks": list(self.epsilon_blocks),
            "gamma_blocks": list(self.gamma_blocks),
        }


def surviving_summand(ctx: GroupContext) -> Representative:
    """The single coset datum whose summand survives, with its (epsilon, gamma) shape."""
    j, ell, mt = ctx.j, ctx.ell, ctx.mtilde
    if not j < ctx.n:
        raise ValueError(f"need j < n, got j={j}, n={ctx.n}")
    beta = max(0, j - ell)
    datum = CosetDatum(0, beta)
    if j <= ell:
        return Representative(
            datum,
            epsilon=f"antidiag(I_{ell - j}, I_{j})",
            gamma=f"I_{ctx.m - 2 * ell}",
            epsilon_blocks=(ell - j, j),
            gamma_blocks=(ctx.m - 2 * ell,),
        )
    blocks = (j - ell, mt - j, ctx.dimV0, mt - j, j - ell)
    return Representative(
        datum,
        epsilon=f"I_{ell}",
        gamma="antidiag-ends(I_{0}; I_{1}, I_V0, I_{1})".format(j - ell, mt - j),
        epsilon_blocks=(ell,),
        gamma_blocks=blocks,
    )


@dataclass(frozen=True)
class OrbitCountQuery:
    dimX: int
    wittW: int
    wittW0perp: int
    dimW: int
    kind: str  # "unitary" or "orthogonal"

    def __post_init__(self):
        if self.kind not in ("unitary", "orthogonal"):
            raise ValueError(f"kind must be unitary or orthogonal, got {self.kind!r}")
        if not 0 < self.dimX <= self.wittW <= self.dimW // 2:
            raise ValueError("need 0 < dimX <= wittW <= dimW/2")


def bessel_orbit_count(q: OrbitCountQuery) -> int:
    """Size of P \\ G / H for the parabolic P fixing an isotropic X."""
    if q.dimX < q.wittW:
        return 2
    if q.dimW == 2 * q.dimX:
        return 1
    if q.wittW0perp == q.dimX == q.wittW:
        if q.kind == "unitary":
            return 2
        if q.dimW >= 2 * q.dimX + 2:
            return 2
        if q.dimW == 2 * q.dimX + 1:
            return 3
    if q.dimX == q.wittW and q.wittW0perp == q.dimX - 1:
        return 1
    raise UnclassifiedCase(f"no clause matches {q}")


@dataclass(frozen=True)
class SummandFate:
    datum: CosetDatum
    orbit_count: int
    reasons: tuple[str, ...]

    @property
    def survives(self) -> bool:
        return "survives" in self.reasons

    def as_dict(self) -> dict:
        return {**self.datum.as_dict(), "orbits": self.orbit_count, "reasons": list(self.reasons)}


def _reasons_for(count: int) -> tuple[str, ...]:
    # every orbit but the open one has a maximal parabolic stabilizer
    return ("cuspidal",) * (count - 1) + ("open-character",)


def summand_fate(ctx: GroupContext) -> list[SummandFate]:
    """Classify each coset summand by the mechanism that kills or keeps it.

    Reasons per orbit: ``alpha`` (alpha > 0 kills the whole summand),
    ``cuspidal`` (the stabilizer is a proper maximal parabolic),
    ``open-character`` (open orbit, but the character is nontrivial on the
    relevant unipotent group) and ``survives``.
    """
    if not ctx.j < ctx.mtilde:
        raise ValueError("classification needs j < mtilde")
    j, ell, mt = ctx.j, ctx.ell, ctx.mtilde
    base = max(0, j - ell)
    kind = "unitary" if ctx.is_unitary else "orthogonal"
    fates = []
    for d in enumerate_eps(ctx):
        if d.alpha > 0:
            fates.append(SummandFate(d, 0, ("alpha",)))
            continue
        if d.beta == base:
            if d.beta == 0:
                fates.append(SummandFate(d, 1, ("survives",)))
            else:
                fates.append(SummandFate(d, 2, ("cuspidal", "survives")))
            continue
        if ctx.kind == "so-even-split" and ell + d.beta == ctx.n:
            fates.append(SummandFate(d, 1, ("cuspidal",)))
            continue
        q = OrbitCountQuery(d.beta, mt - ell, ctx.mtildeH, ctx.m - 2 * ell, kind)
        count = bessel_orbit_count(q)
        fates.append(SummandFate(d, count, _reasons_for(count) if count > 1 else ("cuspidal",)))
    return fates


@dataclass(frozen=True)
class JacquetConstituent:
    family: str
    index: int | None
    t: int | None
    shift: Fraction | None
    second_shift: Fraction | None = None
    label: str = field(default="", compare=False)

    def as_dict(self) -> dict:
        def fmt(x):
            return None if x is None else str(x)

        return {
            "family": self.family,
            "index": self.index,
            "t": self.t,
            "shift": fmt(self.shift),
            "second_shift": fmt(self.second_shift),
            "label": self.label,
        }


def jacquet_constituents_inert(ctx: GroupContext) -> list[JacquetConstituent]:
    j, ell, mt = ctx.j, ctx.ell, ctx.mtilde
    if not (0 <= ell < mt and 1 <= j < ctx.m):
        raise ValueError("need 0 <= ell < mtilde and 1 <= j < m")
    out = []
    for beta in range(max(j - ell, 0), mt - ell):
        if beta > j:
            break
        t = j - beta
        shift = Fraction(1 - t, 2)
        out.append(JacquetConstituent(
            "Y1", beta, t, shift,
            label=f"ind_P'_{beta}(|det|^{shift} tau^({t}) x J(sigma^w^{t}))",
        ))
    if ell < j:
        shift = Fraction(-ell, 2)
        out.append(JacquetConstituent(
            "Y2", None, ell, shift,
            label=f"ind_P''_{j - ell}(|det|^{shift} tau_({ell}) x sigma^w^{ell})",
        ))
    out.append(JacquetConstituent("Y3", None, None, None, label="other double cosets"))
    return out


def jacquet_constituents_split(l1: int, l2: int, l3: int, j: int) -> list[JacquetConstituent]:
    if min(l1, l2, l3) < 0 or j > l1 + l2 + l3:
        raise ValueError("need nonnegative parts and j <= l1+l2+l3")
    h = Fraction(1, 2)
    out = []
    for beta in range(max(j - l3 + 1, 0), min(l2, j + 1)):
        t = j - beta
        a, b = (1 - t + l3 - l1) * h, t * h
        out.append(JacquetConstituent(
            "L1", beta, t, a, b,
            label=f"Ind(|.|^{a} tau1^({t})) x |.|^{b} J(tau2)",
        ))
    for r in range(max(1, j - l2 - l3), min(j - l3 - 1, l1) + 1):
        a, b = -(l1 - r) * h, (l3 - r - 1) * h
        out.append(JacquetConstituent(
            "L2", r, None, a, b,
            label=f"Ind(|.|^{a} J(tau1)) x |.|^{b} tau2^[{l1 - r}]",
        ))
    if 0 < j - l3 <= l2:
        a, b = -l1 * h, (l3 - 1) * h
        out.append(JacquetConstituent("L3", None, l3, a, b, label=f"Ind(|.|^{a} (tau1)_({l3})) x |.|^{b} tau2^[{l1}]"))
    elif l3 == j:
        a, b = Fraction(0), -l3 * h
        out.append(JacquetConstituent("L3", None, j, a, b, label=f"tau1^({j}) x |det|^{b} tau2_[{l1}]"))
    if 0 < j - l3 < l2:
        a, b = (1 - l1) * h, l3 * h
        out.append(JacquetConstituent("L4", None, l3, a, b, label=f"Ind(|.|^{a} (tau1)^({l3})) x |.|^{b} tau2_[{l1}]"))
        a = -l1 * h
        out.append(JacquetConstituent("L5", None, l3, a, b, label=f"ind(|.|^{a} (tau1)_({l3})) x |.|^{b} tau2_[{l1}]"))
    return out
