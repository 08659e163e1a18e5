"""The acceptance battery: ten exact checks shared by the CLI and the tests."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import identity as idn
from . import lfactors as lf
from .orbits import CosetDatum, OrbitCountQuery, bessel_orbit_count, enumerate_eps
from .symalg import LaurentPolynomial, RationalFunction, one, var
from .weyl import InvalidContext, make_context

__all__ = ["CriterionResult", "CRITERIA", "run_suite", "grid_eps"]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    details: dict = field(default_factory=dict)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "elapsed_ms": round(self.elapsed * 1000, 1) if timing else None,
            "details": self.details,
        }


def _ctx_tag(ctx) -> str:
    return f"{ctx.kind} m={ctx.m} ell={ctx.ell} j={ctx.j}"


def c1_delta_antisymmetry() -> tuple[bool, dict]:
    start = time.perf_counter()
    out = {}
    for m in (5, 7):
        r = idn.check_delta_antisymmetry(make_context("unitary-inert", m))
        out[f"m={m}"] = {"status": r.status, "group_order": r.details["group_order"]}
    elapsed = time.perf_counter() - start
    ok = all(v["status"] == "verified" for v in out.values()) and elapsed < 5
    return ok, out


def c2_vanishing() -> tuple[bool, dict]:
    start = time.perf_counter()
    out = {}
    ok = True
    for ell in (1, 2):
        ctx = make_context("unitary-inert", 7, ell, ell + 1)
        zero_ok = nonzero_ok = 0
        bad = []
        for nvec in itertools.product(range(5), repeat=ell):
            s = idn.vanishing_sum(ctx, nvec)
            if idn.has_collision(ctx, nvec):
                good = s.is_zero()
                zero_ok += good
            else:
                good = not s.is_zero()
                nonzero_ok += good
            if not good:
                bad.append(list(nvec))
        ok = ok and not bad
        out[f"ell={ell}"] = {"vanishing": zero_ok, "nonvanishing": nonzero_ok, "mismatches": bad}
    ok = ok and time.perf_counter() - start < 10
    return ok, out


def c3_main_identity() -> tuple[bool, dict]:
    start = time.perf_counter()
    out = {}
    ok = True
    for m, ell in ((5, 1), (7, 1), (7, 2)):
        r = idn.main_delta_identity(make_context("unitary-inert", m, ell, ell + 1))
        ok = ok and r.status == "verified"
        out[f"inert m={m} ell={ell}"] = {
            "status": r.status,
            "mtildeH": r.ctx.mtildeH,
            "max_exponent": r.details["max_exponent"],
            "gap_hypothesis_holds": r.details["gap_hypothesis_holds"],
        }
    for m, ell in ((5, 1), (7, 1), (7, 2)):
        r = idn.main_delta_identity(make_context("unitary-split", m, ell, ell + 1))
        out[f"split m={m} ell={ell}"] = {"status": r.status}
    ok = ok and time.perf_counter() - start < 30
    return ok, out


def c4_q_identity() -> tuple[bool, dict]:
    out = {}
    ok = True
    for kind in ("unitary-inert", "unitary-split"):
        for m in (5, 6, 7):
            for j in (1, 2, 3):
                try:
                    ctx = make_context(kind, m, j - 1, j)
                except InvalidContext:
                    continue
                entry = {"tau": lf.verify_Q_identity(ctx, "tau")}
                ok = ok and entry["tau"]
                if kind == "unitary-inert" and m % 2 == 0:
                    entry["n"] = lf.verify_Q_identity(ctx, "n")
                out[_ctx_tag(ctx)] = entry
    return ok, out


def c5_cstar_ratios() -> tuple[bool, dict]:
    out = {}
    ok = True
    for kind in ("unitary-inert", "unitary-split"):
        for m in range(3, 8):
            for ell in range(0, 4):
                try:
                    ctx = make_context(kind, m, ell, ell + 1)
                except InvalidContext:
                    continue
                for i in range(1, ctx.rank + 1):
                    try:
                        r = idn.cstar_ratio_check(ctx, i)
                    except idn.IndexOutOfRange:
                        continue
                    ok = ok and r.ok
                    if not r.ok:
                        out[f"{_ctx_tag(ctx)} i={i}"] = {
                            "status": r.status,
                            "clause": r.details["clause"],
                            "opposite_orientation_holds": r.details.get("opposite_orientation_holds"),
                        }
                    else:
                        out.setdefault("verified", 0)
                        out["verified"] += 1
    return ok, out


ORBIT_TABLE = [
    ("(1)", OrbitCountQuery(1, 2, 2, 5, "unitary"), 2),
    ("(2)(a)", OrbitCountQuery(2, 2, 2, 5, "unitary"), 2),
    ("(2)(b)", OrbitCountQuery(2, 2, 2, 6, "orthogonal"), 2),
    ("(2)(c)", OrbitCountQuery(2, 2, 2, 5, "orthogonal"), 3),
    ("(3)", OrbitCountQuery(2, 2, 1, 5, "orthogonal"), 1),
    ("(4)", OrbitCountQuery(2, 2, 1, 4, "orthogonal"), 1),
]


def c6_orbit_counts() -> tuple[bool, dict]:
    got = {name: bessel_orbit_count(q) for name, q, _ in ORBIT_TABLE}
    ok = all(got[name] == want for name, _, want in ORBIT_TABLE)
    return ok, got


def grid_eps(kind: str, n: int, j: int, ell: int, mt: int) -> list[CosetDatum]:
    """Brute-force filter over the full (alpha, beta) grid."""
    out = []
    for alpha in range(0, j + 1):
        for beta in range(0, j + 1):
            if alpha <= beta and j <= ell + beta - alpha <= mt:
                out.append(CosetDatum(alpha, beta))
                if kind == "so-even-split" and ell + beta - alpha == n:
                    out.append(CosetDatum(alpha, beta, True))
    return sorted(out)


def _all_contexts(max_m: int):
    for kind in ("unitary-inert", "so-odd", "so-even-split", "so-even-quasisplit"):
        for m in range(1, max_m + 1):
            mts = {m // 2, m // 2 - 1} if kind == "unitary-inert" else {None}
            for mt in mts:
                for ell in range(0, m):
                    for j in range(0, m):
                        try:
                            yield make_context(kind, m, ell, j, mt)
                        except InvalidContext:
                            continue


def c7_coset_enumeration() -> tuple[bool, dict]:
    count = 0
    bad = []
    for ctx in _all_contexts(12):
        count += 1
        if enumerate_eps(ctx) != grid_eps(ctx.kind, ctx.n, ctx.j, ctx.ell, ctx.mtilde):
            bad.append(_ctx_tag(ctx))
    spot = [(d.alpha, d.beta) for d in enumerate_eps(make_context("unitary-inert", 7, 1, 2))]
    ok = not bad and spot == [(0, 1), (0, 2), (1, 2)]
    return ok, {"contexts": count, "mismatches": bad, "spot": spot}


def c8_degenerate_zeta() -> tuple[bool, dict]:
    cases = [("unitary-inert", 2), ("unitary-inert", 3), ("unitary-split", 2), ("unitary-split", 3),
             ("so-odd", 3), ("so-even-split", 2), ("so-even-quasisplit", 4)]
    out = {}
    ok = True
    for kind, m in cases:
        ctx = make_context(kind, m)
        assert ctx.mtilde == 1
        vals = [lf.zeta_poly(lf.full_chi(ctx), t, ctx) == 1 for t in (0, 1)]
        ok = ok and all(vals)
        out[f"{kind} m={m}"] = all(vals)
    return ok, out


def c9_eulerian() -> tuple[bool, dict]:
    out = {}
    ok = True
    for kind, m in (("unitary-inert", 7), ("unitary-split", 7), ("so-odd", 7), ("so-even-split", 8)):
        ctx = make_context(kind, m, 1, 2)
        t1, t2 = lf.split_block_data(ctx, [1, 1])
        sig, pi = lf.sigma_datum(ctx), lf.pi_datum(ctx)
        lhs = lf.eulerian_rhs([t1, t2], sig, pi, ctx)
        cross = lf.gl_rankin_L(t1, t2, "2s+1").value
        rhs = lf.unramified_rhs(t1, sig, pi, ctx) * lf.unramified_rhs(t2, sig, pi, ctx) / cross
        whole = lf.unramified_rhs(lf.tau_datum(ctx), sig, pi, ctx)
        entry = {"blocks": lhs == rhs, "matches_unblocked": lhs == whole}
        ok = ok and entry["blocks"]
        out[kind] = entry
    return ok, out


def _random_poly(rng: random.Random, names, terms: int = 3, span: int = 2, half: bool = False) -> LaurentPolynomial:
    f = LaurentPolynomial()
    for _ in range(rng.randint(0, terms)):
        exps = {v: Fraction(rng.randint(-span * (1 + half), span * (1 + half)), 1 + half)
                for v in rng.sample(names, rng.randint(0, len(names)))}
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if c:
            f = f + LaurentPolynomial.monomial(c, exps)
    return f


def _nonzero_poly(rng: random.Random, names) -> LaurentPolynomial:
    while True:
        f = _random_poly(rng, names, span=1)
        if not f.is_zero():
            return f


def c10_symalg_properties(seed: int = 2024, cases: int = 1000, pairs: int = 200) -> tuple[bool, dict]:
    rng = random.Random(seed)
    names = ["x1", "x2", "m1", "p", "u"]
    failures = 0
    for _ in range(cases):
        a, b, c = (_random_poly(rng, names, half=rng.random() < 0.3) for _ in range(3))
        checks = [
            (a + b) + c == a + (b + c),
            (a * b) * c == a * (b * c),
            a * (b + c) == a * b + a * c,
            a + b == b + a,
            a * b == b * a,
        ]
        # square coefficients keep half-integer powers rational
        sub = {"x1": (Fraction(rng.randint(1, 3), rng.randint(1, 2)) ** 2, {"x2": rng.randint(-2, 2), "u": 1}),
               "x2": (1, {"x2": -1}),
               "p": (rng.choice([1, 4]), {"p": 2})}
        checks.append((a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub))
        checks.append((a + b).substitute(sub) == a.substitute(sub) + b.substitute(sub))
        failures += not all(checks)
    mismatches = 0
    for k in range(pairs):
        g, h, w = (_nonzero_poly(rng, names[:3]) for _ in range(3))
        # even k: a common factor w is inserted; odd k: the numerator is shifted by h
        truth = k % 2 == 0
        num = g * w if truth else (g + h) * w
        mismatches += (RationalFunction(g, h) == RationalFunction(num, h * w)) != truth
    ok = failures == 0 and mismatches == 0
    return ok, {"ring_cases": cases, "ring_failures": failures, "pairs": pairs, "pair_mismatches": mismatches}


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, dict]]]] = [
    (1, "delta antisymmetry", c1_delta_antisymmetry),
    (2, "vanishing lemma", c2_vanishing),
    (3, "main delta identity", c3_main_identity),
    (4, "Q versus L consistency", c4_q_identity),
    (5, "P* ratio clauses", c5_cstar_ratios),
    (6, "orbit count table", c6_orbit_counts),
    (7, "coset enumeration", c7_coset_enumeration),
    (8, "degenerate zeta", c8_degenerate_zeta),
    (9, "eulerian composition", c9_eulerian),
    (10, "symalg properties", c10_symalg_properties),
]


def run_suite(only=None, progress: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for number, name, fn in CRITERIA:
        if only and number not in only:
            continue
        if progress:
            progress(f"criterion {number}: {name}")
        start = time.perf_counter()
        passed, details = fn()
        results.append(CriterionResult(number, name, passed, time.perf_counter() - start, details))
    return results
