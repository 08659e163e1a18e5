"""Command-line front end.

Every run prints one JSON document on stdout::

    {"command": ..., "context": ..., "result": {...}, "elapsed_ms": ...}

Exit status is 0 on success, 1 when an identity check fails and 2 on usage
or validation errors (the document then carries an ``error`` field).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import identity as idn
from . import lfactors as lf
from . import orbits as orb
from .suite import run_suite
from .symalg import RationalFunction
from .weyl import KINDS, GroupContext, InvalidContext, RankTooLarge, make_context

PRESET_ENV = "ZETAFORGE_PRESETS"
DEFAULT_PRESET_PATH = Path.home() / ".zetaforge_presets"
PRESET_KEYS = {"kind", "m", "ell", "j", "mtilde"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- presets ---------------------------------------------------------------

def parse_presets(text: str, source: str = "<presets>") -> dict[str, dict]:
    """Parse ``name = kind=... m=... ell=... j=...`` lines; ``#`` starts a comment."""
    table: dict[str, dict] = {}
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition("=")
        name = name.strip()
        if not sep or not name or " " in name:
            errors.append(f"{source}:{lineno}: expected 'name = key=value ...'")
            continue
        fields = {}
        for tok in rest.split():
            key, eq, val = tok.partition("=")
            if not eq or key not in PRESET_KEYS:
                errors.append(f"{source}:{lineno}: bad field {tok!r}")
                break
            if key == "kind":
                fields[key] = val
            else:
                try:
                    fields[key] = int(val)
                except ValueError:
                    errors.append(f"{source}:{lineno}: {key} must be an integer")
                    break
        else:
            if "kind" not in fields or "m" not in fields:
                errors.append(f"{source}:{lineno}: preset needs kind and m")
            elif name in table:
                errors.append(f"{source}:{lineno}: duplicate preset {name!r}")
            else:
                table[name] = fields
    if errors:
        raise UsageError("; ".join(errors))
    return table


def load_presets(path: str | os.PathLike | None = None) -> dict[str, dict]:
    if path is None:
        path = os.environ.get(PRESET_ENV) or DEFAULT_PRESET_PATH
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"preset file {path} not found")
    return parse_presets(text, str(path))


# -- argument plumbing -----------------------------------------------------

def _add_ctx(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--m", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--mtilde", type=int)
    p.add_argument("--preset")


def _default_m(kind: str, mtilde: int) -> int:
    if kind == "so-even-split":
        return 2 * mtilde
    if kind == "so-even-quasisplit":
        return 2 * mtilde + 2
    return 2 * mtilde + 1


def resolve_context(args) -> GroupContext:
    fields: dict = {}
    if args.preset:
        presets = load_presets()
        if args.preset not in presets:
            raise UsageError(f"unknown preset {args.preset!r}")
        fields.update(presets[args.preset])
    for key in ("kind", "m", "ell", "j", "mtilde"):
        val = getattr(args, key, None)
        if val is not None:
            fields[key] = val
    if "kind" not in fields:
        raise UsageError("--kind (or --preset) is required")
    if "m" not in fields:
        if "mtilde" not in fields:
            raise UsageError("--m or --mtilde is required")
        fields["m"] = _default_m(fields["kind"], fields["mtilde"])
    return make_context(fields["kind"], fields["m"], fields.get("ell", 0), fields.get("j", 1), fields.get("mtilde"))


def _rf_string(f: RationalFunction) -> str:
    return f.to_string()


def _blocks(args, ctx) -> list:
    sizes = [int(s) for s in args.blocks.split(",")] if args.blocks else [1] * ctx.j
    return lf.split_block_data(ctx, sizes)


# -- subcommands -----------------------------------------------------------

def cmd_lfactor(args) -> tuple[GroupContext, dict, int]:
    ctx = resolve_context(args)
    tau, sigma, pi = lf.tau_datum(ctx), lf.sigma_datum(ctx), lf.pi_datum(ctx)
    svar = not args.no_s
    what = args.what
    if what == "tensor":
        partner = sigma if args.partner == "sigma" else pi
        text = lf.tensor_L(tau, partner, ctx, svar, args.extra_range).render()
    elif what == "asai":
        text = lf.asai_L(tau, ctx, args.twist).render()
    elif what == "so-square":
        text = lf.so_square_L(tau, args.which).render()
    elif what == "gl-rankin":
        blocks = _blocks(args, ctx)
        if len(blocks) < 2:
            raise UsageError("gl-rankin needs at least two blocks (--blocks)")
        text = lf.gl_rankin_L(blocks[0], blocks[1], args.shift).render()
    elif what == "zeta":
        chi = {"full": lf.full_chi(ctx), "sigma": lf.sigma_slice(ctx), "tau": lf.tau_slice(ctx)}[args.slice]
        text = lf.zeta_poly(chi, args.t, ctx).to_string()
    elif what == "d":
        text = lf.d_factor(tau, ctx, svar).render()
    elif what == "Q":
        text = lf.Q_poly(tau, pi, ctx).to_string()
    elif what == "P-star":
        text = _rf_string(lf.P_star(ctx))
    elif what == "gamma":
        if args.i is None:
            raise UsageError("gamma needs --i")
        text = _rf_string(lf.gamma_gl(ctx, args.i))
    elif what == "phi0":
        text = lf.phi0_element(tau, ctx).to_string()
    elif what == "c":
        text = _rf_string(lf.c_function(lf.full_chi(ctx), ctx))
    elif what == "rhs":
        text = _rf_string(lf.unramified_rhs(tau, sigma, pi, ctx))
    elif what == "eulerian":
        text = _rf_string(lf.eulerian_rhs(_blocks(args, ctx), sigma, pi, ctx))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown object {what}")
    return ctx, {"polynomial": text}, 0


def cmd_orbits(args) -> tuple[GroupContext | None, dict, int]:
    if args.what == "count":
        need = ("dimX", "wittW", "wittW0perp", "dimW")
        if any(getattr(args, k) is None for k in need):
            raise UsageError("count needs --dimX --wittW --wittW0perp --dimW")
        q = orb.OrbitCountQuery(args.dimX, args.wittW, args.wittW0perp, args.dimW, args.family)
        return None, {"entries": [{"count": orb.bessel_orbit_count(q)}]}, 0
    ctx = resolve_context(args)
    if args.what == "eps":
        entries = [d.as_dict() for d in orb.enumerate_eps(ctx)]
    elif args.what == "survivor":
        entries = [orb.surviving_summand(ctx).as_dict()]
    else:
        entries = [f.as_dict() for f in orb.summand_fate(ctx)]
    return ctx, {"entries": entries}, 0


def cmd_jacquet(args) -> tuple[GroupContext | None, dict, int]:
    if args.place == "split":
        if None in (args.l1, args.l2, args.l3, args.j):
            raise UsageError("split needs --l1 --l2 --l3 --j")
        rows = orb.jacquet_constituents_split(args.l1, args.l2, args.l3, args.j)
        return None, {"entries": [r.as_dict() for r in rows]}, 0
    ctx = resolve_context(args)
    return ctx, {"entries": [r.as_dict() for r in orb.jacquet_constituents_inert(ctx)]}, 0


def _report_result(rep: idn.IdentityReport) -> tuple[dict, int]:
    res = {"status": rep.status}
    if not rep.witness.is_zero():
        res["witness"] = rep.witness.to_string()
    if rep.details:
        res["details"] = rep.details
    return res, 0 if rep.status != "failed" else 1


def cmd_verify(args) -> tuple[GroupContext, dict, int]:
    ctx = resolve_context(args)
    check = args.check
    if check == "delta-antisym":
        res, code = _report_result(idn.check_delta_antisymmetry(ctx, args.max_rank))
    elif check == "main-delta":
        res, code = _report_result(idn.main_delta_identity(ctx, args.workers, args.max_rank))
    elif check == "cstar":
        if args.i is None:
            raise UsageError("cstar needs --i")
        res, code = _report_result(idn.cstar_ratio_check(ctx, args.i))
    elif check == "vanishing":
        nvec = [int(s) for s in args.n.split(",")] if args.n else []
        s = idn.vanishing_sum(ctx, nvec, max_rank=args.max_rank)
        predicted = idn.has_collision(ctx, nvec)
        ok = s.is_zero() == predicted
        res = {"status": "verified" if ok else "failed", "polynomial": s.to_string(),
               "details": {"collision": predicted}}
        code = 0 if ok else 1
    elif check == "q-identity":
        ok = lf.verify_Q_identity(ctx, args.extra_range)
        res = {"status": "verified" if ok else "failed", "details": {"extra_range": args.extra_range}}
        code = 0 if ok else 1
    else:
        sig, pi = lf.sigma_datum(ctx), lf.pi_datum(ctx)
        lhs = lf.eulerian_rhs(_blocks(args, ctx), sig, pi, ctx)
        whole = lf.unramified_rhs(lf.tau_datum(ctx), sig, pi, ctx)
        ok = lhs == whole
        res = {"status": "verified" if ok else "failed"}
        if not ok:
            res["witness"] = (lhs - whole).num.to_string()
        code = 0 if ok else 1
    return ctx, res, code


def cmd_suite(args) -> tuple[None, dict, int]:
    only = {int(s) for s in args.only.split(",")} if args.only else None

    def progress(msg):
        print(msg, file=sys.stderr, flush=True)

    results = run_suite(only, progress)
    entries = [r.as_dict(timing=not args.no_timing) for r in results]
    ok = all(r.passed for r in results)
    return None, {"status": "verified" if ok else "failed", "entries": entries}, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetaforge", description="Exact unramified L-factor and Weyl-sum identity engine.")
    parser.add_argument("--no-timing", action="store_true", help="emit elapsed_ms as null (byte-stable output)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("lfactor", help="construct an L-factor or related polynomial")
    p.add_argument("what", choices=("tensor", "asai", "so-square", "gl-rankin", "zeta", "d", "Q", "P-star",
                                    "gamma", "phi0", "c", "rhs", "eulerian"))
    _add_ctx(p)
    p.add_argument("--partner", choices=("pi", "sigma"), default="pi")
    p.add_argument("--extra-range", choices=("tau", "n"), default="tau")
    p.add_argument("--twist", choices=("none", "xi^m"), default="none")
    p.add_argument("--which", choices=("exterior", "symmetric"), default="exterior")
    p.add_argument("--shift", choices=("2s+1", "s"), default="2s+1")
    p.add_argument("--slice", choices=("full", "sigma", "tau"), default="full")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--i", type=int)
    p.add_argument("--blocks", help="comma-separated block sizes of tau")
    p.add_argument("--no-s", action="store_true", help="drop the s-variable u")
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("orbits", help="coset and orbit bookkeeping")
    p.add_argument("what", choices=("eps", "survivor", "fate", "count"))
    _add_ctx(p)
    p.add_argument("--dimX", type=int)
    p.add_argument("--wittW", type=int)
    p.add_argument("--wittW0perp", type=int)
    p.add_argument("--dimW", type=int)
    p.add_argument("--family", choices=("unitary", "orthogonal"), default="unitary")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("jacquet", help="twisted Jacquet module constituents")
    p.add_argument("place", choices=("inert", "split"))
    _add_ctx(p)
    for k in ("l1", "l2", "l3"):
        p.add_argument(f"--{k}", type=int)
    p.set_defaults(func=cmd_jacquet)

    p = sub.add_parser("verify", help="run one identity check")
    p.add_argument("check", choices=("delta-antisym", "main-delta", "cstar", "vanishing", "q-identity", "eulerian"))
    _add_ctx(p)
    p.add_argument("--i", type=int)
    p.add_argument("--n", help="comma-separated exponents n_1..n_ell")
    p.add_argument("--extra-range", choices=("tau", "n"), default="tau")
    p.add_argument("--blocks")
    p.add_argument("--workers", type=int)
    p.add_argument("--max-rank", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run the full acceptance battery")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_suite)
    return parser


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=None, separators=(", ", ": ")))
        return
    if "error" in doc:
        print(f"error: {doc['error']}")
        return
    res = doc["result"]
    if "polynomial" in res and "status" not in res:
        print(res["polynomial"])
    if "status" in res:
        print(res["status"])
    if "witness" in res:
        print(res["witness"])
    for e in res.get("entries", []):
        print(" ".join(f"{k}={v}" for k, v in e.items()))


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--format=text" in argv or any(
        a == "--format" and b == "text" for a, b in zip(argv, argv[1:])) else "json"
    timing = "--no-timing" not in argv
    command = None
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        fmt, timing, command = args.format, not args.no_timing, args.command
        if command is None:
            raise UsageError("a subcommand is required")
        ctx, result, code = args.func(args)
    except (UsageError, InvalidContext, RankTooLarge, ValueError) as exc:
        doc = {"command": command, "error": str(exc)}
        _emit(doc, fmt)
        return 2
    elapsed = round((time.perf_counter() - start) * 1000, 1) if timing else None
    doc = {
        "command": command,
        "context": ctx.as_dict() if ctx is not None else None,
        "result": result,
        "elapsed_ms": elapsed,
    }
    _emit(doc, fmt)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
