"""``symdual`` command-line interface.

Every subcommand writes JSON to stdout (``--pretty`` switches to a plain
table).  Exit status: 0 success or partial bound, 1 a check failed, 2 usage
or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import construct as cons
from . import matfile
from .catalog import Catalog
from .code import LinearCode, check_standard_symmetric, singleton_bound
from .distance import DistanceBound, find_low_weight, min_distance_bz
from .errors import (IneligibleParams, NoEligibleFound, NoSelfDualCompletion, ParseError,
                     SymdualError, UnknownBase)
from .gf import get_field
from .matrix import Mat
from .qdc import QdcSpec, pick, qdc_completions
from .search import SearchConfig, code_id, run_search, step_from_params
from .seeds import default_bases
from .solutionsets import PMatrix, SPair, enum_S_minus1, expected_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Failure(Exception):
    """A check failed; carries the payload to print."""

    def __init__(self, payload: dict[str, Any]):
        super().__init__(payload.get("error", "check failed"))
        self.payload = payload


def _emit(obj: Any, pretty: bool, out=None) -> None:
    out = out or sys.stdout
    if not pretty:
        out.write(json.dumps(obj) + "\n")
        return
    if isinstance(obj, list):
        for item in obj:
            _emit(item, True, out)
            out.write("\n")
        return
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, str) and "\n" in v:
                out.write(f"{k}:\n{v}")
            else:
                out.write(f"{str(k).ljust(width)}  {v if not isinstance(v, (dict, list)) else json.dumps(v)}\n")
        return
    out.write(f"{obj}\n")


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


# -- verify -----------------------------------------------------------------

def cmd_verify(args) -> dict[str, Any]:
    mf = matfile.read(args.path)
    c = mf.code
    checks = check_standard_symmetric(c)
    claimed = mf.claimed_distance
    checks["singleton"] = claimed is None or claimed <= singleton_bound(c)
    report = {"path": str(args.path), "p": c.p, "n": c.n, "k": c.k, "claimed_d": claimed,
              "checks": checks, "ok": all(checks.values())}
    if not report["ok"]:
        raise Failure(report)
    return report


# -- dist -------------------------------------------------------------------

def cmd_dist(args) -> dict[str, Any]:
    c = matfile.read(args.path).code
    budget = None if args.exact else args.budget
    target = None if args.exact else args.target
    bz = min_distance_bz(c, target=target, budget=budget, threads=args.threads)
    upper, witness = bz.upper, bz.witness
    if args.iterations and not bz.exact:
        low = find_low_weight(c, args.iterations, seed=args.seed)
        if low.weight < upper:
            upper, witness = low.weight, low.codeword
    bound = DistanceBound(lower=min(bz.lower, upper), upper=upper, enumerated=bz.enumerated,
                          completed=bz.completed, ranks=bz.ranks, witness=witness, seed=args.seed)
    return {"path": str(args.path), "n": c.n, "k": c.k, "p": c.p, **bound.to_dict()}


# -- construct --------------------------------------------------------------

def _params_A(c: LinearCode, args) -> cons.ConstructionAParams:
    if args.x is None or args.alpha is None or args.beta is None:
        raise IneligibleParams("method A needs --x, --alpha and --beta (or --auto)")
    ctx = c.ctx
    x = tuple(v % ctx.p for v in _ints(args.x))
    if len(x) != c.k:
        raise IneligibleParams(f"--x must have {c.k} entries")
    y = tuple(int(v) for v in (Mat([list(x)], ctx) @ c.right_block()).data[0])
    pair = cons.CodewordPair(x, y, sum(v * v for v in x) % ctx.p)
    s = args.s if args.s is not None else _first_root(ctx, pair.k - 1)
    t = args.t if args.t is not None else _first_root(ctx, -1 - pair.k)
    return cons.ConstructionAParams(pair, SPair(args.alpha, args.beta), s, t)


def _first_root(ctx, a: int) -> int:
    roots = ctx.sqrt(a)
    if not roots:
        raise IneligibleParams(f"{a % ctx.p} is not a square in GF({ctx.p})")
    return roots[0]


def _params_B(c: LinearCode, args) -> cons.ConstructionBParams:
    if args.x is None or args.alpha is None or args.beta is None:
        raise IneligibleParams("method B needs --x, --alpha and --beta (or --auto)")
    ctx = c.ctx
    x = tuple(v % ctx.p for v in _ints(args.x))
    P = PMatrix(args.alpha % ctx.p, args.beta % ctx.p, ctx.p)
    if args.H is not None:
        h = _ints(args.H)
        if len(h) != 3:
            raise IneligibleParams("--H takes three entries: h00 h01 h11")
        H = Mat([[h[0], h[1]], [h[1], h[2]]], ctx)
    else:
        Hs = cons.solve_H(cons.build_M(x, c.right_block(), P), P)
        if not Hs:
            raise IneligibleParams("no symmetric H solves (H+P)(H-P) = -M M^T")
        H = Hs[0]
    return cons.ConstructionBParams(x, P, H)


def cmd_construct(args) -> dict[str, Any] | str:
    base = matfile.read(args.base).code
    if not all(check_standard_symmetric(base).values()):
        raise IneligibleParams("base is not a standard-form symmetric self-dual code")
    if args.auto:
        rng = np.random.default_rng(args.seed)
        draw = cons.random_params_A if args.method == "A" else cons.random_params_B
        params = None
        for _ in range(args.attempts):
            params = draw(base, rng)
            if params is not None:
                break
        if params is None:
            raise NoEligibleFound(f"no eligible parameters in {args.attempts} attempts (seed {args.seed})")
    else:
        params = (_params_A if args.method == "A" else _params_B)(base, args)
    build = cons.construct_A if args.method == "A" else cons.construct_B
    out = build(base, params)
    trace = {"base": code_id(base), "steps": [step_from_params(params)]}
    if args.auto:
        trace["seed"] = args.seed
    text = matfile.dumps(out)
    if args.out is None:
        return text
    matfile.write(args.out, out)
    sidecar = Path(str(args.out) + ".trace.json")
    sidecar.write_text(json.dumps(trace, indent=1) + "\n")
    return {"out": str(args.out), "trace_file": str(sidecar), "id": code_id(out), "n": out.n,
            "k": out.k, "p": out.p, "seed": args.seed if args.auto else None, "trace": trace}


# -- search -----------------------------------------------------------------

def cmd_search(args) -> list[dict[str, Any]]:
    try:
        raw = json.loads(Path(args.config).read_text())
        cfg = SearchConfig.from_dict(raw)
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ParseError(f"bad search config: {exc}") from exc
    if args.threads > 1:
        cfg.threads = args.threads
    bases = [matfile.read(b).code for b in args.bases] if args.bases else default_bases(cfg.p)
    results = run_search(cfg, bases)
    cat = Catalog(args.catalog)
    out = []
    for r in results:
        rec = cat.add_result(r)
        out.append({"id": rec.id, "p": rec.p, "n": rec.n, "k": rec.k, "lower": r.bound.lower,
                    "upper": r.bound.upper, "status": rec.status, "seed": cfg.seed,
                    "trace": r.trace})
    return out


# -- catalog ----------------------------------------------------------------

def cmd_catalog(args) -> Any:
    cat = Catalog(args.catalog)
    if args.action == "list":
        rows = []
        bad = False
        for lr in cat:
            r = lr.record
            rows.append({"id": r.id, "p": r.p, "n": r.n, "k": r.k, "distance": r.distance,
                         "status": r.status, "ok": lr.ok, "problems": lr.problems})
            bad |= not lr.ok
        if bad:
            raise Failure({"records": rows, "error": "corrupted catalog records"})
        return rows
    if args.id is None:
        raise ParseError(f"catalog {args.action} needs a record id")
    try:
        lr = cat.load(args.id)
    except KeyError as exc:
        raise ParseError(f"no catalog record {args.id!r}") from exc
    if not lr.ok:
        raise Failure({"id": lr.record.id, "problems": lr.problems, "error": "corrupted record"})
    if args.action == "show":
        d = vars(lr.record).copy()
        d["matrix"] = matfile.dumps(lr.code)
        return d
    comments = [] if lr.record.distance is None else [f"# claimed d={lr.record.distance}"]
    text = matfile.dumps(lr.code, comments)
    if args.out:
        Path(args.out).write_text(text)
        return {"id": lr.record.id, "out": str(args.out)}
    return text


# -- qdc --------------------------------------------------------------------

def cmd_qdc(args) -> dict[str, Any]:
    spec = QdcSpec(args.p, args.ell, args.a, args.b, bordered=not args.pure)
    comps = qdc_completions(spec)
    if not comps:
        raise NoSelfDualCompletion(f"no self-dual completion for {spec}")
    chosen = pick(comps)
    listing = []
    for comp in comps if args.all else [chosen]:
        low = find_low_weight(comp.code, args.iterations, seed=args.seed, stop_at=args.expect)
        listing.append({"c": comp.c, "border": list(comp.border) if comp.border else None,
                        "canonical": comp.canonical, "upper": low.weight, "id": code_id(comp.code)})
    upper = next(x["upper"] for x in listing if x["id"] == code_id(chosen.code))
    if args.out:
        matfile.write(args.out, chosen.code, [f"# qdc p={args.p} l={args.ell} a={args.a} b={args.b}",
                                              f"# isd upper d<={upper}"])
    report = {"p": args.p, "ell": args.ell, "a": args.a, "b": args.b, "bordered": spec.bordered,
              "n": chosen.code.n, "k": chosen.code.k, "completions": len(comps),
              "canonical": chosen.canonical, "upper": upper, "seed": args.seed,
              "self_dual": check_standard_symmetric(chosen.code)["self_dual"], "listing": listing}
    if args.expect is not None:
        report["matches_expected"] = upper == args.expect
    if args.out:
        report["out"] = str(args.out)
    else:
        report["matrix"] = matfile.dumps(chosen.code)
    return report


# -- enum-sets --------------------------------------------------------------

def cmd_enum_sets(args) -> dict[str, Any]:
    ctx = get_field(args.p)
    pairs = [[s.alpha, s.beta] for s in enum_S_minus1(ctx)]
    return {"p": ctx.p, "count": len(pairs), "expected": expected_size(ctx.p), "pairs": pairs}


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--threads", type=int, default=1, help="worker threads for distance/search")

    ap = argparse.ArgumentParser(prog="symdual", description="Symmetric self-dual codes over GF(p).",
                                 parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="structural checks on a matrix file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dist", parents=[common], help="minimum distance bounds")
    d.add_argument("path")
    d.add_argument("--exact", action="store_true", help="run to completion, ignoring --target/--budget")
    d.add_argument("--target", type=int, help="stop once the lower bound reaches this weight")
    d.add_argument("--budget", type=int, help="maximum number of enumerated codewords")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--iterations", type=int, default=0,
                   help="extra randomized information-set iterations for the upper bound")
    d.set_defaults(func=cmd_dist)

    c = sub.add_parser("construct", parents=[common], help="extend a code by four coordinates")
    c.add_argument("method", choices=["A", "B"])
    c.add_argument("base")
    c.add_argument("--x", help="left half of the codeword (A) or the vector x (B)")
    c.add_argument("--alpha", type=int)
    c.add_argument("--beta", type=int)
    c.add_argument("--s", type=int, help="root of -1 + k (A); default smallest")
    c.add_argument("--t", type=int, help="root of -1 - k (A); default smallest")
    c.add_argument("--H", help="h00 h01 h11 (B); default first solution")
    c.add_argument("--auto", action="store_true", help="draw random eligible parameters")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--attempts", type=int, default=100)
    c.add_argument("--out", help="write matrix here plus a .trace.json sidecar")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", parents=[common], help="staged random search from a JSON config")
    s.add_argument("config")
    s.add_argument("--bases", nargs="*", help="base matrix files (default: built-in small bases)")
    s.add_argument("--catalog", help="catalog directory (default $SYMDUAL_CATALOG)")
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("catalog", parents=[common], help="inspect the code catalog")
    g.add_argument("action", choices=["list", "show", "export"])
    g.add_argument("id", nargs="?")
    g.add_argument("--catalog", help="catalog directory (default $SYMDUAL_CATALOG)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_catalog)

    q = sub.add_parser("qdc", parents=[common], help="quadratic double circulant code S_l(a, b)")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--pure", action="store_true", help="no border (length 2l)")
    q.add_argument("--all", action="store_true", help="score every completion")
    q.add_argument("--iterations", type=int, default=64)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--expect", type=int, help="expected distance; stops the search early once reached")
    q.add_argument("--out")
    q.set_defaults(func=cmd_qdc)

    e = sub.add_parser("enum-sets", parents=[common], help="solutions of a^2 + b^2 = -1")
    e.add_argument("p", type=int)
    e.set_defaults(func=cmd_enum_sets)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except Failure as exc:
        _emit(exc.payload, args.pretty)
        return EXIT_FAIL
    except (IneligibleParams, NoEligibleFound, NoSelfDualCompletion, UnknownBase) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return EXIT_FAIL
    except (ParseError, ValueError, KeyError, SymdualError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty, sys.stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        _emit(result, args.pretty)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
