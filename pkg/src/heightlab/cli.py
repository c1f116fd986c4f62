"""Command-line front end: curve data, heights, bounds, constructions and the verification suite."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import __version__
from .bounds import VARIANTS, BoundInput, bogomolov_bounds, bounds_for_curve
from .curves.points import CurvePoint, map_point, require_on_curve
from .curves.tate import minimal_model_at
from .curves.torsion import rational_point_search
from .curves.weierstrass import WeierstrassCurve
from .heights.canonical import canonical_height
from .heights.pairing import hoehe1_check
from .lattes import lattes_from_curve, lattes_height, small_height_sequence
from .numeric.arith import InputError, PrecisionError, fmt_q
from .numeric.real import DEFAULT_PRECISION, RealApprox, set_working_precision, tolerance
from .ramify import SearchExhausted, construct_unramified_point

SCHEMA = "heightlab/1"


@dataclass
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    hmax: float = 8.0
    smax: int = 12
    levels: int = 5
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.precision_bits < 64:
            raise InputError("precision must be at least 64 bits")
        if self.smax < 2:
            raise InputError("smax must be at least 2")
        if self.output not in ("json", "csv"):
            raise InputError("output must be json or csv")


class UsageError(InputError):
    pass


# --- helpers ------------------------------------------------------------------------

def _curve(args) -> WeierstrassCurve:
    if getattr(args, "curve", None) and getattr(args, "curve_long", None):
        raise UsageError("give either --curve or --curve-long, not both")
    if getattr(args, "curve", None):
        if len(args.curve.split(",")) != 2:
            raise UsageError("--curve expects 'A,B'")
        return WeierstrassCurve.parse(args.curve)
    if getattr(args, "curve_long", None):
        if len(args.curve_long.split(",")) != 5:
            raise UsageError("--curve-long expects 'a1,a2,a3,a4,a6'")
        return WeierstrassCurve.parse(args.curve_long)
    raise UsageError("a curve is required (--curve or --curve-long)")


def _q(x: Fraction) -> str:
    return fmt_q(x)


def _r(x: RealApprox) -> list[str]:
    return x.to_json()


def _flatten(prefix: str, obj, out: dict):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list) and obj and all(isinstance(v, dict) for v in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out[prefix] = json.dumps(obj) if isinstance(obj, (list, dict)) else obj


def emit(payload: dict, cfg: RunConfig, out_path: str | None, rows: list[dict] | None = None):
    """JSON document with the schema tag, or CSV rows (one per table entry, else one flattened row)."""
    if cfg.output == "json":
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    else:
        if rows is None:
            flat: dict = {}
            _flatten("", payload, flat)
            rows = [flat]
        else:
            rows = [{k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()}
                    for r in rows]
        buf = io.StringIO()
        keys: list = []
        for r in rows:
            keys += [k for k in r if k not in keys]
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------------

def cmd_curve_info(args, cfg):
    E = _curve(args)
    inv = E.invariants()
    res = {"curve": [_q(a) for a in E.ainvs], "c4": _q(inv["c4"]), "c6": _q(inv["c6"]),
           "disc": _q(inv["disc"]), "j": _q(inv["j"]), "h_j": _r(inv["h_j"]),
           "bad_primes": E.bad_primes()}
    if args.prime is not None:
        res["reduction"] = minimal_model_at(E, args.prime).to_json()
    if args.points:
        res["hmax"] = cfg.hmax
        res["points"] = [P.to_json() for P in rational_point_search(E, cfg.hmax)]
    emit({"command": "curve-info", "result": res}, cfg, args.out)
    return 0


def _lattes_x(E: WeierstrassCurve, P: CurvePoint):
    """The Lattes map of a short integral model of E and the x-coordinate of P there."""
    if E.is_short:
        return lattes_from_curve(E), P.x
    Es, T = E.short_integral_model()
    return lattes_from_curve(Es), map_point(T, P).x


def cmd_height(args, cfg):
    E = _curve(args)
    P = CurvePoint.parse(args.point)
    require_on_curve(E, P)
    eps = float(args.eps)
    h = canonical_height(E, P, eps)
    res = {"curve": [_q(a) for a in E.ainvs], "point": P.to_json(), "canonical_height": _r(h)}
    if args.lattes:
        if P.is_infinity:
            raise InputError("the point at infinity has no x-coordinate")
        f, x = _lattes_x(E, P)
        hf = lattes_height(f, x, eps)
        tol = tolerance(hf, h)
        if h.value == 0:
            ratio_ok = abs(hf.value) <= tol
            ratio = None
        else:
            ratio = hf / h
            ratio_ok = abs((hf - h * 2).value) <= tol
        res["lattes"] = {"map": str(f), "x": _q(x), "lattes_height": _r(hf),
                         "ratio": None if ratio is None else _r(ratio), "ratio_is_2": bool(ratio_ok)}
    if args.prime is not None:
        tab = hoehe1_check(E, args.prime, P, s_max=cfg.smax, eps=eps)
        res["split_table"] = {"p": tab.p, "multiplier": tab.multiplier, "Q": tab.Q.to_json(),
                              "h_Q": _r(tab.h_Q), "first_positive_s": tab.first_positive,
                              "rows": [r.to_json() for r in tab.rows], "ok": tab.ok}
    emit({"command": "height", "result": res}, cfg, args.out)
    return 0


def _parse_params(items: list[str]) -> dict:
    out = {}
    for it in items or []:
        if "=" not in it:
            raise UsageError(f"parameter {it!r} is not key=value")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


_PARAM_KEYS = {"p", "h_j", "d", "e", "j_ord", "H_j", "f", "nu", "k"}


def cmd_bound(args, cfg):
    params = _parse_params(args.params)
    unknown = set(params) - _PARAM_KEYS
    if unknown:
        raise UsageError(f"unknown parameters: {', '.join(sorted(unknown))}")
    variant = VARIANTS[args.variant]
    extra = {}
    if "f" in params:
        extra["f_res"] = int(params["f"])
    if "nu" in params:
        extra["nu"] = int(params["nu"])
    if "k" in params:
        extra["k_split"] = int(params["k"])
    e = int(params.get("e", 1))
    d = int(params.get("d", 1))
    if getattr(args, "curve", None) or getattr(args, "curve_long", None):
        E = _curve(args)
        if "p" not in params:
            raise UsageError("p=... is required")
        rep = bounds_for_curve(E, int(params["p"]), variant, e=e, d=d, **extra)
    else:
        if "p" not in params or ("h_j" not in params and "H_j" not in params):
            raise UsageError("without a curve, p=... and h_j=... (or H_j=...) are required")
        H = int(params["H_j"]) if "H_j" in params else None
        if "h_j" in params:
            hj = RealApprox(mpmath.mpf(params["h_j"]), 0)
        else:
            hj = RealApprox(mpmath.log(H), 0)
        inp = BoundInput(hj, int(params["p"]), d=d, e=e,
                         j_ord=int(params["j_ord"]) if "j_ord" in params else None, H_j=H, **extra)
        rep = bogomolov_bounds(inp, variant)
    emit({"command": "bound", "result": rep.to_json()}, cfg, args.out,
         rows=None if cfg.output == "json" else [{"name": k, "value": v} for k, v in rep.to_json()["trace"]])
    return 0


def cmd_verify(args, cfg):
    from .acceptance import run_suite

    results = run_suite(args.suite, cfg.seed)
    failures = [r.to_json() for r in results if not r.passed]
    for r in results:
        print(r.line(), file=sys.stderr)
    emit({"command": "verify", "suite": args.suite, "passed": not failures,
          "results": [r.to_json() for r in results], "failures": failures}, cfg, args.out,
         rows=None if cfg.output == "json" else
         [{"criterion": r.number, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3)}
          for r in results])
    return 0 if not failures else 1


def cmd_counterexample(args, cfg):
    levels = args.levels if args.levels is not None else cfg.levels
    seq = small_height_sequence(args.prime, levels)
    for lv in seq.levels:
        if lv.note:
            print(f"level {lv.level}: {lv.note}", file=sys.stderr)
    payload = seq.to_json()
    rows = [{"level": lv.level, "degree": lv.minpoly.degree, "hf_ratio": _q(lv.hf_exact),
             "unram_cert": lv.unram_cert.verdict, "naive_height": repr(lv.naive_height), "note": lv.note,
             "minpoly": str(lv.minpoly) if lv.minpoly.degree <= 16 else f"<degree {lv.minpoly.degree}>"}
            for lv in seq.levels]
    if cfg.output == "json":
        for entry, lv in zip(payload["levels"], seq.levels):
            entry["minpoly"] = [str(c) for c in lv.minpoly.coeffs]
    emit({"command": "counterexample", "result": payload}, cfg, args.out, rows=None if cfg.output == "json" else rows)
    return 0


def cmd_construct_point(args, cfg):
    E = _curve(args)
    R = construct_unramified_point(E, args.prime, args.cap)
    emit({"command": "construct-point", "result": R.to_json()}, cfg, args.out)
    return 0


# --- parser -------------------------------------------------------------------------

def _add_curve(sp):
    sp.add_argument("--curve", help='short form "A,B"')
    sp.add_argument("--curve-long", dest="curve_long", help='long form "a1,a2,a3,a4,a6"')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "csv"], default=None)
    common.add_argument("--out", help="write to FILE instead of stdout")
    common.add_argument("--precision", type=int, default=None, help="working precision in bits")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--hmax", type=float, default=None, help="naive-height cap for point searches")
    common.add_argument("--smax", type=int, default=None, help="largest s in the pair-sum tables")

    ap = argparse.ArgumentParser(prog="heightlab", description=__doc__, parents=[common])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("curve-info", parents=[common], help="invariants and local reduction data")
    _add_curve(sp)
    sp.add_argument("--prime", type=int)
    sp.add_argument("--points", action="store_true", help="list rational points with h(x) <= hmax")
    sp.set_defaults(func=cmd_curve_info)

    sp = sub.add_parser("height", parents=[common], help="canonical height of a rational point")
    _add_curve(sp)
    sp.add_argument("--point", required=True, help='"x,y" or "O"')
    sp.add_argument("--lattes", action="store_true", help="also the Lattes height of x(P)")
    sp.add_argument("--eps", default="1e-12")
    sp.add_argument("--prime", type=int, help="split multiplicative prime: add the s^2 inequality table")
    sp.set_defaults(func=cmd_height)

    sp = sub.add_parser("bound", parents=[common], help="evaluate a height lower bound")
    sp.add_argument("--variant", required=True, choices=sorted(VARIANTS))
    sp.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE",
                    help="p, h_j or H_j, d, e, j_ord, f, nu, k")
    _add_curve(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    sp.add_argument("--suite", default="all",
                    choices=["all", "numeric", "curves", "heights", "lattes", "ramify", "bounds"])
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("counterexample", parents=[common], help="small-height tower at an odd prime")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--levels", type=int, default=None, help="number of levels (default 5)")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("construct-point", parents=[common], help="non-torsion point over a field unramified at p")
    _add_curve(sp)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--cap", type=int, default=50)
    sp.set_defaults(func=cmd_construct_point)
    return ap


def _config(args) -> RunConfig:
    env = os.environ.get("HEIGHTLAB_PRECISION")
    bits = args.precision if args.precision is not None else int(env) if env else DEFAULT_PRECISION
    cfg = RunConfig(precision_bits=bits, output=args.output or "json",
                    seed=args.seed if args.seed is not None else 0)
    if args.hmax is not None:
        cfg.hmax = args.hmax
    if args.smax is not None:
        cfg.smax = args.smax
    cfg.__post_init__()
    return cfg


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
        set_working_precision(cfg.precision_bits)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (InputError, SearchExhausted, PrecisionError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
