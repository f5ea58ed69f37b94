"""Command-line front end.

Every verb prints JSON by default (``--format csv`` for tables) and exits
with 0 on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
import time

from .convolution import FiniteMap, Kernel, action_rank, convolve, map_from_json, steinberg_algebra
from .hecke import algebra, random_element
from .operators import degeneration_check, verify_realization
from .roots import cartan_type
from .schur_weyl import DEFAULT_GUARD, schur_weyl_check
from .springer import (
    DEFAULT_MAX_DIM, DrinfeldInput, FlagType, JordanData, component_count, dominant_weight,
    drinfeld_polynomials, extreme_flags, parse_scalar,
)
from .roots import irrep_dimension, weight_multiplicity

KINDS = ("finite", "affine", "degenerate", "nil")


class UsageError(Exception):
    pass


class Outcome:
    def __init__(self, payload, rows=None, passed=True, text=None):
        self.payload = payload
        self.rows = rows
        self.passed = passed
        self.text = text


def _int_list(text: str, flag: str):
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _cartan(text: str, flag="--type"):
    try:
        return cartan_type(text)
    except (ValueError, KeyError) as e:
        raise UsageError(f"{flag}: {e}") from None


def _kinds(text):
    if text == "all":
        return KINDS
    if text not in KINDS:
        raise UsageError(f"--algebra: expected one of {', '.join(KINDS + ('all',))}, got {text!r}")
    return (text,)


# ---------------------------------------------------------------- verbs

def cmd_hecke_mul(args):
    kind = _kinds(args.algebra)
    if len(kind) != 1:
        raise UsageError("--algebra: hecke-mul needs a single algebra")
    alg = algebra(kind[0], _cartan(args.type))
    try:
        value = alg.parse(args.expression)
    except (ValueError, ArithmeticError) as e:
        raise UsageError(f"expression: {e}") from None
    result = alg.format(value)
    reparsed = alg.parse(result)
    return Outcome({"type": alg.cartan.name, "algebra": kind[0], "input": args.expression,
                    "result": result, "roundtrip": reparsed == value},
                   passed=reparsed == value, text=result)


def cmd_hecke_check(args):
    cartan = _cartan(args.type)
    rng = random.Random(args.seed)
    rows, ok = [], True
    for kind in _kinds(args.algebra):
        alg = algebra(kind, cartan)
        failures = 0
        for _ in range(args.samples):
            a, b, c = (random_element(alg, rng) for _ in range(3))
            if (a * b) * c != a * (b * c):
                failures += 1
        rows.append({"algebra": kind, "check": "associativity", "samples": args.samples, "failures": failures})
        ok &= failures == 0
        if kind == "finite":
            one = alg.specialized({"q": 1})
            bad = sum(1 for w in one.W for u in one.W if one.basis(w) * one.basis(u) != one.basis(w * u))
            rows.append({"algebra": kind, "check": "q=1 group algebra", "samples": len(one.W) ** 2, "failures": bad})
            ok &= bad == 0
    return Outcome({"type": cartan.name, "seed": args.seed, "checks": rows, "pass": ok}, rows, ok)


def cmd_ops_verify(args):
    types = [_cartan(t) for t in args.type.split(",")]
    rows, ok, reports = [], True, []
    for cartan in types:
        for kind in _kinds(args.algebra):
            t0 = time.perf_counter()
            rep = verify_realization(kind, cartan, args.degree_bound)
            dt = time.perf_counter() - t0
            ok &= rep.passed
            rows.append({"type": cartan.name, "algebra": kind, "relations": len(rep.results),
                         "failures": len(rep.failures()), "seconds": round(dt, 3)})
            reports.append({"type": cartan.name, "algebra": kind, "pass": rep.passed,
                            "failures": [r.__dict__ for r in rep.failures()]})
    return Outcome({"degree_bound": args.degree_bound, "reports": reports, "summary": rows, "pass": ok}, rows, ok)


def cmd_degenerate(args):
    cartan = _cartan(args.type)
    if args.order < 2:
        raise UsageError("--order: must be at least 2")
    results = degeneration_check(cartan, args.order, args.q_scale, args.y_sign)
    rows = [{"relation": r.relation, "lowest_degree": r.lowest_degree, "scale": r.scale, "pass": r.passed}
            for r in results]
    ok = all(r.passed for r in results)
    return Outcome({"type": cartan.name, "order": args.order, "q_scale": args.q_scale, "y_sign": args.y_sign,
                    "results": [r.__dict__ for r in results], "pass": ok}, rows, ok)


def cmd_schur_weyl(args):
    if args.n < 1 or args.d < 0:
        raise UsageError("--n must be >= 1 and --d >= 0")
    try:
        rep = schur_weyl_check(args.n, args.d, args.guard, args.double_centralizer)
    except ValueError as e:
        raise UsageError(f"--guard: {e}") from None
    payload = rep.to_json()
    return Outcome(payload, [payload], rep.passed)


def _jordan(args, steps=True):
    jt = _int_list(args.jordan, "--jordan")
    try:
        x = JordanData(jt)
    except ValueError as e:
        raise UsageError(f"--jordan: {e}") from None
    if steps and args.steps < x.largest_block:
        raise UsageError(f"--steps: x^{args.steps} != 0 for Jordan type {x.jordan_type}")
    return x


def cmd_springer_weight(args):
    x = _jordan(args)
    wt = dominant_weight(x, args.steps)
    fmax, fmin = extreme_flags(x, args.steps)
    payload = {"jordan": list(x.jordan_type), "steps": args.steps, "dominant_weight": list(wt),
               "irrep_dimension": irrep_dimension(wt, args.steps),
               "fmax_dims": fmax.dims(), "fmin_dims": fmin.dims()}
    return Outcome(payload, [{"jordan": args.jordan, "steps": args.steps, "dominant_weight": ",".join(map(str, wt))}])


def cmd_springer_components(args):
    x = _jordan(args)
    if args.max_dim is not None and x.d > args.max_dim:
        raise UsageError(f"--max-dim: dimension {x.d} exceeds the guard {args.max_dim}")
    if args.flag_type.upper() == "ALL":
        t = "ALL"
    else:
        dims = _int_list(args.flag_type, "--flag-type")
        if len(dims) != args.steps or sum(dims) != x.d:
            raise UsageError(f"--flag-type: {dims} is not a composition of {x.d} into {args.steps} parts")
        t = FlagType(args.steps, dims)
    try:
        total, details = component_count(x, t, args.steps, args.max_dim, args.max_q)
    except ValueError as e:
        raise UsageError(f"--max-q: {e}") from None
    except ArithmeticError as e:
        return Outcome({"error": str(e), "pass": False}, None, False)
    wt = dominant_weight(x, args.steps)
    rows = []
    ok = True
    for r in details:
        k = weight_multiplicity(wt, r.flag_type, args.steps)
        ok &= k == r.count
        row = r.to_json()
        row["weight_multiplicity"] = k
        rows.append(row)
    expected = irrep_dimension(wt, args.steps) if t == "ALL" else rows[0]["weight_multiplicity"]
    ok &= total == expected
    payload = {"jordan": list(x.jordan_type), "steps": args.steps, "flag_type": args.flag_type,
               "dominant_weight": list(wt), "components": total, "expected": expected, "types": rows, "pass": ok}
    csv_rows = [{"flag_type": ",".join(map(str, r["flag_type"])), "degree": r["degree"],
                 "components": r["components"], "weight_multiplicity": r["weight_multiplicity"],
                 "polynomial": " ".join(r["polynomial"])} for r in rows]
    return Outcome(payload, csv_rows, ok)


def cmd_springer_drinfeld(args):
    x = _jordan(args)
    parts = [t for t in args.s.split(",") if t.strip()]
    if len(parts) != x.d:
        raise UsageError(f"--s: expected {x.d} entries, got {len(parts)}")
    names = set()
    for text in parts + [args.q]:
        try:
            names |= set(parse_scalar(text).variables)
        except ValueError as e:
            raise UsageError(f"--s/--q: {e}") from None
    names = tuple(sorted(names))
    s = [parse_scalar(t, names) for t in parts]
    q = parse_scalar(args.q, names)
    try:
        polys = drinfeld_polynomials(DrinfeldInput(s, q, x), args.steps)
    except ValueError as e:
        raise UsageError(f"--s: {e}") from None
    out = [p.to_str() for p in polys]
    payload = {"jordan": list(x.jordan_type), "steps": args.steps, "q": args.q, "s": parts, "polynomials": out}
    return Outcome(payload, [{"i": i + 1, "P": p} for i, p in enumerate(out)])


def cmd_convolution_demo(args):
    if args.map:
        try:
            with open(args.map, encoding="utf-8") as fh:
                mu = map_from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as e:
            raise UsageError(f"--map: {e}") from None
    else:
        images = [t for t in args.images.split(",") if t.strip()] if args.images else []
        mu = FiniteMap.from_list(images)
    alg = steinberg_algebra(mu)
    rows, ok = [], True
    for x, fib in alg.blocks.items():
        r = action_rank(mu, x)
        ok &= r == len(fib) ** 2
        rows.append({"fiber": str(x), "size": len(fib), "action_rank": r})
    # unit check on a couple of kernels
    M = mu.source
    for z in sorted(alg.support, key=repr)[:5]:
        k = Kernel(M, M, {z: 1})
        ok &= convolve(alg.unit, k) == k == convolve(k, alg.unit)
    ok &= alg.dimension == sum(len(b) ** 2 for b in alg.blocks.values())
    payload = alg.to_json()
    payload.update({"fibers": rows, "pass": ok})
    return Outcome(payload, rows, ok)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckelab", description="Hecke algebras, realizations and flag geometry.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json",
                        help="output format (default json)")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("hecke-mul", help="normal form of a product")
    sp.add_argument("--type", required=True, help="Cartan type such as A2, B2, G2")
    sp.add_argument("--algebra", default="finite", help="finite | affine | degenerate | nil")
    sp.add_argument("expression")
    common(sp)
    sp.set_defaults(func=cmd_hecke_mul)

    sp = sub.add_parser("hecke-check", help="random associativity battery")
    sp.add_argument("--type", required=True)
    sp.add_argument("--algebra", default="all")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_hecke_check)

    sp = sub.add_parser("ops-verify", help="verify operator realizations")
    sp.add_argument("--type", required=True, help="one type or a comma-separated list")
    sp.add_argument("--algebra", default="all")
    sp.add_argument("--degree-bound", type=int, default=4)
    common(sp)
    sp.set_defaults(func=cmd_ops_verify)

    sp = sub.add_parser("degenerate", help="q -> exp(eps) degeneration check")
    sp.add_argument("--type", required=True)
    sp.add_argument("--order", type=int, default=3)
    sp.add_argument("--q-scale", type=int, default=1, help="substitute q -> exp(q_scale * eps)")
    sp.add_argument("--y-sign", type=int, choices=(-1, 1), default=-1, help="substitute Y_lam -> exp(y_sign * lam)")
    common(sp)
    sp.set_defaults(func=cmd_degenerate)

    sp = sub.add_parser("schur-weyl", help="commutant vs enveloping image")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="maximum n^d (default 100)")
    sp.add_argument("--double-centralizer", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_schur_weyl)

    sp = sub.add_parser("springer-weight", help="dominant weight and extreme flags")
    sp.add_argument("--jordan", required=True, help="Jordan type, e.g. 2,1")
    sp.add_argument("--steps", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_springer_weight)

    sp = sub.add_parser("springer-components", help="component counts by point-count interpolation")
    sp.add_argument("--jordan", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--flag-type", default="ALL", help="composition such as 1,1 or ALL")
    sp.add_argument("--max-q", type=int, default=None, help="largest prime power allowed as a node")
    sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    common(sp)
    sp.set_defaults(func=cmd_springer_components)

    sp = sub.add_parser("springer-drinfeld", help="Drinfeld polynomials")
    sp.add_argument("--jordan", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--q", required=True, help="number or symbol")
    sp.add_argument("--s", required=True, help="diagonal of s, e.g. 3a,a")
    common(sp)
    sp.set_defaults(func=cmd_springer_drinfeld)

    sp = sub.add_parser("convolution-demo", help="algebra of M x_N M for a finite map")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="JSON file with source, target and map")
    g.add_argument("--images", help="comma-separated images of 0..m-1")
    common(sp)
    sp.set_defaults(func=cmd_convolution_demo)
    return p


def _render(outcome: Outcome, fmt: str) -> str:
    if fmt == "text" and outcome.text is not None:
        return outcome.text + "\n"
    if fmt == "csv":
        rows = outcome.rows if outcome.rows is not None else [outcome.payload]
        buf = io.StringIO()
        fields = []
        for r in rows:
            fields += [k for k in r if k not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    return json.dumps(outcome.payload, indent=2, default=str) + "\n"


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".heckelab-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _normalize_argv(argv):
    # ``springer weight ...`` is accepted as ``springer-weight ...``
    if len(argv) >= 2 and argv[0] == "springer" and argv[1] in ("weight", "components", "drinfeld"):
        return [f"springer-{argv[1]}"] + list(argv[2:])
    return list(argv)


def main(argv=None) -> int:
    argv = _normalize_argv(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        outcome = args.func(args)
    except UsageError as e:
        print(f"heckelab {args.verb}: error: {e}", file=sys.stderr)
        return 2
    text = _render(outcome, args.format)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0 if outcome.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
