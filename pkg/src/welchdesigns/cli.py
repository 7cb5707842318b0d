"""Command-line surface: one subcommand per pipeline stage, JSON-able reports.

Every report carries the primitive polynomial and tool version so runs are
reproducible; identical command + seed gives byte-identical artifacts apart
from the wall_time field.  Exit status is 0 only when every verdict in the
run succeeded, 2 when a certification was refuted (the witness is printed),
1 on unexpected errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .codes import (
    build_quadric_code,
    build_welch_code,
    dual,
    pless_consistency,
    predicted_a4_dual,
    predicted_weights_welch,
    shorten,
    shortened_wd_transfer,
    weight_distribution,
)
from .design import (
    blocks_disjoint,
    certify_support_design_streaming,
    cyclic_shift_permutation,
    enumerate_low_weight_dual_supports,
    format_blocks_text,
    frobenius_permutation,
    p_rank,
    support_design,
    verify_automorphism,
    verify_t_design,
)
from .gf import build_field
from .linalg import format_matrix_text
from .oracles import run_all
from .pg import ch_rank_formula, inequivalence_certificate, pg_point_line_design

MAX_MATERIALIZED_BLOCK_ENTRIES = 200_000_000

FAMILIES = {"welch": build_welch_code, "quadric": build_quadric_code}


def _build(n, family, poly_index=0):
    fp = build_field(n, poly_index)
    return fp, FAMILIES[family](fp)


def _write(outdir, name, text):
    if outdir is None:
        return None
    path = Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / name
    target.write_text(text)
    return str(target)


class Verdicts:
    """Collects (label, ok, witness) triples and decides the exit code."""

    def __init__(self):
        self.items = []

    def add(self, label, ok, witness=None):
        self.items.append({"check": label, "ok": bool(ok), "witness": witness})
        return ok

    @property
    def all_ok(self):
        return all(item["ok"] for item in self.items)


def _emit(report, verdicts, args):
    report["verdicts"] = verdicts.items
    report["version"] = __version__
    report["wall_time_s"] = round(time.time() - report.pop("_t0"), 3)
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        for key, value in report.items():
            if key == "verdicts":
                continue
            print(f"{key}: {value}")
        for item in verdicts.items:
            mark = "ok" if item["ok"] else "REFUTED"
            line = f"[{mark}] {item['check']}"
            if item["witness"] is not None and not item["ok"]:
                line += f"  witness: {item['witness']}"
            print(line)
    return 0 if verdicts.all_ok else 2


def cmd_field(args):
    t0 = time.time()
    fp = build_field(args.n, args.poly_index)
    verdicts = Verdicts()
    verdicts.add("decimation invertible and d*d0 = -1 (mod q-1)",
                 (fp.d * fp.d0) % (fp.q - 1) == fp.q - 2)
    report = {
        "_t0": t0,
        "command": "field",
        "parameters": {"n": args.n, "poly_index": args.poly_index},
        "prim_poly": list(fp.prim_poly),
        "results": {"q": fp.q, "d": fp.d, "d0": fp.d0, "coordinates": (fp.q - 1) // 2},
    }
    return _emit(report, verdicts, args)


def cmd_code(args):
    t0 = time.time()
    if args.emit == "wd" and 2 * args.n > 16:
        raise SystemExit(f"exhaustive weight distribution needs 2n <= 16, got n={args.n}")
    fp, code = _build(args.n, args.family)
    verdicts = Verdicts()
    results = {"length": code.length, "dimension": code.dimension, "family": code.family}
    if args.emit == "wd":
        wd = weight_distribution(code, threads=args.threads)
        results["weight_distribution"] = wd.as_json_dict()
        results["minimum_distance"] = wd.min_distance
        if code.family == "welch":
            predicted = predicted_weights_welch(fp.m)
            match = wd.counts == predicted.counts
            verdicts.add("computed distribution equals the closed form", match,
                         witness=None if match else predicted.as_json_dict())
        artifact = _write(args.out, f"wd_{code.family}_n{args.n}.json",
                          json.dumps(wd.as_json_dict(), indent=2) + "\n")
        if artifact:
            results["artifact"] = artifact
    elif args.emit == "generator":
        text = format_matrix_text(code.gen)
        artifact = _write(args.out, f"gen_{code.family}_n{args.n}.txt", text)
        if artifact:
            results["artifact"] = artifact
        else:
            print(text, end="")
    report = {
        "_t0": t0,
        "command": "code",
        "parameters": {"n": args.n, "family": args.family, "emit": args.emit},
        "prim_poly": list(fp.prim_poly),
        "results": results,
    }
    return _emit(report, verdicts, args)


def cmd_design(args):
    t0 = time.time()
    actions = set(args.actions.split(","))
    unknown = actions - {"extract", "verify", "rank", "automorphisms"}
    if unknown:
        raise SystemExit(f"unknown actions: {sorted(unknown)}")
    fp, code = _build(args.n, args.family)
    verdicts = Verdicts()
    results = {"weight": args.weight}
    dual_route = args.weight == 4
    verified = False

    if dual_route:
        low = enumerate_low_weight_dual_supports(code, w_max=4)
        verdicts.add("no dual codewords of weight 1..3",
                     not (low[1] or low[2] or low[3]),
                     witness=(low[1] + low[2] + low[3])[:3] or None)
        D = support_design(dual(code), 4)
        results["codewords"] = 2 * sum(D.multiplicity.tolist())
        tag = f"dual_w4_{args.family}_n{args.n}"
    else:
        streaming = certify_support_design_streaming(code, args.weight)
        results["codewords"] = streaming.codewords
        results["distinct_supports"] = streaming.distinct_supports
        results["multiplicity_histogram"] = streaming.multiplicity_histogram
        results["simple"] = streaming.simple
        if "verify" in actions:
            res = streaming.result
            ok = verdicts.add(f"weight-{args.weight} supports form a 2-design", res.ok,
                              witness=None if res.ok else
                              {"pair": res.witness, "count": res.count, "expected": res.expected})
            if ok:
                results["certificate"] = res.as_json_dict()
            verified = True
        needs_blocks = actions & {"extract", "rank", "automorphisms"}
        if needs_blocks and streaming.distinct_supports * args.weight > MAX_MATERIALIZED_BLOCK_ENTRIES:
            raise SystemExit(
                f"block list of {streaming.distinct_supports} x {args.weight} entries is too large "
                "to materialize; use weight 4 or a smaller field"
            )
        D = support_design(code, args.weight) if needs_blocks else None
        tag = f"primal_w{args.weight}_{args.family}_n{args.n}"

    rank3 = None
    if D is not None:
        results["v"] = D.v
        results["blocks"] = D.b
        results["simple"] = D.simple
        if "verify" in actions and not verified:
            res = verify_t_design(D, 2)
            ok = verdicts.add("support design is a 2-design", res.ok,
                              witness=None if res.ok else
                              {"pair": res.witness, "count": res.count, "expected": res.expected})
            if ok:
                results["certificate"] = res.as_json_dict()
        if "rank" in actions:
            rank3 = p_rank(D, 3)
            results["rank3"] = rank3
        if "automorphisms" in actions:
            shift_ok = verify_automorphism(D, cyclic_shift_permutation(D.v))
            frob_ok = verify_automorphism(D, frobenius_permutation(D.v))
            verdicts.add("cyclic shift preserves the block set", shift_ok)
            verdicts.add("frobenius permutation preserves the block set", frob_ok)
        if "extract" in actions:
            artifact = _write(args.out, f"blocks_{tag}.txt", format_blocks_text(D, 2))
            if artifact:
                results["blocks_file"] = artifact
        if "verify" in actions and "certificate" in results and rank3 is not None:
            results["certificate"]["rank3"] = rank3
            _write(args.out, f"certificate_{tag}.json",
                   json.dumps(results["certificate"], indent=2) + "\n")

    report = {
        "_t0": t0,
        "command": "design",
        "parameters": {"n": args.n, "family": args.family, "weight": args.weight,
                       "actions": sorted(actions)},
        "prim_poly": list(fp.prim_poly),
        "results": results,
    }
    return _emit(report, verdicts, args)


def cmd_pg(args):
    t0 = time.time()
    D = pg_point_line_design(args.n - 1)
    verdicts = Verdicts()
    res = verify_t_design(D, 2)
    verdicts.add("point-line structure is a 2-design with lambda = 1",
                 res.ok and res.lam == 1,
                 witness=None if res.ok else {"pair": res.witness, "count": res.count})
    results = {"v": D.v, "k": D.k, "blocks": D.b}
    if args.emit == "cert":
        rank3 = p_rank(D, 3)
        formula = ch_rank_formula(args.n, 3)
        verdicts.add("computed rank equals the closed-form rank", rank3 == formula,
                     witness={"computed": rank3, "formula": formula})
        results["certificate"] = res.as_json_dict(rank3=rank3)
        results["rank3_formula"] = formula
    else:
        artifact = _write(args.out, f"blocks_pointline_n{args.n}.txt", format_blocks_text(D, 2))
        if artifact:
            results["blocks_file"] = artifact
        else:
            print(format_blocks_text(D, 2), end="")
    report = {
        "_t0": t0,
        "command": "pg",
        "parameters": {"n": args.n, "emit": args.emit},
        "prim_poly": None,
        "results": results,
    }
    return _emit(report, verdicts, args)


def cmd_compare(args):
    t0 = time.time()
    fp = build_field(args.n)
    welch = build_welch_code(fp)
    quadric = build_quadric_code(fp)
    D_w = support_design(dual(welch), 4)
    D_q = support_design(dual(quadric), 4)
    verdicts = Verdicts()
    results = {}
    for name, D in (("welch", D_w), ("quadric", D_q)):
        res = verify_t_design(D, 2)
        verdicts.add(f"{name} dual weight-4 supports form a Steiner system",
                     res.ok and res.lam == 1,
                     witness=None if res.ok else {"pair": res.witness, "count": res.count})
    rank_w = p_rank(D_w, 3)
    rank_q = p_rank(D_q, 3)
    results["rank3_welch_design"] = rank_w
    results["rank3_quadric_design"] = rank_q
    results["welch_vs_point_line"] = inequivalence_certificate(D_w, args.n, rank_d=rank_w)
    results["quadric_vs_point_line"] = inequivalence_certificate(D_q, args.n, rank_d=rank_q)
    disjoint, shared = blocks_disjoint(D_w, D_q)
    results["block_sets_disjoint"] = disjoint
    if shared is not None:
        results["shared_block"] = shared
    report = {
        "_t0": t0,
        "command": "compare",
        "parameters": {"n": args.n},
        "prim_poly": list(fp.prim_poly),
        "results": results,
    }
    return _emit(report, verdicts, args)


def cmd_lemmas(args):
    t0 = time.time()
    fp = build_field(args.n)
    verdicts = Verdicts()
    reports = run_all(fp)
    for rep in reports:
        print(json.dumps(rep.as_json_dict(), default=str))
        verdicts.add(f"lemma oracle {rep.name}", rep.ok, witness=rep.witness)
    report = {
        "_t0": t0,
        "command": "lemmas",
        "parameters": {"n": args.n},
        "prim_poly": list(fp.prim_poly),
        "results": {"oracles": [rep.name for rep in reports]},
    }
    return _emit(report, verdicts, args)


def cmd_shorten(args):
    t0 = time.time()
    fp, code = _build(args.n, "welch")
    rng = random.Random(args.seed)
    T = sorted(rng.sample(range(code.length), args.t_size))
    shortened = shorten(code, T)
    wd_full = weight_distribution(code, threads=args.threads)
    wd_short = weight_distribution(shortened, threads=args.threads)
    predicted = shortened_wd_transfer(wd_full, args.t_size)
    verdicts = Verdicts()
    verdicts.add("computed shortened distribution equals the transfer formula",
                 wd_short.counts == predicted.counts,
                 witness={"computed": wd_short.as_json_dict(),
                          "transfer": predicted.as_json_dict()})
    results = {
        "T": T,
        "shortened_length": shortened.length,
        "shortened_dimension": shortened.dimension,
        "weight_distribution": wd_short.as_json_dict(),
    }
    artifact = _write(args.out, f"wd_shortened_n{args.n}_t{args.t_size}_seed{args.seed}.json",
                      json.dumps(wd_short.as_json_dict(), indent=2) + "\n")
    if artifact:
        results["artifact"] = artifact
    report = {
        "_t0": t0,
        "command": "shorten",
        "parameters": {"n": args.n, "t_size": args.t_size, "seed": args.seed},
        "prim_poly": list(fp.prim_poly),
        "results": results,
    }
    return _emit(report, verdicts, args)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="directory for emitted artifacts")
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--json", action="store_true", help="print the full report as JSON")

    parser = argparse.ArgumentParser(
        prog="welchdesigns",
        description="Ternary trace-sequence codes, their Steiner systems, and rank certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="build GF(3^n) and report parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly-index", type=int, default=0,
                   help="use the (index+1)-th primitive polynomial in lexicographic order")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("code", parents=[common], help="build a code and emit parameters/wd/generator")
    p.add_argument("--n", type=int, required=True, choices=[5, 7, 9, 11, 13])
    p.add_argument("--family", choices=sorted(FAMILIES), default="welch")
    p.add_argument("--emit", choices=["params", "wd", "generator"], default="params")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("design", parents=[common], help="extract and certify a support design")
    p.add_argument("--n", type=int, required=True, choices=[5, 7, 9, 11, 13])
    p.add_argument("--family", choices=sorted(FAMILIES), default="welch")
    p.add_argument("--weight", type=int, default=4,
                   help="4 targets the dual minimum weight; other values target the primal code")
    p.add_argument("--actions", default="extract,verify,rank,automorphisms")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("pg", parents=[common], help="build the point-line design of PG(n-1,3)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=["cert", "blocks"], default="cert")
    p.set_defaults(func=cmd_pg)

    p = sub.add_parser("compare", parents=[common],
                       help="rank and disjointness comparison of the three designs")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("lemmas", parents=[common], help="run the exhaustive lemma oracles")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("shorten", parents=[common], help="shorten on random positions and check the transfer")
    p.add_argument("--n", type=int, required=True, choices=[5, 7])
    p.add_argument("--t-size", type=int, choices=[1, 2], default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_shorten)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
