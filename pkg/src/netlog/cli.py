"""Command line front end: ``netlog run|classify|restrict|stability|cohomology``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import runner
from .runner import Flags, ProblemError


def _range(text):
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--degree-window", type=_range, default=(-2, 6), metavar="a..b",
                   help="degrees tabulated in Hilbert data")
    p.add_argument("--gb-degree-cap", type=int, default=None, metavar="n",
                   help="degree cap for Groebner computations (default: $NETLOG_GB_DEGREE_CAP or 40)")
    p.add_argument("--verify-exactness", action="store_true", help="run the Hilbert-additivity checks")
    p.add_argument("--catalog", default=None, help="curve catalog JSON")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent tasks")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    return p


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="netlog", description="Net logarithmic tangent sheaves of complete intersection pairs")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", parents=[common], help="run every task of a problem file")
    r.add_argument("file")
    c = sub.add_parser("classify", parents=[common], help="singularities of the plane section V(F) ∩ V(H)")
    c.add_argument("F")
    c.add_argument("H")
    c.add_argument("--variables", default="x0,x1,x2,x3")
    s = sub.add_parser("restrict", parents=[common], help="splitting type along a catalog curve")
    s.add_argument("file")
    s.add_argument("--curve", required=True, action="append")
    s.add_argument("--module", default="reflexive", choices=("net", "reflexive"))
    t = sub.add_parser("stability", parents=[common], help="stability tasks of a problem file")
    t.add_argument("file")
    t.add_argument("--window", type=_range, default=None, metavar="a..b")
    h = sub.add_parser("cohomology", parents=[common], help="h^i of the net module over a range of twists")
    h.add_argument("file")
    h.add_argument("--range", type=_range, default=(-1, 3), metavar="t0..t1")
    h.add_argument("--module", default="net", choices=("net", "reflexive"))
    return ap


def _problem_for(args):
    if args.command == "classify":
        raw = {"variables": args.variables.split(","), "X": [args.F], "Y": [args.H],
               "tasks": [{"task": "classify"}]}
        return runner.Problem.from_json(raw)
    problem = runner.load_problem(args.file)
    raw = problem.raw
    if args.command == "restrict":
        raw = dict(raw, tasks=[{"task": "restrict", "curves": args.curve, "module": args.module}])
    elif args.command == "stability":
        tasks = [t for t in raw.get("tasks", []) if t.get("task") == "stability"]
        if not tasks:
            tasks = _default_stability(problem)
        if args.window is not None:
            tasks = [dict(t, window=list(args.window)) for t in tasks]
        raw = dict(raw, tasks=tasks)
    elif args.command == "cohomology":
        raw = dict(raw, tasks=[{"task": "cohomology", "range": list(args.range), "module": args.module}])
    else:
        return problem
    return runner.Problem.from_json(raw)


def _default_stability(problem):
    pair = problem.pair
    if pair is not None and pair.ring.nvars == 4 and pair.r == 1:
        d = pair.X[0].degree()
        if d == 2:
            return [{"task": "stability", "kind": "gieseker-quadric"}]
        if d == 3:
            return [{"task": "stability", "kind": "log-character"},
                    {"task": "stability", "kind": "mu-evidence"}]
    return []


def human(report) -> str:
    lines = [f"netlog {report['version']}"]
    for rec in report["results"]:
        head = f"[{rec['index']}] {rec['task']}: {rec['status']}"
        if rec["status"] != "ok":
            lines.append(f"{head}  {rec['error']}")
            continue
        lines.append(head)
        lines.extend("    " + l for l in _summarize(rec["task"], rec["result"]))
    for c in report.get("exactness", []):
        lines.append(f"exactness {c['check']}: {'ok' if c['ok'] else 'FAILED'} {c['detail']}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _summarize(kind, res):
    out = []
    if kind == "compute":
        for key in ("net", "reflexive"):
            blk = res.get(key)
            if not blk:
                continue
            out.append(f"{key}: HP = {blk['hilbert']['polynomial']}, locally free = {blk['locally_free']}")
            sh = blk.get("sheaf")
            if sh:
                out.append(f"  rank {sh['rank']}, c1.H = {sh['c1_dot_H']}, c2 = {sh['c2']}")
            if "c1_bidegree" in blk:
                out.append(f"  c1 = {tuple(blk['c1_bidegree'])}")
        if "defect" in res:
            out.append(f"HP(reflexive) - HP(net) = {res['defect']}")
    elif kind == "classify":
        out.append(f"mu(R) = {tuple(res['multiplicities'])}, label {res['label']}, l(R0) = {res['R0_length']}")
    elif kind == "restrict":
        for r in res:
            out.append(f"{r['curve']}: {tuple(r['splitting'])}")
    elif kind == "stability":
        if "verdict" in res:
            out.append(f"verdict: {res['verdict']}")
            if res.get("witness"):
                out.append(f"witness {tuple(res['witness']['class'])}: P_F = {res['witness']['P_F']}")
        else:
            out.append(json.dumps(res, sort_keys=True))
    elif kind == "cohomology":
        for k, v in sorted(res["table"].items()):
            out.append(f"{k} = {v}")
    else:
        out.append(json.dumps(res, sort_keys=True))
    return out


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.gb_degree_cap is not None:
        os.environ["NETLOG_GB_DEGREE_CAP"] = str(args.gb_degree_cap)
    flags = Flags(window=tuple(args.degree_window), verify_exactness=args.verify_exactness,
                  catalog=args.catalog, jobs=args.jobs)
    try:
        problem = _problem_for(args)
    except ProblemError as err:
        print(f"netlog: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"netlog: {err}", file=sys.stderr)
        return 2
    report, code = runner.run(problem, flags)
    text = runner.dumps(report) if args.json else human(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
