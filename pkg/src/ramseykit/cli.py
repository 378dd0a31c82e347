"""Command-line surface.

Every run prints exactly one JSON document (the deterministic run
payload) on stdout and a short human-readable report on stderr.  Exit
codes: 0 success, 1 failed audit, 2 input error, 3 budget exhausted
(the lower bound is still printed), 4 infeasible enumeration.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from ._backend import BACKEND
from .audits import (AuditOutcome, audit_counting, audit_gap, audit_ladder_a,
                     audit_ladder_b, audit_schroder, audit_tree_measure)
from .core import Achromatic, Free, Homogeneous, Rainbow, Thin
from .files import (ColoringFileError, coloring_to_dict, load_coloring,
                    payload_json, run_payload, save_coloring, write_csv,
                    write_record)
from .reductions import (NotTwoBounded, rainbow_to_free, trap_decompose,
                         truncate)
from .search import (DEFAULT_ENUMERATION_LIMIT, InfeasibleEnumeration,
                     SearchBudget, max_witness, partition_number)
from .generators import random_coloring

EXIT_OK = 0
EXIT_AUDIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INFEASIBLE = 4


class InputError(ValueError):
    """User input rejected; maps to exit code 2."""


def _parse_spec(name: str, d: int | None, universe: str | None):
    if name == "homogeneous":
        return Homogeneous()
    if name == "achromatic":
        if d is None:
            raise InputError("--spec achromatic requires --d")
        return Achromatic(d)
    if name == "free":
        return Free()
    if name == "rainbow":
        return Rainbow()
    if name == "thin":
        if not universe:
            raise InputError("--spec thin requires --universe, e.g. 0,1,2")
        try:
            colors = tuple(int(x) for x in universe.split(","))
        except ValueError:
            raise InputError(f"bad universe {universe!r}") from None
        return Thin(colors)
    raise InputError(f"unknown spec {name!r}")


def _spec_parameters(args) -> dict:
    return {
        "spec": args.spec,
        "d": args.d,
        "universe": args.universe,
    }


# --- command handlers ---------------------------------------------------------

def _cmd_witness(args):
    f = load_coloring(args.file)
    spec = _parse_spec(args.spec, args.d, args.universe)
    budget = SearchBudget(args.node_limit) if args.node_limit else None
    result = max_witness(f, spec, budget=budget, threads=args.threads)
    parameters = _spec_parameters(args)
    parameters["node_limit"] = args.node_limit
    parameters["input"] = coloring_to_dict(f)
    payload = run_payload("witness", parameters, None, {
        "size": result.size,
        "witness": list(result.witness),
        "palette": list(result.palette),
        "certified": result.certified,
    })
    notes = [
        f"witness size {result.size}: {list(result.witness)}",
        f"palette: {list(result.palette)}",
        f"certified: {result.certified} (explored {result.explored} nodes)",
    ]
    rows = [{"command": "witness", "kind": args.spec, "seed": "", "trial": 0,
             "metric": "size", "value": result.size,
             "status": "certified" if result.certified else "lower-bound"}]
    code = EXIT_OK if result.certified else EXIT_BUDGET
    return payload, notes, rows, code


def _cmd_number(args):
    spec = _parse_spec(args.spec, args.d, None)
    if not isinstance(spec, (Homogeneous, Achromatic)):
        raise InputError("number supports homogeneous/achromatic specs only")
    outcome = partition_number(args.r, args.c, spec, args.m, args.n_max,
                               limit=args.limit, canonical=args.canonical)
    counterexample = (coloring_to_dict(outcome.counterexample)
                      if outcome.counterexample else None)
    parameters = {
        "r": args.r, "c": args.c, "spec": args.spec, "d": args.d,
        "m": args.m, "n_max": args.n_max, "limit": args.limit,
        "canonical": args.canonical,
    }
    payload = run_payload("number", parameters, None, {
        "number": outcome.number,
        "counterexample": counterexample,
        "counterexample_n": outcome.counterexample_n,
        "scanned": [list(pair) for pair in outcome.scanned],
    })
    if args.counterexample_out and outcome.counterexample:
        save_coloring(outcome.counterexample, args.counterexample_out)
    notes = [
        f"partition number: {outcome.number}",
        f"counterexample at n={outcome.counterexample_n}",
        f"vectors scanned: {outcome.scanned}",
    ]
    rows = [{"command": "number", "kind": args.spec, "seed": "", "trial": 0,
             "metric": "number",
             "value": outcome.number if outcome.number is not None else "",
             "status": "ok" if outcome.number is not None else "not-found"}]
    return payload, notes, rows, EXIT_OK


def _cmd_reduce(args):
    f = load_coloring(args.file)
    if args.kind == "truncate":
        if args.d is None:
            raise InputError("reduce truncate requires --d")
        outputs = [truncate(f, args.d)]
    elif args.kind == "rainbow2free":
        outputs = [rainbow_to_free(f)]
    elif args.kind == "trapdecompose":
        outputs = list(trap_decompose(f))
    else:
        raise InputError(f"unknown reduction {args.kind!r}")

    written = []
    if args.kind == "trapdecompose":
        if args.out_prefix:
            for k, g in enumerate(outputs):
                path = f"{args.out_prefix}_f{k}.json"
                save_coloring(g, path)
                written.append(path)
    elif args.out:
        save_coloring(outputs[0], args.out)
        written.append(args.out)

    parameters = {"kind": args.kind, "d": args.d,
                  "input": coloring_to_dict(f)}
    payload = run_payload("reduce", parameters, None, {
        "outputs": [coloring_to_dict(g) for g in outputs],
    })
    notes = [f"{args.kind}: {len(outputs)} coloring(s) produced"]
    notes.extend(f"wrote {path}" for path in written)
    rows = [{"command": "reduce", "kind": args.kind, "seed": "", "trial": i,
             "metric": "colorCount", "value": g.color_count if g.color_count else "",
             "status": "ok"} for i, g in enumerate(outputs)]
    return payload, notes, rows, EXIT_OK


def _cmd_audit(args):
    outcome: AuditOutcome
    if args.kind == "counting":
        outcome = audit_counting(args.trials, args.seed)
    elif args.kind == "ladderA":
        outcome = audit_ladder_a(args.r, args.depth, args.trials, args.seed,
                                 cap=args.cap)
    elif args.kind == "ladderB":
        outcome = audit_ladder_b(args.stem_len, args.k, args.c, args.depth)
    elif args.kind == "tree-measure":
        outcome = audit_tree_measure(args.trials, args.seed)
    elif args.kind == "schroder":
        outcome = audit_schroder(args.max)
    elif args.kind == "gap":
        outcome = audit_gap(args.max)
    else:
        raise InputError(f"unknown audit kind {args.kind!r}")

    parameters = {
        "kind": args.kind, "trials": args.trials, "r": args.r,
        "depth": args.depth, "stem_len": args.stem_len, "k": args.k,
        "c": args.c, "max": args.max, "cap": args.cap,
    }
    payload = run_payload("audit", parameters, args.seed, {
        "pass": outcome.passed,
        "summary": outcome.summary,
    })
    ok_rows = sum(1 for row in outcome.rows if row["status"] != "violated")
    notes = [
        f"audit {args.kind}: {'PASS' if outcome.passed else 'FAIL'}",
        f"rows: {ok_rows}/{len(outcome.rows)} satisfied",
    ]
    notes.extend(_format_table(outcome.rows))
    notes.append(f"summary: {outcome.summary}")
    code = EXIT_OK if outcome.passed else EXIT_AUDIT_FAILED
    return payload, notes, list(outcome.rows), code


def _format_table(rows, limit: int = 20) -> list[str]:
    """Aligned trial/metric/value/status columns, truncated for long runs."""
    if not rows:
        return []
    shown = list(rows[:limit])
    cols = ("trial", "metric", "value", "status")
    cells = [[str(row.get(c, "")) for c in cols] for row in shown]
    widths = [max(len(h), *(len(row[i]) for row in cells))
              for i, h in enumerate(cols)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(cols, widths))]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    if len(rows) > limit:
        lines.append(f"... {len(rows) - limit} more rows (use --csv for all)")
    return lines


def _cmd_generate(args):
    f = random_coloring(args.kind, args.r, args.n, args.seed, c=args.c,
                        b=args.b, k=args.k, cap=args.cap,
                        color_count=args.color_count)
    if args.out:
        save_coloring(f, args.out)
    parameters = {
        "kind": args.kind, "r": args.r, "n": args.n, "c": args.c,
        "b": args.b, "k": args.k, "cap": args.cap,
        "color_count": args.color_count,
    }
    payload = run_payload("generate", parameters, args.seed, {
        "coloring": coloring_to_dict(f),
    })
    notes = [f"generated {args.kind} coloring, r={f.r} n={f.n}"]
    if args.out:
        notes.append(f"wrote {args.out}")
    rows = [{"command": "generate", "kind": args.kind, "seed": args.seed,
             "trial": 0, "metric": "values", "value": len(f.values),
             "status": "ok"}]
    return payload, notes, rows, EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramseykit",
        description="Finite-instance workbench: witness search, reductions, "
                    "measured-tree audits, and bound series.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--record", metavar="PATH",
                        help="write the full run record (payload + wall time)")
    common.add_argument("--csv", metavar="PATH",
                        help="write batch rows as CSV")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witness", parents=[common],
                       help="maximum witness for a property on a coloring file")
    p.add_argument("file")
    p.add_argument("--spec", required=True,
                   choices=["homogeneous", "achromatic", "free", "thin",
                            "rainbow"])
    p.add_argument("--d", type=int, default=None,
                   help="achromatic degree (required for --spec achromatic)")
    p.add_argument("--universe", default=None,
                   help="comma-separated colors (required for --spec thin)")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("number", parents=[common],
                       help="least n making every coloring admit a witness")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    p.add_argument("--spec", required=True,
                   choices=["homogeneous", "achromatic"])
    p.add_argument("--d", type=int, default=None)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    p.add_argument("--canonical", action="store_true",
                   help="scan one coloring per color permutation")
    p.add_argument("--counterexample-out", metavar="PATH")
    p.set_defaults(handler=_cmd_number)

    p = sub.add_parser("reduce", parents=[common],
                       help="apply a coloring-to-coloring reduction")
    p.add_argument("file")
    p.add_argument("--kind", required=True,
                   choices=["truncate", "rainbow2free", "trapdecompose"])
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--out-prefix", metavar="PREFIX",
                   help="trapdecompose writes PREFIX_f0.json, PREFIX_f1.json, ...")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("audit", parents=[common],
                       help="run a seeded invariant suite")
    p.add_argument("kind", choices=["counting", "ladderA", "ladderB",
                                    "tree-measure", "schroder", "gap"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--stem-len", type=int, default=2)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-c", type=int, default=2)
    p.add_argument("--max", type=int, default=20)
    p.add_argument("--cap", type=int, default=16)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("generate", parents=[common],
                       help="write a seeded random coloring file")
    p.add_argument("--kind", required=True,
                   choices=["uniform", "b-bounded", "k-trapped"])
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--color-count", type=int, default=None)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(handler=_cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        payload, notes, rows, code = args.handler(args)
    except (InputError, ColoringFileError, NotTwoBounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleEnumeration as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    wall_ms = (time.perf_counter() - started) * 1000.0

    sys.stdout.write(payload_json(payload))
    for line in notes:
        print(line, file=sys.stderr)
    print(f"backend: {BACKEND}; wall time: {wall_ms:.1f} ms", file=sys.stderr)
    if args.record:
        write_record(args.record, payload, wall_ms)
    if args.csv:
        write_csv(args.csv, rows)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
