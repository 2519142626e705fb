"""Command-line entry point.

    dropclique bound --patterns "4,2;10,2" [--seeds FILE] [--method auto|explicit|recursive|chi|poly]
    dropclique chi recognize COLORING.json
    dropclique chi search --r 3 --k 3 --n-max 6 [--surjective] [--budget N]
    dropclique witness make --matching 5
    dropclique witness verify --patterns "3,2;5,2" [COLORING.json]
    dropclique scan conjecture --r-lo 3 --r-hi 150 [--exact-only]
    dropclique scan question --t 2 --r 10 --k-cap 100
    dropclique emit f-table --r 4 --k-lo 3 --k-hi 20 --out f4.csv

Exit status: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import bounds, chi, conjecture
from .coloring import CompleteColoring, PatternList, PreconditionError, find_mono_dropped_clique, matching_witness
from .seeds import SeedTable, SeedTableError

METHOD_CHOICES = ("auto", "explicit", "recursive", "chi", "poly")


class DomainError(Exception):
    pass


# ------------------------------------------------------------------ output


def _scalar(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    return v


def render(record: dict, rows: list[dict] | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2, sort_keys=True) + "\n"
    table = rows if rows is not None else [{k: v for k, v in record.items() if not isinstance(v, (dict, list))}]
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(table[0].keys()) if table else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in table:
            w.writerow({k: _scalar(v) for k, v in row.items()})
        return buf.getvalue()
    lines = []
    for row in table:
        lines.append("  ".join(f"{k}={_scalar(v)}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def _read_coloring(path: str | None) -> CompleteColoring:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        return CompleteColoring.loads(text)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"cannot read coloring: {exc}") from None


def _seeds(path: str | None) -> SeedTable:
    return SeedTable.load(path) if path else SeedTable.shipped()


# --------------------------------------------------------------- commands


def cmd_bound(args) -> tuple[dict, list | None]:
    P = PatternList.parse(args.patterns)
    seeds = _seeds(args.seeds)
    m = args.method
    if m == "auto":
        res = bounds.best_bound(P, seeds)
    elif m == "explicit":
        res = bounds.explicit_bound(P)
    elif m == "recursive":
        res = bounds.recursive_bound(P, seeds)
    elif m == "chi":
        res = bounds.chi_based_bound(P)
    else:
        res = bounds._poly_for(P)
        if res is None:
            raise DomainError(f"no closed form covers {P}")
    return res.to_json(), None


def cmd_chi_recognize(args):
    C = _read_coloring(args.coloring)
    cert = chi.recognize_chi(C)
    rec = {
        "n": C.n,
        "r": C.r,
        "is_chi": cert is not None,
        "certificate": None if cert is None else {"ordering": list(cert.ordering), "phi": list(cert.phi)},
    }
    return rec, None


def cmd_chi_search(args):
    rep = chi.chi_search(args.r, args.k, args.n_max, args.surjective, args.budget, args.workers)
    rec = rep.to_json()
    rows = [{k: v for k, v in rec.items() if k not in ("witness", "levels")}]
    rows[0]["witness"] = rec["witness"]
    return rec, rows


def cmd_witness_make(args):
    C = matching_witness(args.matching)
    return C.to_json(), [{"n": C.n, "r": C.r, "edges": C.to_json()["edges"]}]


def cmd_witness_verify(args):
    P = PatternList.parse(args.patterns)
    C = _read_coloring(args.coloring)
    if C.r != P.r:
        raise DomainError(f"coloring uses {C.r} colors but {P.r} patterns were given")
    hits = []
    for i, (k, t) in enumerate(P):
        w = find_mono_dropped_clique(C, k, t, i)
        if w is not None:
            hits.append({"color": i, "k": k, "t": t, "vertices": list(w.vertices), "dropped": list(w.dropped)})
    ok = not hits
    rec = {
        "patterns": str(P),
        "n": C.n,
        "verified": ok,
        "certifies": f"R > {C.n}" if ok else None,
        "violations": hits,
    }
    return rec, None


def cmd_scan_conjecture(args):
    reps = conjecture.conjecture_scan(args.r_lo, args.r_hi, args.exact_only, args.sample_rate, args.workers)
    rows = []
    for rep in reps:
        row = {
            "r": rep.r,
            "k_max": rep.k_max,
            "all_pass": rep.all_pass,
            "failing_k": rep.failing_k,
            "exact_resolved": sum(v.resolved_by == "exact" for v in rep.verdicts),
            "exact_rechecks": rep.exact_rechecks,
            "disagreements": rep.disagreements,
            "comparison_mode": rep.comparison_mode,
        }
        if args.details:
            row["verdicts"] = [
                {"k": v.k, "holds": v.holds, "sign": v.sign, "resolved_by": v.resolved_by} for v in rep.verdicts
            ]
        rows.append(row)
    rec = {
        "r_lo": args.r_lo,
        "r_hi": args.r_hi,
        "all_pass": all(r.all_pass for r in reps),
        "reports": rows,
    }
    return rec, rows


def cmd_scan_question(args):
    res = conjecture.interval_search(args.t, args.r, args.k_cap, args.literal)
    return res.to_json(), None


def cmd_emit_ftable(args):
    if args.out == "-":
        rows = conjecture.f_rows(args.r, args.k_lo, args.k_hi)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=conjecture.F_TABLE_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return None, None
    path = conjecture.emit_f_table(args.r, args.k_lo, args.k_hi, args.out)
    return {"path": str(path), "r": args.r, "rows": args.k_hi - args.k_lo + 1}, None


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="dropclique", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", parents=[common], help="upper bound for a pattern list")
    b.add_argument("--patterns", required=True, help='e.g. "4,2;10,2"')
    b.add_argument("--seeds", help="seed table JSON (default: shipped table or $DROPCLIQUE_SEEDS)")
    b.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("chi", help="chi_r-colorings").add_subparsers(dest="chi_command", required=True)
    cr = c.add_parser("recognize", parents=[common])
    cr.add_argument("coloring", nargs="?", default="-")
    cr.set_defaults(func=cmd_chi_recognize)
    cs = c.add_parser("search", parents=[common])
    cs.add_argument("--r", type=int, required=True)
    cs.add_argument("--k", type=int, required=True)
    cs.add_argument("--n-max", type=int, required=True)
    cs.add_argument("--surjective", action="store_true")
    cs.add_argument("--budget", type=int, default=chi.DEFAULT_BUDGET)
    cs.set_defaults(func=cmd_chi_search)

    w = sub.add_parser("witness", help="lower-bound colorings").add_subparsers(dest="witness_command", required=True)
    wm = w.add_parser("make", parents=[common])
    wm.add_argument("--matching", type=int, required=True, metavar="K")
    wm.set_defaults(func=cmd_witness_make)
    wv = w.add_parser("verify", parents=[common])
    wv.add_argument("--patterns", required=True)
    wv.add_argument("coloring", nargs="?", default="-")
    wv.set_defaults(func=cmd_witness_verify)

    s = sub.add_parser("scan", help="conjecture and question scans").add_subparsers(dest="scan_command", required=True)
    sc = s.add_parser("conjecture", parents=[common])
    sc.add_argument("--r-lo", type=int, default=3)
    sc.add_argument("--r-hi", type=int, default=150)
    sc.add_argument("--exact-only", action="store_true")
    sc.add_argument("--sample-rate", type=float, default=0.01)
    sc.add_argument("--details", action="store_true", help="include every per-k verdict")
    sc.set_defaults(func=cmd_scan_conjecture)
    sq = s.add_parser("question", parents=[common])
    sq.add_argument("--t", type=int, required=True)
    sq.add_argument("--r", type=int, required=True)
    sq.add_argument("--k-cap", type=int, required=True)
    sq.add_argument("--literal", action="store_true", help="use g(r(k-t)+t, r) instead of g(r(k-t-1)+t+1, r)")
    sq.set_defaults(func=cmd_scan_question)

    e = sub.add_parser("emit", help="data tables").add_subparsers(dest="emit_command", required=True)
    ef = e.add_parser("f-table", parents=[common])
    ef.add_argument("--r", type=int, required=True)
    ef.add_argument("--k-lo", type=int, required=True)
    ef.add_argument("--k-hi", type=int, required=True)
    ef.add_argument("--out", required=True)
    ef.set_defaults(func=cmd_emit_ftable)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        record, rows = args.func(args)
    except (PreconditionError, SeedTableError, DomainError, ArithmeticError) as exc:
        stderr.write(f"dropclique: error: {exc}\n")
        return 1
    if record is not None:
        stdout.write(render(record, rows, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
