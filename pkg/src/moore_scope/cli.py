"""Command-line front end: ``moore-scope <subcommand> ...``.

Every subcommand accepts ``--format json``, which wraps the result in an
envelope ``{tool, version, subcommand, params, payload}``.  Wall-clock timing
is only emitted with ``--timing`` so that repeated runs stay byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings

from . import __version__, bounds
from .canon import canonical_graph6
from .graph import Graph6Error, diameter, format_metric, girth, iter_graph6_lines, parse_graph6
from .search import SearchConfig, InfeasibleConfig, enumerate_defect_graphs
from .structure import ClassificationError, Tag, classify_vertex, count_cycles, verify_defect2

TOOL = "moore-scope"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_LIMIT = 3

EPILOG = """exit codes:
  0  success
  1  usage or I/O error (unreadable file, malformed graph6, bad arguments)
  2  verification failure (verify: some graph failed a check)
  3  search limit hit (search: result is not exhaustive)

environment:
  MOORE_SCOPE_JOBS  default for search --jobs
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def envelope(subcommand: str, params: dict, payload) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "subcommand": subcommand,
        "params": params,
        "payload": payload,
    }


def _read_lines(path: str) -> list[tuple[int, str]]:
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return list(iter_graph6_lines(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _parse_lines(path: str) -> tuple[list[tuple[int, object]], list[dict]]:
    graphs, errors = [], []
    for lineno, text in _read_lines(path):
        try:
            graphs.append((lineno, parse_graph6(text)))
        except Graph6Error as exc:
            errors.append({"line": lineno, "error": str(exc)})
    return graphs, errors


# -- subcommands ------------------------------------------------------------


def cmd_moore(args) -> tuple[dict, str, int]:
    m = bounds.moore_bound(args.delta, args.diam)
    n = bounds.order(args.delta, args.diam, args.defect)
    thr = None
    if args.delta >= 3 and args.diam >= 2:
        thr = bounds.regularity_threshold(args.delta, args.diam)
    payload = {
        "moore_bound": m,
        "defect": args.defect,
        "order": n,
        "regularity_threshold": thr,
        "forces_regular": bounds.forces_regular(args.delta, args.diam, args.defect),
    }
    text = f"M={m}\nn(ε={args.defect})={n}\nregularity_threshold={'n/a' if thr is None else thr}\n"
    return payload, text, EXIT_OK


def cmd_feasible(args):
    verdict = bounds.feasibility(args.delta, args.diam)
    payload = verdict.to_dict()
    lines = [f"{verdict.status.value} (upper bound on defect: {verdict.upper_bound_defect})"]
    lines += [f"  {r.code}: {r.anchor}" for r in verdict.reasons]
    lines += [f"  conjecture: {c}" for c in verdict.conjectures]
    lines += [f"  note: {c}" for c in verdict.notes]
    return payload, "\n".join(lines) + "\n", EXIT_OK


def cmd_table(args):
    if args.diam_min < 4 or args.diam_max < args.diam_min:
        raise UsageError("need 4 <= --diam-min <= --diam-max")
    rows = bounds.residue_rows(args.diam_min, args.diam_max)
    payload = {"rows": [dict(row, text=bounds.format_row(row)) for row in rows]}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["D", "modulus", "residues"])
        for row in rows:
            w.writerow([row["diam"], row["modulus"], " ".join(map(str, row["residues"]))])
        text = buf.getvalue()
    else:
        out = ["| D | odd d ≥ 5 not ruled out |", "|---|---|"]
        out += [f"| {row['diam']} | {bounds.format_row(row)} |" for row in rows]
        text = "\n".join(out) + "\n"
    return payload, text, EXIT_OK


def cmd_verify(args):
    graphs, errors = _parse_lines(args.file)
    if errors:
        raise UsageError(f"{args.file}: line {errors[0]['line']}: {errors[0]['error']}")
    if not graphs:
        raise UsageError(f"{args.file}: no graphs")
    reports = []
    lines = []
    for lineno, g in graphs:
        rep = verify_defect2(g, args.delta, args.diam, full=args.full)
        reports.append(dict(rep.to_dict(), line=lineno))
        verdict = "pass" if rep.passed else f"fail ({rep.first_failure})"
        lines.append(f"line {lineno}: {verdict}")
    code = EXIT_OK if all(r["passed"] for r in reports) else EXIT_VERIFY_FAILED
    return {"reports": reports}, "\n".join(lines) + "\n", code


def _classify_graph(g, diam: int) -> list[dict]:
    rows = []
    for v in range(g.n):
        try:
            vt = classify_vertex(g, v, diam)
        except ClassificationError as exc:
            rows.append({"vertex": v, "type": None, "cycles": [], "error": str(exc)})
            continue
        rows.append({
            "vertex": v,
            "type": vt.tag.value,
            "cycles": [list(c.vertices) for c in vt.cycles],
        })
    return rows


def _histogram(rows: list[dict]) -> dict:
    hist = {t.value: 0 for t in Tag}
    hist["unclassified"] = 0
    for r in rows:
        hist[r["type"] or "unclassified"] += 1
    return hist


def cmd_classify(args):
    graphs, errors = _parse_lines(args.file)
    if errors:
        raise UsageError(f"{args.file}: line {errors[0]['line']}: {errors[0]['error']}")
    out = []
    text = []
    for lineno, g in graphs:
        rows = _classify_graph(g, args.diam)
        out.append({"line": lineno, "vertices": rows})
        text.append(f"# line {lineno}")
        text.append("vertex\ttype\tcycles")
        for r in rows:
            cyc = " ".join("-".join(map(str, c)) for c in r["cycles"])
            text.append(f"{r['vertex']}\t{r['type'] or '-'}\t{cyc}")
    return {"graphs": out}, "\n".join(text) + ("\n" if text else ""), EXIT_OK


def _formula(fn, *a) -> str:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", bounds.DomainWarning)
        return bounds.rational_str(fn(*a))


def cmd_census(args):
    graphs, errors = _parse_lines(args.file)
    d, diam = args.delta, args.diam
    entries = []
    text = []
    for lineno, g in graphs:
        rows = _classify_graph(g, diam)
        entry = {
            "line": lineno,
            "order": g.n,
            "girth": format_metric(girth(g)),
            "diameter": format_metric(diameter(g)) if g.n else None,
            "type_histogram": _histogram(rows),
            "cycles_2d": {
                "observed": count_cycles(g, 2 * diam),
                "formula": _formula(bounds.n2d_count, d, diam),
                "formula_in_domain": d >= 4 and diam >= 4,
            },
            "cycles_2d1": None,
        }
        if d == 4 and diam >= 3:
            entry["cycles_2d1"] = {
                "observed": count_cycles(g, 2 * diam + 1),
                "formula": _formula(bounds.n2d1_count_deg4, diam),
            }
        entries.append(entry)
        hist = " ".join(f"{k}:{v}" for k, v in entry["type_histogram"].items() if v)
        line = (
            f"line {lineno}: n={g.n} girth={entry['girth']} diameter={entry['diameter']} "
            f"types[{hist}] C{2 * diam}={entry['cycles_2d']['observed']}"
            f" (formula {entry['cycles_2d']['formula']})"
        )
        if entry["cycles_2d1"]:
            c = entry["cycles_2d1"]
            line += f" C{2 * diam + 1}={c['observed']} (formula {c['formula']})"
        text.append(line)
    for e in errors:
        print(f"line {e['line']}: {e['error']}", file=sys.stderr)
    payload = {"graphs": entries, "errors": errors}
    return payload, "\n".join(text) + ("\n" if text else ""), EXIT_OK


def _default_jobs() -> int:
    raw = os.environ.get("MOORE_SCOPE_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise UsageError(f"MOORE_SCOPE_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise UsageError("MOORE_SCOPE_JOBS must be >= 1")
    return jobs


def cmd_search(args):
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        cfg = SearchConfig(
            args.delta,
            args.diam,
            args.defect,
            limit_nodes=args.limit_nodes,
            limit_seconds=args.limit_seconds,
        )
    except (InfeasibleConfig, bounds.DomainError) as exc:
        raise UsageError(str(exc)) from exc
    res = enumerate_defect_graphs(cfg, jobs=jobs)
    summary = res.summary()
    body = "".join(s + "\n" for s in res.solutions)
    if args.out:
        try:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(body)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
        body = ""
    if args.format != "json":
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    code = EXIT_OK if res.exhaustive else EXIT_LIMIT
    return {"summary": summary, "solutions": list(res.solutions)}, body, code


def cmd_canon(args):
    out, errors = [], []
    for lineno, text in _read_lines(args.file):
        try:
            out.append({"line": lineno, "input": text, "canonical": canonical_graph6(parse_graph6(text))})
        except Graph6Error as exc:
            errors.append({"line": lineno, "error": str(exc)})
            print(f"line {lineno}: {exc}", file=sys.stderr)
    body = "".join(e["canonical"] + "\n" for e in out)
    return {"graphs": out, "errors": errors}, body, EXIT_USAGE if errors else EXIT_OK


# -- parser -----------------------------------------------------------------


def _common(p: argparse.ArgumentParser, formats=("text", "json"), default="text") -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--timing", action="store_true", help="report wall-clock time")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=TOOL,
        description="Moore-bound arithmetic, defect-2 structure checks and small exhaustive searches.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("moore", cmd_moore, "Moore bound, order at a given defect and regularity threshold")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--diam", type=int, required=True)
    p.add_argument("--defect", type=int, default=2)
    _common(p)

    p = add("feasible", cmd_feasible, "existence verdict for (d, D, -2)-graphs")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--diam", type=int, required=True)
    _common(p, default="json")

    p = add("table", cmd_table, "residues of odd d that survive every congruence test")
    p.add_argument("--diam-min", type=int, default=4)
    p.add_argument("--diam-max", type=int, default=16)
    _common(p, formats=("md", "csv", "json"), default="md")

    p = add("verify", cmd_verify, "run the defect-2 consistency checks on each graph in a file")
    p.add_argument("file")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--diam", type=int, required=True)
    p.add_argument("--full", action="store_true", help="run every check instead of stopping at the first failure")
    _common(p, default="json")

    p = add("classify", cmd_classify, "per-vertex type table")
    p.add_argument("file")
    p.add_argument("--diam", type=int, required=True)
    _common(p)

    p = add("census", cmd_census, "per-graph order, girth, types and cycle counts")
    p.add_argument("file")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--diam", type=int, required=True)
    _common(p)

    p = add("search", cmd_search, "exhaustive search for (delta, diam, -defect)-graphs")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--diam", type=int, required=True)
    p.add_argument("--defect", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $MOORE_SCOPE_JOBS or 1)")
    p.add_argument("--limit-nodes", type=int, default=None)
    p.add_argument("--limit-seconds", type=float, default=None)
    p.add_argument("--out", default=None, help="write graph6 solutions here instead of stdout")
    _common(p)

    p = add("canon", cmd_canon, "canonical graph6 of every graph in a file")
    p.add_argument("file")
    _common(p)
    return parser


def _params(args) -> dict:
    skip = {"func", "format", "timing", "subcommand"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        payload, text, code = args.func(args)
    except (UsageError, bounds.DomainError) as exc:
        print(f"{TOOL} {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = round((time.perf_counter() - t0) * 1000)
    if args.format == "json":
        env = envelope(args.subcommand, _params(args), payload)
        if args.timing:
            env["timing"] = {"milliseconds": elapsed_ms}
        _emit_json(env)
    else:
        sys.stdout.write(text)
        if args.timing:
            print(f"time: {elapsed_ms} ms", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
