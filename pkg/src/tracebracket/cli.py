"""Command-line front end.

Exit codes: 0 = success, 1 = domain findings (axiom or identity violations,
reported as data), 2 = malformed input.  ``--json`` emits a stable schema:
{"command": ..., "inputs": ..., "result": ..., "witnesses": ...}.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import biquandle as bqmod
from . import bracket as brmod
from . import coloring as colmod
from . import diagram as dgmod
from . import trace as trmod
from .search import search_brackets


class InputError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {path}")
    return p.read_text()


def _load_biquandle(spec: str) -> bqmod.Biquandle:
    inline = bqmod.biquandle_from_spec(spec)
    if inline is not None:
        return inline
    try:
        bq = bqmod.parse_biquandle(_read(spec))
    except ValueError as e:
        raise InputError(f"{spec}: {e}") from e
    return bq


def _load_diagram(path: str) -> dgmod.OrientedDiagram:
    try:
        d = dgmod.parse_diagram(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e
    report = dgmod.validate_diagram(d)
    if not report.ok:
        raise InputError(f"{path}: " + "; ".join(report.problems))
    return d


def _load_bracket(path: str, bq: bqmod.Biquandle) -> brmod.BiquandleBracket:
    try:
        return brmod.parse_bracket(_read(path), bq)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_verify_biquandle(args) -> int:
    text = _read(args.biquandle)
    bq = bqmod.parse_biquandle(text)
    report = bqmod.verify_biquandle(bq)
    findings = [v.describe() for v in report.violations]
    _emit(args, {"command": "verify-biquandle", "inputs": {"biquandle": args.biquandle},
                 "result": "pass" if report.ok else "fail", "witnesses": findings},
          ["pass"] if report.ok else findings)
    return 0 if report.ok else 1


def cmd_verify_bracket(args) -> int:
    bq = _load_biquandle(args.biquandle)
    try:
        ring, A, B = _parse_bracket_tables(_read(args.bracket), bq)
    except ValueError as e:
        raise InputError(f"{args.bracket}: {e}") from e
    check = brmod.verify_bracket(bq, ring, A, B)
    if check.ok:
        beta = check.bracket
        _emit(args, {"command": "verify-bracket",
                     "inputs": {"biquandle": args.biquandle, "bracket": args.bracket},
                     "result": {"delta": str(beta.delta), "w": str(beta.w)},
                     "witnesses": []},
              [f"valid bracket: delta = {beta.delta}, w = {beta.w}"])
        return 0
    findings = [v.describe() for v in check.violations]
    _emit(args, {"command": "verify-bracket",
                 "inputs": {"biquandle": args.biquandle, "bracket": args.bracket},
                 "result": "fail", "witnesses": findings}, findings)
    return 1


def _parse_bracket_tables(text: str, bq: bqmod.Biquandle):
    """Raw tables without running verification (verify-bracket does that)."""
    from .rings import LaurentRing, ModRing
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0].split()
    if head[0] != "ring":
        raise ValueError("bracket file must start with a 'ring ...' line")
    ring = ModRing(int(head[2])) if head[1] == "mod" else LaurentRing()
    n = bq.n
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} coefficient rows, found {len(lines) - 1}")
    A, B = [], []
    for ln in lines[1:]:
        entries = ln.split()
        if len(entries) != 2 * n:
            raise ValueError(f"expected {2 * n} entries per row")
        A.append([ring.parse(e) for e in entries[:n]])
        B.append([ring.parse(e) for e in entries[n:]])
    return ring, A, B


def cmd_colorings(args) -> int:
    d = _load_diagram(args.diagram)
    bq = _load_biquandle(args.biquandle)
    cols = colmod.enumerate_colorings(d, bq)
    lines = []
    for col in cols:
        lines.append(" ".join(f"{s}={c + 1}" for s, c in enumerate(col, start=1)))
    lines.append(f"count: {len(cols)}")
    _emit(args, {"command": "colorings",
                 "inputs": {"diagram": args.diagram, "biquandle": args.biquandle},
                 "result": {"count": len(cols),
                            "colorings": [[c + 1 for c in col] for col in cols]},
                 "witnesses": []}, lines)
    return 0


def cmd_invariant(args) -> int:
    d = _load_diagram(args.diagram)
    bq = _load_biquandle(args.biquandle)
    beta = _load_bracket(args.bracket, bq)
    inv = brmod.bracket_invariant(d, bq, beta)
    _emit(args, {"command": "invariant",
                 "inputs": {"diagram": args.diagram, "biquandle": args.biquandle,
                            "bracket": args.bracket},
                 "result": {"multiset": {str(v): m for v, m in inv.sorted_items()},
                            "polynomial": inv.polynomial_str()},
                 "witnesses": []},
          [f"multiset: {inv.multiset_str()}", f"poly: {inv.polynomial_str()}"])
    return 0


def cmd_classify(args) -> int:
    bq = _load_biquandle(args.biquandle)
    beta = _load_bracket(args.bracket, bq)
    cls = brmod.classify_adequacy(beta)
    witnesses = []
    for name, w in (("over", cls.over_witness), ("under", cls.under_witness),
                    ("passthrough", cls.passthrough_witness)):
        if w is not None:
            witnesses.append(f"{name} fails at ({','.join(str(v + 1) for v in w)})")
    _emit(args, {"command": "classify",
                 "inputs": {"biquandle": args.biquandle, "bracket": args.bracket},
                 "result": {"class": cls.label(),
                            "passthrough": cls.passthrough},
                 "witnesses": witnesses},
          [cls.label(), f"passthrough: {'yes' if cls.passthrough else 'no'}"] + witnesses)
    return 0


def cmd_search(args) -> int:
    bq = _load_biquandle(args.biquandle)
    lines = []
    results = []
    count = 0
    for beta, cls in search_brackets(bq, args.mod, classification=args.classification,
                                     limit=args.limit):
        count += 1
        rows = []
        for x in range(bq.n):
            rows.append(" ".join(str(beta.A[x][y]) for y in range(bq.n)) + " | "
                        + " ".join(str(beta.B[x][y]) for y in range(bq.n)))
        lines.extend(rows)
        lines.append(f"class: {cls.label()}  passthrough: {'yes' if cls.passthrough else 'no'}")
        lines.append("")
        results.append({"A": [[str(e) for e in row] for row in beta.A],
                        "B": [[str(e) for e in row] for row in beta.B],
                        "class": cls.label(), "passthrough": cls.passthrough})
    lines.append(f"found: {count}")
    _emit(args, {"command": "search",
                 "inputs": {"biquandle": args.biquandle, "mod": args.mod},
                 "result": {"count": count, "brackets": results}, "witnesses": []},
          lines)
    return 0


def cmd_eval_trace(args) -> int:
    bq = _load_biquandle(args.biquandle)
    beta = _load_bracket(args.bracket, bq)
    try:
        td, _colors = trmod.parse_trace_diagram(_read(args.trace_file), bq)
    except ValueError as e:
        raise InputError(f"{args.trace_file}: {e}") from e
    if args.method == "parity":
        value = trmod.evaluate_by_parity(td, beta)
    elif args.method == "statesum":
        value = trmod.evaluate_recursive(td, beta)
    else:
        value = trmod.evaluate_recursive_parity(td, beta)
    parities = {str(cid): trmod.magnetic_parity(td, cid) for cid in td.crossings()}
    _emit(args, {"command": "eval-trace",
                 "inputs": {"trace_file": args.trace_file, "biquandle": args.biquandle,
                            "bracket": args.bracket, "method": args.method},
                 "result": {"value": str(value), "parities": parities}, "witnesses": []},
          [f"value: {value}"] + [f"parity[{c}]: {p}" for c, p in parities.items()])
    return 0


def cmd_skein_check(args) -> int:
    d = _load_diagram(args.diagram)
    bq = _load_biquandle(args.biquandle)
    beta = _load_bracket(args.bracket, bq)
    failures = []
    checked = 0
    for col in colmod.enumerate_colorings(d, bq):
        c = d.crossings[args.crossing]
        x, y = col[c.u_in - 1], col[c.o_in - 1]
        if x != y or bq.under(x, x) != x:
            continue
        checked += 1
        if not brmod.skein_identity_check(d, bq, beta, col, args.crossing):
            failures.append([v + 1 for v in col])
    if checked == 0:
        raise InputError("no coloring makes that crossing monochromatic at a fixed point")
    ok = not failures
    _emit(args, {"command": "skein-check",
                 "inputs": {"diagram": args.diagram, "crossing": args.crossing},
                 "result": {"checked": checked, "ok": ok},
                 "witnesses": failures},
          [f"checked {checked} colorings: " + ("all satisfy the skein identity"
                                               if ok else f"{len(failures)} failures")])
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracebracket",
        description="biquandle counting and bracket invariants of oriented links")
    parser.add_argument("--json", action="store_true", help="emit JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-biquandle", help="check the biquandle axioms")
    p.add_argument("biquandle")
    p.set_defaults(func=cmd_verify_biquandle)

    p = sub.add_parser("verify-bracket", help="check the bracket conditions")
    p.add_argument("biquandle")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_verify_bracket)

    p = sub.add_parser("colorings", help="enumerate colorings of a diagram")
    p.add_argument("diagram")
    p.add_argument("biquandle",
                   help="biquandle file, or alexander(n,t,s) / trivial(n)")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("invariant", help="bracket multiset invariant")
    p.add_argument("diagram")
    p.add_argument("biquandle")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("classify", help="adequacy classification of a bracket")
    p.add_argument("biquandle")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="search for brackets over Z_n")
    p.add_argument("biquandle")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--class", dest="classification",
                   choices=["adequate", "over", "under", "neither", "any"],
                   default="any")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval-trace", help="evaluate a colored trace diagram")
    p.add_argument("trace_file")
    p.add_argument("biquandle")
    p.add_argument("bracket")
    p.add_argument("--method", choices=["recursive", "parity", "statesum"],
                   default="recursive")
    p.set_defaults(func=cmd_eval_trace)

    p = sub.add_parser("skein-check", help="verify the monochromatic skein identity")
    p.add_argument("diagram")
    p.add_argument("biquandle")
    p.add_argument("bracket")
    p.add_argument("--crossing", type=int, default=0)
    p.set_defaults(func=cmd_skein_check)

    return parser


def _thread_cap() -> int:
    """TRACEBRACKET_THREADS caps worker parallelism; 0 means auto.

    Evaluation is currently sequential, which respects any cap; the variable
    is still validated so misconfiguration fails loudly.
    """
    import os
    raw = os.environ.get("TRACEBRACKET_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"TRACEBRACKET_THREADS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError("TRACEBRACKET_THREADS must be nonnegative")
    return cap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_cap()
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
