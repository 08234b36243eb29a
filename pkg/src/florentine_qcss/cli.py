"""Command line interface.

    fqcss florentine {generate,check,search}
    fqcss ccc {generate,verify}
    fqcss qcss {generate,analyze}
    fqcss tables {iii,iv,v,vi}

Exit status is 0 when every requested check passes, 1 when a check fails and
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import analysis
from .correlation import MODES
from .florentine import (
    FlorentineRect,
    ParameterError,
    PermutationFamily,
    RectangleFormatError,
    best_florentine,
    is_florentine,
    is_tuscan_k,
    max_florentine_search,
)
from .seqgen import build_ccc, build_qcss

FORMATS = ("json", "csv", "text")


class CommandError(Exception):
    pass


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        keys = list(rows[0])
        for r in rows[1:]:
            keys += [k for k in r if k not in keys]
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _load_family(path: str) -> tuple[FlorentineRect, PermutationFamily]:
    rect = FlorentineRect.load(path)
    family = PermutationFamily.from_rect(rect)
    if not family.pair_unique():
        raise CommandError(f"{path}: permutations repeat a shift solution; not usable for CCCs")
    return rect, family


def _family(args) -> tuple[FlorentineRect, PermutationFamily]:
    if getattr(args, "family", None):
        return _load_family(args.family)
    if args.n is None:
        raise CommandError("--n is required")
    return best_florentine(args.n)


def cmd_florentine(args) -> int:
    if args.action == "generate":
        if args.n is None:
            raise CommandError("--n is required")
        rect, family = best_florentine(args.n)
        if args.format == "text":
            _emit(args, f"# n={rect.n} F={family.f_value} construction={rect.construction.value}\n" + rect.to_text())
        elif args.format == "csv":
            _emit(args, _csv([{f"c{j}": x for j, x in enumerate(row)} for row in rect.rows]))
        else:
            _emit(args, json.dumps(rect.to_dict() | {"F": family.f_value}))
        return 0
    if args.action == "check":
        if not args.input:
            raise CommandError("--input is required")
        rect = FlorentineRect.load(args.input)
        k = args.k if args.k is not None else max(1, rect.n - 1)
        result = is_tuscan_k(rect, k)
        payload = {"n": rect.n, "rows": rect.r, "k": k, "pass": result.ok}
        if not result.ok:
            payload["witness"] = result.witness.describe()
        if args.format == "json":
            _emit(args, json.dumps(payload))
        elif args.format == "csv":
            _emit(args, _csv([payload]))
        else:
            verdict = "pass" if result.ok else "FAIL: " + result.witness.describe()
            _emit(args, f"{rect.r}x{rect.n} Tuscan-{k}: {verdict}")
        return 0 if result.ok else 1
    # search
    if args.n is None:
        raise CommandError("--n is required")
    res = max_florentine_search(args.n, row_limit=args.row_limit, budget=args.budget)
    payload = {
        "n": args.n,
        "rows_found": res.rows_found,
        "proven_maximum": res.proven,
        "nodes": res.nodes,
        "rows": [list(r) for r in res.rect.rows],
    }
    if args.format == "json":
        _emit(args, json.dumps(payload))
    else:
        status = "proven maximum" if res.proven else "budget exhausted, lower bound"
        _emit(args, f"n={args.n}: {res.rows_found} rows ({status}, {res.nodes} nodes)\n" + res.rect.to_text())
    return 0


def cmd_ccc(args) -> int:
    rect, family = _family(args)
    ks = [args.k] if args.k is not None else list(range(family.f_value))
    if args.action == "generate":
        cccs = [build_ccc(family, k) for k in ks]
        if args.format == "text":
            lines = []
            for ccc in cccs:
                for s in ccc.sets:
                    lines.append(f"C^({s.k},{s.m})")
                    lines.extend(s.render())
            _emit(args, "\n".join(lines))
        else:
            _emit(args, json.dumps([s.to_dict() for ccc in cccs for s in ccc.sets]))
        return 0
    checks = [analysis.verify_ccc(family, k) for k in ks]
    rows = [{"n": c.n, "k": c.k, "peak": c.peak_ok, "off_peak_zero": c.off_peak_zero, "pass": c.ok} for c in checks]
    if args.format == "json":
        _emit(args, json.dumps(rows))
    elif args.format == "csv":
        _emit(args, _csv(rows))
    else:
        _emit(args, "\n".join(f"k={r['k']}: {'pass' if r['pass'] else 'FAIL'}" for r in rows))
    return 0 if all(c.ok for c in checks) else 1


def cmd_qcss(args) -> int:
    rect, family = _family(args)
    if args.action == "generate":
        q = build_qcss(family)
        if args.format == "text":
            lines = [f"# K={q.params[0]} M={q.params[1]} N={q.params[2]}"]
            for s in q.sets:
                lines.append(f"C^({s.k},{s.m})")
                lines.extend(s.render())
            _emit(args, "\n".join(lines))
        else:
            _emit(args, json.dumps(q.to_dict()))
        return 0
    try:
        a = analysis.analyze_family(rect, family, args.mode, exact_cap=args.exact_cap)
    except analysis.ExactModeRefused as exc:
        raise CommandError(str(exc)) from None
    if args.format == "json":
        payload = {"bounds": a.bounds.to_dict(), "delta_source": a.delta_source}
        if a.report is not None:
            payload["correlation"] = a.report.to_dict()
        _emit(args, json.dumps(payload))
    elif args.format == "csv":
        _emit(args, _csv([a.row()]))
    else:
        _emit(args, a.line())
    return 0


def _table_text(result: analysis.TableResult) -> str:
    lines = []
    for row in result.rows:
        v = row.values
        if result.name == "iii":
            ref = "-" if v["F_low"] is None else (
                str(v["F_low"]) if v["F_low"] == v["F_high"] else f"{v['F_low']}..{v['F_high']}"
            )
            body = f"{v['n']}, {ref}, {v['F_ours']}"
        else:
            body = f"{v['alphabet']}, {v['K']}, {v['M']}, {v['N']}, {v['rho']:.4f}"
            if result.name == "vi":
                body += f", {v['K_prev']}, {v['rho_prev']:.4f}"
            body += f" [{v['delta_source']}]"
        tail = f" {row.status}" + (f" ({row.note})" if row.note else "")
        lines.append(body + tail)
    return "\n".join(lines)


def cmd_tables(args) -> int:
    if args.which == "iii":
        result = analysis.table_iii()
    else:
        if args.mode == "exact" and args.scan_cap > args.exact_cap:
            raise CommandError(f"exact mode is limited to n <= {args.exact_cap}; lower --scan-cap")
        fn = {"iv": analysis.table_iv, "v": analysis.table_v, "vi": analysis.table_vi}[args.which]
        result = fn(mode=args.mode, scan_cap=args.scan_cap)
    rows = [r.values | {"status": r.status, "note": r.note} for r in result.rows]
    if args.format == "json":
        _emit(args, json.dumps({"table": result.name, "ok": result.ok, "rows": rows}))
    elif args.format == "csv":
        _emit(args, _csv(rows))
    else:
        _emit(args, _table_text(result))
    if not result.ok:
        bad = [r.values.get("alphabet", r.values.get("n")) for r in result.rows if r.status == "mismatch"]
        print(f"mismatched rows: {', '.join(map(str, bad))}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqcss", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        p.add_argument("--format", choices=FORMATS, default=default_format)
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("florentine", help="construct, check or search Florentine rectangles")
    p.add_argument("action", choices=("generate", "check", "search"))
    p.add_argument("--n", type=int)
    p.add_argument("--input", help="rectangle file (JSON or whitespace grid) for check")
    p.add_argument("--k", type=int, help="Tuscan displacement limit for check (default n-1)")
    p.add_argument("--budget", type=int, help="node budget for search")
    p.add_argument("--row-limit", type=int)
    common(p)
    p.set_defaults(func=cmd_florentine)

    p = sub.add_parser("ccc", help="generate or verify complete complementary codes")
    p.add_argument("action", choices=("generate", "verify"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, help="single CCC index (default: all)")
    p.add_argument("--family", help="rectangle file to use instead of the built-in construction")
    common(p)
    p.set_defaults(func=cmd_ccc)

    p = sub.add_parser("qcss", help="generate or analyse the union QCSS")
    p.add_argument("action", choices=("generate", "analyze"))
    p.add_argument("--n", type=int)
    p.add_argument("--family", help="rectangle file to use instead of the built-in construction")
    p.add_argument("--mode", choices=MODES, default="float")
    p.add_argument("--exact-cap", type=int, default=analysis.EXACT_CAP)
    common(p)
    p.set_defaults(func=cmd_qcss)

    p = sub.add_parser("tables", help="reproduce the reference tables")
    p.add_argument("which", choices=("iii", "iv", "v", "vi"))
    p.add_argument("--mode", choices=MODES, default="float")
    p.add_argument("--scan-cap", type=int, default=analysis.SCAN_CAP,
                   help="largest n whose delta_max is computed by a full scan")
    p.add_argument("--exact-cap", type=int, default=analysis.EXACT_CAP)
    common(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RectangleFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (CommandError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
