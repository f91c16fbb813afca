"""Command-line entry point: ``hh2 compute | vanishing | verify-families``.

Exit codes: 0 success, 1 verify-families found a failing row, 2 bad input
(parse, validation or admissibility), 3 internal inconsistency (resolution
not exact or oracle disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cohomology import hh_report
from .families import (FamilyError, acceptance_grid, expected_hh2, make_family,
                       parse_family_spec)
from .linalg.field import Field
from .oracle import DEFAULT_LIMIT, OracleLimitError, bar_hh
from .presentation import PresentationError, parse_presentation
from .quotient import DEFAULT_CAP, QuotientError, build_quotient
from .resolution import (ResolutionError, build_front, check_exactness,
                         minimalize_relations)
from .vanishing import vanishing_check

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    family: str | None = None
    path: str | None = None          # '-' reads stdin
    characteristic: int | None = None
    arrow_order: list | None = None
    vertex_order: list | None = None
    oracle: bool = False
    oracle_limit: int = DEFAULT_LIMIT
    vanishing_only: bool = False
    json_path: str | None = None
    cap: int = DEFAULT_CAP
    emit_resolution: bool = False
    timing: bool = False
    quiet: bool = False


def _scalar(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return int(c)


def load_presentation(cfg: RunConfig):
    """Presentation plus family spec (or None) for a config; raises InputError."""
    if (cfg.family is None) == (cfg.path is None):
        raise InputError("give exactly one of --family SPEC or FILE ('-' for stdin)")
    spec = None
    try:
        if cfg.family is not None:
            spec = parse_family_spec(cfg.family, cfg.characteristic)
            pres = make_family(spec)
        else:
            if cfg.path == "-":
                text, name = sys.stdin.read(), "stdin"
            else:
                try:
                    text = Path(cfg.path).read_text(encoding="utf-8")
                except OSError as e:
                    raise InputError(f"cannot read {cfg.path}: {e.strerror}") from e
                name = Path(cfg.path).stem
            pres = parse_presentation(text, name)
            if not pres.name:
                pres.name = name
            if cfg.characteristic is not None:
                pres = pres.with_field(Field(cfg.characteristic))
        if cfg.arrow_order or cfg.vertex_order:
            pres.quiver.set_order(cfg.arrow_order, cfg.vertex_order)
    except (FamilyError, PresentationError) as e:
        raise InputError(str(e)) from e
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(str(e)) from e
    return pres, spec


def _quotient(pres, cap):
    try:
        return build_quotient(pres, cap=cap)
    except QuotientError as e:
        raise InputError(str(e)) from e


def _algebra_json(A, pres, spec) -> dict:
    counts = A.nontip_count_by_pair()
    return {
        "name": pres.name,
        "family": spec.family if spec else None,
        "params": dict(spec.params) if spec else {},
        "char": A.field.characteristic,
        "dim": A.dimension,
        "nilpotency": A.nilpotency,
        "nontip_count_by_pair": {f"{v}->{w}": counts[(v, w)] for v, w in sorted(counts)},
    }


def _vanishing_json(A, verdict) -> dict:
    q = A.quiver
    out = {"applicable": verdict.applicable}
    if verdict.applicable:
        out["witnesses"] = [{"relation": w.relation, "p": q.path_str(w.p), "q": q.path_str(w.q),
                             "arrow": q.arrows[w.arrow].name} for w in verdict.witnesses]
    else:
        out["hypothesis"] = verdict.hypothesis
        out["reason"] = verdict.reason
    return out


def _elem_json(A, terms: dict) -> list:
    q = A.quiver
    items = sorted(terms.items(), key=lambda kv: q.sort_key(kv[0]), reverse=True)
    return [{"coeff": _scalar(c), "path": q.path_str(p)} for p, c in items]


def _resolution_json(front, exact, emit: bool) -> dict:
    A = front.algebra
    q = A.quiver
    f2 = front.f2
    out = {
        "f2": [{"label": lab, "relation": e.to_str(), "origin": q.vertices[o], "terminus": q.vertices[t]}
               for lab, e, (o, t) in zip(f2.labels, f2.elements, f2.ends)],
        "f3_count": len(front.f3),
        "summands": [len(s) for s in front.summands],
        "dims": exact.dims,
        "ranks": exact.ranks,
        "exact": exact.ok,
        "failures": exact.failures,
    }
    if emit:
        out["f3"] = [{
            "y": g.y.to_str(),
            "origin": q.vertices[g.origin],
            "terminus": q.vertices[g.terminus],
            "right": [{"relation": f2.labels[i], "p": p.to_str()} for i, p in g.right],
            "left": [{"coeff": _scalar(c), "q": qq.to_str(), "relation": f2.labels[i], "r": r.to_str()}
                     for c, qq, i, r in g.left],
            "exact": g.exact,
        } for g in front.f3]
    return out


def _cohomology_json(A, report, spec) -> dict:
    labels = report.front.f2.labels
    basis = []
    for c in report.basis:
        basis.append([{"relation": labels[i], "value_paths": _elem_json(A, v)} for i, v in c.values])
    out = {
        "hh0": report.hh0,
        "hh1": report.hh1,
        "hh2": report.hh2,
        "ranks": report.ranks,
        "hom_dims": report.hom_dims,
        "im_d2": report.im_d2,
        "ker_d3": report.ker_d3,
        "basis": basis,
    }
    if spec is not None:
        out["expected_hh2"] = expected_hh2(spec)
    return out


def _cocycle_lines(A, report) -> list:
    q = A.quiver
    f2 = report.front.f2
    lines = []
    for k, c in enumerate(report.basis, 1):
        parts = []
        for i, vals in c.values:
            o, t = f2.ends[i]
            parts.append(f"e_{q.vertices[o]} ⊗_{{{f2.labels[i]}}} e_{q.vertices[t]} ↦ {A.element_str(vals)}")
        lines.append(f"  h{k}: " + ", ".join(parts))
    return lines


def _write_json(doc: dict, path: str) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def run_compute(cfg: RunConfig) -> tuple[int, dict, list]:
    """(exit code, JSON document, text lines). Input errors raise InputError."""
    t0 = time.perf_counter()
    pres, spec = load_presentation(cfg)
    A = _quotient(pres, cfg.cap)
    f2 = minimalize_relations(A, pres.relations, pres.labels)
    verdict = vanishing_check(A, f2)
    doc = {"schema_version": SCHEMA_VERSION, "algebra": _algebra_json(A, pres, spec),
           "vanishing": _vanishing_json(A, verdict)}
    lines = [f"{pres.name}: dim Λ = {A.dimension}, char {A.field.characteristic}, "
             f"{len(f2)} minimal relations (of {len(pres.relations)})"]
    lines.append("vanishing criterion: " + ("applies" if verdict.applicable else "does not apply"))
    lines += ["  " + s for s in verdict.describe(A.quiver)]
    code = EXIT_OK
    if not cfg.vanishing_only:
        try:
            front = build_front(A, f2)
        except ResolutionError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INTERNAL, doc, lines
        exact = check_exactness(front)
        report = hh_report(A, front, pres.name)
        doc["resolution"] = _resolution_json(front, exact, cfg.emit_resolution)
        doc["cohomology"] = _cohomology_json(A, report, spec)
        lines.append(f"|f3| = {len(front.f3)}, resolution exact: {exact.ok}")
        for msg in exact.failures:
            lines.append("  " + msg)
        lines.append(f"HH0 = {report.hh0}, HH1 = {report.hh1}, HH2 = {report.hh2}"
                     f"  (dim Im d2 = {report.im_d2}, dim Ker d3 = {report.ker_d3})")
        lines += _cocycle_lines(A, report)
        if spec is not None:
            lines.append(f"expected HH2 = {expected_hh2(spec)}")
        if cfg.emit_resolution:
            lines.append("f3:")
            lines += [f"  {g.y.to_str()}" for g in front.f3]
        if not exact.ok:
            code = EXIT_INTERNAL
        if verdict.applicable and report.hh2 != 0:
            lines.append("inconsistent: vanishing criterion applies but HH2 != 0")
            code = EXIT_INTERNAL
        orc = {"ran": False}
        if cfg.oracle:
            try:
                bar = bar_hh(A, cfg.oracle_limit)
            except OracleLimitError as e:
                orc["reason"] = str(e)
                lines.append(f"oracle skipped: {e}")
            else:
                agree = (bar.hh0, bar.hh1, bar.hh2) == (report.hh0, report.hh1, report.hh2)
                orc = {"ran": True, "hh0": bar.hh0, "hh1": bar.hh1, "hh2": bar.hh2, "agree": agree}
                lines.append(f"oracle: HH0 = {bar.hh0}, HH1 = {bar.hh1}, HH2 = {bar.hh2}, "
                             f"{'agrees' if agree else 'DISAGREES'}")
                if not agree:
                    code = EXIT_INTERNAL
        doc["oracle"] = orc
    # wall time breaks byte-identical output, so it is only recorded on request
    doc["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3) if cfg.timing else None
    return code, doc, lines


def cmd_compute(cfg: RunConfig) -> int:
    try:
        code, doc, lines = run_compute(cfg)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if not cfg.quiet and cfg.json_path != "-":
        print("\n".join(lines))
    if cfg.json_path:
        _write_json(doc, cfg.json_path)
    return code


def cmd_vanishing(cfg: RunConfig) -> int:
    cfg.vanishing_only = True
    return cmd_compute(cfg)


@dataclass
class GridRow:
    spec: str
    char: int
    expected: int | None
    got: int | None
    ok: bool
    note: str = ""


def verify_families(specs=None, builder=make_family, oracle: bool = False,
                    oracle_limit: int = 40) -> list:
    rows = []
    for spec in specs if specs is not None else acceptance_grid():
        exp = expected_hh2(spec)
        try:
            pres = builder(spec)
            A = build_quotient(pres)
            f2 = minimalize_relations(A, pres.relations, pres.labels)
            front = build_front(A, f2)
            ex = check_exactness(front)
            rep = hh_report(A, front)
        except (QuotientError, ResolutionError, ValueError) as e:
            rows.append(GridRow(str(spec), spec.characteristic, exp, None, False, str(e)))
            continue
        note = "" if ex.ok else "not exact"
        ok = ex.ok and rep.hh2 == exp
        if oracle and A.dimension <= oracle_limit:
            bar = bar_hh(A, oracle_limit)
            if bar.hh2 != rep.hh2:
                ok = False
                note = (note + "; " if note else "") + f"oracle HH2 = {bar.hh2}"
            else:
                note = (note + "; " if note else "") + "oracle agrees"
        rows.append(GridRow(str(spec), spec.characteristic, exp, rep.hh2, ok, note))
    return rows


def format_rows(rows) -> str:
    out = [f"{'spec':24s} {'char':>4s} {'expected':>8s} {'HH2':>4s}  result"]
    for r in rows:
        got = "-" if r.got is None else str(r.got)
        out.append(f"{r.spec:24s} {r.char:4d} {str(r.expected):>8s} {got:>4s}  "
                   f"{'pass' if r.ok else 'FAIL'}{'  ' + r.note if r.note else ''}")
    n_ok = sum(r.ok for r in rows)
    out.append(f"{n_ok}/{len(rows)} passed")
    return "\n".join(out)


def cmd_verify_families(args) -> int:
    specs = acceptance_grid()
    if args.family:
        try:
            specs = [parse_family_spec(s, args.char) for s in args.family]
        except FamilyError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
    elif args.char is not None:
        specs = [s for s in specs if s.characteristic == args.char]
    if args.only:
        specs = [s for s in specs if s.family.lower() == args.only.lower()]
    rows = verify_families(specs, oracle=args.oracle, oracle_limit=args.oracle_limit)
    print(format_rows(rows))
    if args.json:
        _write_json({"schema_version": SCHEMA_VERSION,
                     "rows": [r.__dict__ for r in rows]}, args.json)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


def _order_list(text):
    if text is None:
        return None
    return [t for t in text.replace(",", " ").split() if t]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hh2", description="Second Hochschild cohomology of KQ/I.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", nargs="?", help="presentation file, '-' for stdin")
        p.add_argument("--family", help='family spec, e.g. "D:n=5,s=1,t=2"')
        p.add_argument("--char", type=int, help="override the characteristic (0 or a prime)")
        p.add_argument("--order", help="arrow order, largest first (comma or space separated)")
        p.add_argument("--vertex-order", help="vertex order, largest first")
        p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest nilpotency index tried")
        p.add_argument("-q", "--quiet", action="store_true")

    c = sub.add_parser("compute", help="full pipeline")
    common(c)
    c.add_argument("--oracle", action="store_true", help="cross-check with the bar complex")
    c.add_argument("--oracle-limit", type=int, default=DEFAULT_LIMIT)
    c.add_argument("--vanishing-only", action="store_true")
    c.add_argument("--emit-resolution", action="store_true")
    c.add_argument("--timing", action="store_true", help="record wall time in the JSON report")

    v = sub.add_parser("vanishing", help="vanishing criterion only")
    common(v)

    g = sub.add_parser("verify-families", help="regression grid against the expected HH2")
    g.add_argument("--family", action="append", help="spec to check (repeatable); default is the grid")
    g.add_argument("--only", help="restrict the grid to one family name")
    g.add_argument("--char", type=int, help="characteristic (filters the default grid)")
    g.add_argument("--oracle", action="store_true")
    g.add_argument("--oracle-limit", type=int, default=40)
    g.add_argument("--json", metavar="PATH")
    return ap


def _config(args) -> RunConfig:
    return RunConfig(
        family=args.family, path=args.file, characteristic=args.char,
        arrow_order=_order_list(args.order), vertex_order=_order_list(args.vertex_order),
        oracle=getattr(args, "oracle", False),
        oracle_limit=getattr(args, "oracle_limit", DEFAULT_LIMIT),
        vanishing_only=getattr(args, "vanishing_only", False),
        json_path=args.json, cap=args.cap,
        emit_resolution=getattr(args, "emit_resolution", False),
        timing=getattr(args, "timing", False), quiet=args.quiet,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify-families":
        return cmd_verify_families(args)
    cfg = _config(args)
    if args.command == "vanishing":
        return cmd_vanishing(cfg)
    return cmd_compute(cfg)


if __name__ == "__main__":
    sys.exit(main())
