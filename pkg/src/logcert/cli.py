"""Command-line interface: every analysis as a subcommand, deterministic output.

Exit codes: 0 = all certifications in scope pass, 2 = a certification failed on
the data (with an exact witness in the output), 1 = usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath

from . import asymptotics, logbehavior, recurrences, sequences
from .kernel import DEFAULT_PRECISION
from .report import AnalysisReport
from .sequences import SequenceValues, format_exact

FLOAT_DIGITS = 20  # fixed decimal digits for printed high-precision values


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        raise UsageError(message)


def nstr(x) -> str:
    return mpmath.nstr(x, FLOAT_DIGITS)


def parse_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"malformed range {text!r}; expected LO..HI") from exc
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> _Parser:
    parser = _Parser(prog="logcert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seq", choices=["a", "b", "apery", "s"], default=None)
    common.add_argument("--file", default=None, help="read sequence from an index<TAB>value file")
    common.add_argument("--range", dest="range_", default="1..200", metavar="LO..HI")
    common.add_argument(
        "--precision",
        type=int,
        default=int(os.environ.get("LOGCERT_PRECISION", DEFAULT_PRECISION)),
        help="working precision in bits",
    )
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    sub.add_parser("eval", parents=[common], help="print exact sequence terms")

    p = sub.add_parser("verify-rec", parents=[common], help="exact residue check of the recurrence")
    p.add_argument("--recurrence", default=None, help="recurrence text file (defaults to the known one)")

    p = sub.add_parser("guess-rec", parents=[common], help="rediscover a recurrence from exact terms")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=9)
    p.add_argument("--terms", type=int, default=80)

    p = sub.add_parser("char-poly", parents=[common], help="characteristic polynomial of the recurrence")
    p.add_argument("--recurrence", default=None)

    p = sub.add_parser("roots", parents=[common], help="real roots of the characteristic polynomial")
    p.add_argument("--recurrence", default=None)

    p = sub.add_parser("ratio-limit", parents=[common], help="dominant-root ratio limit with tail check")
    p.add_argument("--recurrence", default=None)

    sub.add_parser("classify", parents=[common], help="log-convex/log-concave classification")

    p = sub.add_parser("certify-ratio", parents=[common], help="strict ratio monotonicity certification")
    p.add_argument("--direction", choices=["increasing", "decreasing"], default="increasing")

    p = sub.add_parser("certify-nth-root", parents=[common], help="strict n-th-root ratio decrease")
    p.add_argument("--mode", choices=["auto", "exact", "log"], default="auto")

    p = sub.add_parser("fit-puiseux", parents=[common], help="fit r2 = 1 + c/n^alpha on a tail window")
    p.add_argument("--window", default=None, metavar="LO..HI")

    p = sub.add_parser("fit-decay", parents=[common], help="polynomial decay exponent against the dominant root")
    p.add_argument("--window", default=None, metavar="LO..HI")

    sub.add_parser("audit-bounds", parents=[common], help="exact audit of the claimed bounds")

    p = sub.add_parser("audit-apery-asym", parents=[common], help="Apery asymptotic formula vs exact values")
    p.add_argument("--order", choices=["main", "corrected"], default="corrected")

    sub.add_parser("report-all", parents=[common], help="full certification battery as one JSON document")
    return parser


def load_sequence(args, last_needed: int) -> SequenceValues:
    if args.file:
        vals = sequences.read_sequence(args.file)
        if vals.last_index < last_needed:
            raise UsageError(f"{args.file}: need terms up to index {last_needed}")
        return vals
    name = args.seq or "a"
    offset = 0 if name == "apery" else 1
    return sequences.sequence_table(name, last_needed - offset + 1)


def load_recurrence(args) -> recurrences.PRecurrence:
    if getattr(args, "recurrence", None):
        with open(args.recurrence) as fh:
            return recurrences.PRecurrence.from_text(fh.read())
    if args.seq in ("a", "b"):
        return recurrences.known_recurrence(args.seq)
    raise UsageError("no built-in recurrence for this sequence; pass --recurrence FILE")


def resolved_config(args, lo: int, hi: int) -> dict:
    return {
        "command": args.command,
        "sequence": args.file or args.seq or "a",
        "range": [lo, hi],
        "precision": args.precision,
        "format": args.format,
    }


def emit(args, lines: List[str], doc: dict) -> None:
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        rows = doc.get("csv")
        if rows is None:
            raise UsageError(f"{args.command} has no csv form; use text or json")
        text = "\n".join(",".join(str(c) for c in row) for row in rows) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report_exit(report: AnalysisReport) -> int:
    return 0 if report.holds or report.verdict == "threshold" else 2


def cmd_eval(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi)
    lines = [f"{n}\t{format_exact(vals[n])}" for n in range(max(lo, vals.offset), hi + 1)]
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "terms": {str(n): format_exact(vals[n]) for n in range(max(lo, vals.offset), hi + 1)},
        "csv": [["n", "value"]] + [[n, format_exact(vals[n])] for n in range(max(lo, vals.offset), hi + 1)],
    }
    emit(args, lines, doc)
    return 0


def cmd_verify_rec(args) -> int:
    lo, hi = parse_range(args.range_)
    rec = load_recurrence(args)
    vals = load_sequence(args, hi + rec.order)
    report = recurrences.verify_recurrence(rec, vals, max(lo, vals.offset), hi)
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "report": report.to_doc()}
    emit(args, [f"recurrence {vals.name} [{lo},{hi}]: {report.verdict}"
                + (f" at n={report.witness_index} residue={report.witness}" if not report.holds else "")], doc)
    return report_exit(report)


def cmd_guess_rec(args) -> int:
    lo, _ = parse_range(args.range_)
    vals = load_sequence(args, lo + args.terms - 1) if args.file else load_sequence(args, args.terms)
    rec = recurrences.guess_recurrence(vals, args.max_order, args.max_degree)
    if rec is None:
        emit(args, ["no recurrence found within the bounds"],
             {"schema": 1, "config": resolved_config(args, lo, lo), "recurrence": None})
        return 2
    text = rec.to_text()
    doc = {"schema": 1, "config": resolved_config(args, lo, lo), "recurrence": text}
    emit(args, [text.rstrip("\n")], doc)
    return 0


def cmd_char_poly(args) -> int:
    lo, hi = parse_range(args.range_)
    poly = recurrences.characteristic_poly(load_recurrence(args))
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "characteristic_polynomial": str(poly)}
    emit(args, [str(poly)], doc)
    return 0


def cmd_roots(args) -> int:
    lo, hi = parse_range(args.range_)
    poly = recurrences.characteristic_poly(load_recurrence(args))
    result = recurrences.roots_real(poly, args.precision)
    lines = [f"polynomial: {poly}"]
    roots_doc = []
    for i, r in enumerate(result.roots):
        mark = " (dominant)" if i == result.dominant else ""
        lines.append(f"root {nstr(r.value)} [{r.tag}]{mark}")
        roots_doc.append({"value": nstr(r.value), "tag": r.tag, "dominant": i == result.dominant})
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "polynomial": str(poly),
        "roots": roots_doc,
    }
    emit(args, lines, doc)
    return 0


def cmd_ratio_limit(args) -> int:
    lo, hi = parse_range(args.range_)
    rec = load_recurrence(args)
    vals = load_sequence(args, hi + 1)
    result = recurrences.ratio_limit(rec, vals, args.precision)
    lines = [
        f"limit candidate: {nstr(result.value)} [{result.root.tag}]",
        f"empirical tail ratio: {nstr(result.empirical)}",
        f"gap: {nstr(result.gap)}",
        result.note,
    ]
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "limit": nstr(result.value),
        "empirical": nstr(result.empirical),
        "gap": nstr(result.gap),
        "note": result.note,
    }
    emit(args, lines, doc)
    return 0


def cmd_classify(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi)
    report = logbehavior.classify_log_behavior(vals, hi)
    flavor = report.details.get("flavor", "mixed")
    lines = [f"{vals.name}: {flavor} from N={report.threshold} ({report.notes})"
             if report.verdict == "threshold" else f"{vals.name}: {report.verdict} ({report.notes})"]
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "report": report.to_doc()}
    emit(args, lines, doc)
    return report_exit(report)


def cmd_certify_ratio(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi + 1)
    report = logbehavior.monotone_ratio_certify(vals, args.direction, max(lo, vals.offset), hi)
    lines = [f"{vals.name} ratio {args.direction} on [{lo},{hi}]: {report.verdict}"
             + (f" at n={report.witness_index} ({report.notes})" if not report.holds else "")]
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "report": report.to_doc()}
    emit(args, lines, doc)
    return report_exit(report)


def cmd_certify_nth_root(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi + 1)
    start = max(lo, vals.offset + 2)
    report = logbehavior.nth_root_ratio_certify(vals, start, hi, mode=args.mode, precision=args.precision)
    lines = [f"{vals.name} nth-root ratio decreasing on [{start},{hi}] ({args.mode}): {report.verdict}"
             + (f" at n={report.witness_index}" if not report.holds else "")]
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "report": report.to_doc()}
    emit(args, lines, doc)
    return report_exit(report)


def default_window(args, lo_avail: int, hi_avail: int) -> Tuple[int, int]:
    override = getattr(args, "window", None)
    if override:
        return parse_range(override)
    length = hi_avail - lo_avail + 1
    count = max(32, (3 * length) // 4)
    return max(lo_avail, hi_avail - count + 1), hi_avail


def cmd_fit_puiseux(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi + 2)
    r2 = logbehavior.ratio2_seq(vals)
    window = default_window(args, max(lo, r2.offset), hi)
    fit = logbehavior.puiseux_fit(r2, window, precision=args.precision)
    lines = [
        f"window: [{fit.window[0]}, {fit.window[1]}]",
        f"c = {nstr(fit.c)}",
        f"alpha = {nstr(fit.alpha)}",
        f"beta = {nstr(fit.beta)} (default alpha+1)",
        f"max log-residual = {nstr(fit.residual)}",
    ]
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "fit": {
            "window": list(fit.window),
            "c": nstr(fit.c),
            "alpha": nstr(fit.alpha),
            "beta": nstr(fit.beta),
            "residual": nstr(fit.residual),
        },
    }
    emit(args, lines, doc)
    return 0


def cmd_fit_decay(args) -> int:
    lo, hi = parse_range(args.range_)
    vals = load_sequence(args, hi)
    window = default_window(args, max(lo, vals.offset if vals.name != "a" else 2), hi)
    with mpmath.workprec(args.precision):
        base = 17 + 12 * mpmath.sqrt(2)
    t = asymptotics.decay_exponent_fit(vals, base, window, args.precision)
    lines = [f"window: [{window[0]}, {window[1]}]", f"decay exponent t = {nstr(t)} (u_n ~ C base^n / n^t)"]
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "fit": {"window": list(window), "growth_base": nstr(base), "t": nstr(t)},
    }
    emit(args, lines, doc)
    return 0


def cmd_audit_bounds(args) -> int:
    lo, hi = parse_range(args.range_)
    name = args.seq or "a"
    if name == "a":
        report = asymptotics.a_bounds_audit(max(lo, 1), hi)
    elif name == "b":
        report = asymptotics.b_bounds_audit(max(lo, 1), hi, args.precision)
    else:
        raise UsageError("bounds audits exist for sequences a and b")
    d = report.details
    lines = [
        f"{name} claimed bounds on [{lo},{hi}]: {report.verdict}",
        f"lower violations: {d['lower_violations']} (holds from {d['lower_threshold']})",
        f"upper violations: {d['upper_violations']} (holds from {d['upper_threshold']})",
        report.notes,
    ]
    doc = {"schema": 1, "config": resolved_config(args, lo, hi), "report": report.to_doc()}
    emit(args, lines, doc)
    return 0  # audits measure claims; they do not gate the exit code


def cmd_audit_apery_asym(args) -> int:
    lo, hi = parse_range(args.range_)
    rows = [["n", "exact", "formula", "relative_error"]]
    lines = []
    for n in range(max(lo, 1), hi + 1):
        ev = asymptotics.apery_asymptotic(n, args.order, args.precision)
        rows.append([n, format_exact(ev.exact), nstr(ev.formula), nstr(ev.relative_error)])
        lines.append(f"{n}\t{format_exact(ev.exact)}\t{nstr(ev.formula)}\t{nstr(ev.relative_error)}")
    doc = {
        "schema": 1,
        "config": resolved_config(args, lo, hi),
        "order": args.order,
        "csv": rows,
        "rows": [dict(zip(rows[0], r)) for r in rows[1:]],
    }
    emit(args, lines, doc)
    return 0


def cmd_report_all(args) -> int:
    lo, hi = parse_range(args.range_)
    if hi - lo < 40:
        raise UsageError("report-all needs a range of at least 40 indices")
    failed = False
    config = resolved_config(args, lo, hi)
    config["sequence"] = "a,b"
    doc = {"schema": 1, "config": config, "sequences": {}}
    with mpmath.workprec(args.precision):
        limit_str = nstr(17 + 12 * mpmath.sqrt(2))
    for name in ("a", "b"):
        vals = sequences.sequence_table(name, hi + 4)
        rec = recurrences.known_recurrence(name)
        entry: dict = {}
        verify = recurrences.verify_recurrence(rec, vals, max(lo, 1), hi)
        entry["recurrence"] = verify.to_doc()
        failed |= not verify.holds
        poly = recurrences.characteristic_poly(rec)
        entry["characteristic_polynomial"] = str(poly)
        rl = recurrences.ratio_limit(rec, vals, args.precision)
        entry["ratio_limit"] = {
            "value": f"17+12*sqrt(2) = {limit_str}",
            "empirical": nstr(rl.empirical),
            "gap": nstr(rl.gap),
        }
        classify = logbehavior.classify_log_behavior(vals, hi)
        entry["log_behavior"] = classify.to_doc()
        start = logbehavior.find_monotone_start(vals, "increasing", hi)
        entry["ratio_monotone"] = {"empirical_start": start}
        if start is None or start > lo + 10:
            failed = True
        else:
            cert = logbehavior.monotone_ratio_certify(vals, "increasing", start, hi)
            entry["ratio_monotone"]["report"] = cert.to_doc()
            failed |= not cert.holds
        nr_start = vals.offset + 2
        nr = logbehavior.nth_root_ratio_certify(vals, nr_start, hi, mode="log", precision=args.precision)
        entry["nth_root_ratio"] = nr.to_doc()
        failed |= not nr.holds
        r2 = logbehavior.ratio2_seq(vals)
        window = default_window(args, max(lo, r2.offset, 10), min(hi, r2.last_index))
        fit = logbehavior.puiseux_fit(r2, window, precision=args.precision)
        order, flavor = logbehavior.r_order(fit)
        entry["puiseux_fit"] = {
            "window": list(fit.window),
            "c": nstr(fit.c),
            "alpha": nstr(fit.alpha),
            "beta": nstr(fit.beta),
            "residual": nstr(fit.residual),
            "r_order": order,
            "flavor": flavor,
        }
        audit = asymptotics.a_bounds_audit(max(lo, 1), hi) if name == "a" else asymptotics.b_bounds_audit(
            max(lo, 1), hi, args.precision
        )
        entry["claimed_bounds"] = audit.to_doc()
        doc["sequences"][name] = entry
    doc["apery_asymptotic"] = [
        asymptotics.apery_asymptotic(n, "corrected", args.precision)
        for n in (50, 100, 200)
        if n <= hi
    ]
    doc["apery_asymptotic"] = [
        {"n": ev.n, "relative_error": nstr(ev.relative_error)} for ev in doc["apery_asymptotic"]
    ]
    lines = [json.dumps(doc, sort_keys=True, indent=2)]
    args_format = args.format
    if args_format == "text":
        args.format = "json"  # report-all is inherently a JSON document
    emit(args, lines, doc)
    args.format = args_format
    return 2 if failed else 0


COMMANDS = {
    "eval": cmd_eval,
    "verify-rec": cmd_verify_rec,
    "guess-rec": cmd_guess_rec,
    "char-poly": cmd_char_poly,
    "roots": cmd_roots,
    "ratio-limit": cmd_ratio_limit,
    "classify": cmd_classify,
    "certify-ratio": cmd_certify_ratio,
    "certify-nth-root": cmd_certify_nth_root,
    "fit-puiseux": cmd_fit_puiseux,
    "fit-decay": cmd_fit_decay,
    "audit-bounds": cmd_audit_bounds,
    "audit-apery-asym": cmd_audit_apery_asym,
    "report-all": cmd_report_all,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
