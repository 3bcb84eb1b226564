"""Command-line front end for orthogonal array analysis.

Reads an array from a text file (rows of level codes, optional ``# levels:``
header), runs the requested analysis, and prints either a human-readable
report or JSON. Column indices are 1-based on the command line and in all
output; the library API underneath is 0-based.

Exit codes:
    0  success
    1  verification found a mismatch between main path and oracle
    2  the input could not be parsed or validated
    3  the array has strength 0, so resolution-based commands cannot run
"""

import argparse
import itertools
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from .array import (
    OrthogonalArray,
    coincidence_distribution,
    max_t_balance,
    parse_oa,
    strength,
    v_uniformity,
    weak_strength,
)
from .cancor import canonical_correlations, r2_sum
from .coding import SCHEMES, full_model_matrix, main_effect_matrix
from .errors import (
    CodingError,
    OAMetricsError,
    OracleDeclinedError,
    ParseError,
    ResolutionUndefinedError,
    StrengthZeroError,
    ValidationError,
)
from .gwlp import gwlp, projection_a
from .oracle import DEFAULT_SEED, verify_array
from .resolution import (
    a_r_lower_bound,
    gr,
    gr_factorwise,
    gr_ind,
    gr_tot,
    gr_upper_bound,
    resolution_of,
    summarize,
)

EXIT_OK = 0
EXIT_VERIFY_MISMATCH = 1
EXIT_INPUT_ERROR = 2
EXIT_STRENGTH_ZERO = 3


def _int_list(text: str) -> tuple:
    """Comma- or space-separated integers, e.g. "2,3" or "2 3"."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise argparse.ArgumentTypeError("expected at least one integer")
    try:
        return tuple(int(tok) for tok in tokens)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load_array(args: argparse.Namespace) -> OrthogonalArray:
    with open(args.input, "r", encoding="utf-8") as handle:
        text = handle.read()
    override = getattr(args, "levels", None)
    return parse_oa(text, level_override=override)


def _columns_in(values: Sequence[int], n: int, what: str) -> tuple:
    out = []
    for v in values:
        if not 1 <= v <= n:
            raise ValidationError(
                f"{what} {v} out of range; columns are numbered 1..{n}"
            )
        out.append(v - 1)
    return tuple(out)


def _fmt(value: Optional[float], precision: int) -> str:
    if value is None:
        return "undefined"
    return f"{value:.{precision}f}"


def _fmt_seq(values, precision: int) -> str:
    return " ".join(_fmt(v, precision) for v in values)


def _design_block(oa: OrthogonalArray, source: str) -> Dict[str, Any]:
    return {
        "source": source,
        "runs": oa.runs,
        "factors": oa.factors,
        "levels": list(oa.levels),
    }


def _print_design(oa: OrthogonalArray, source: str) -> None:
    levels = " ".join(str(s) for s in oa.levels)
    print(f"design: {source}")
    print(f"runs: {oa.runs}   factors: {oa.factors}   levels: {levels}")


def _emit(report: Dict[str, Any], as_json: bool, text_lines: List[str]) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def _resolution_block(
    oa: OrthogonalArray, coding: str
) -> Dict[str, Any]:
    """Resolution numbers as a JSON-ready dict; degenerate cases get nulls."""
    t = strength(oa)
    block: Dict[str, Any] = {"strength": t, "resolution": None, "gr": None,
                             "gr_ind": None, "gr_tot": None, "note": None}
    try:
        block["resolution"] = resolution_of(oa)
    except ResolutionUndefinedError:
        block["note"] = (
            "strength equals the number of factors (full factorial); "
            "resolution exceeds the factor count and gr values are undefined"
        )
        return block
    block["gr"] = gr(oa, coding=coding)
    block["gr_ind"] = gr_ind(oa, coding=coding)
    block["gr_tot"] = gr_tot(oa, coding=coding)
    return block


def cmd_analyze(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    t = strength(oa)
    if t == 0:
        print("error: array has strength 0; no resolution analysis possible",
              file=sys.stderr)
        return EXIT_STRENGTH_ZERO
    max_k = args.max_k if args.max_k is not None else min(oa.factors, 5)
    pattern = gwlp(oa, max_k=max_k, coding=args.coding)
    res_block = _resolution_block(oa, args.coding)
    report: Dict[str, Any] = {
        "design": _design_block(oa, args.input),
        "gwlp": {
            "coding": args.coding,
            "max_k": max_k,
            "values": [float(v) for v in pattern.values],
            "resolution": pattern.resolution,
        },
        "resolution": res_block,
        "factors": [],
        "projections": [],
        "bounds": None,
    }
    p = args.precision
    lines: List[str] = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"strength: {t}")
    if res_block["resolution"] is None:
        lines.append(res_block["note"])
        lines.append(f"gwlp (k=0..{max_k}, {args.coding} coding): "
                     + _fmt_seq(pattern.values, p))
        _emit(report, args.json, lines)
        return EXIT_OK

    summary = summarize(oa, coding=args.coding)
    report["factors"] = [
        {
            "column": f.column + 1,
            "levels": f.levels,
            "gr_tot": f.gr_tot,
            "gr_ind": f.gr_ind,
        }
        for f in summary.per_factor
    ]
    r = summary.resolution
    for cols in itertools.combinations(range(oa.factors), r):
        report["projections"].append(
            {"columns": [c + 1 for c in cols],
             "a": projection_a(oa, cols, coding=args.coding).value}
        )
    if summary.bound is not None:
        report["bounds"] = {
            "gr_upper": summary.bound.value,
            "remainder": summary.bound.remainder,
            "attained": summary.bound.attained,
        }

    lines.append(f"resolution: {r}")
    lines.append(f"gwlp (k=0..{max_k}, {args.coding} coding): "
                 + _fmt_seq(pattern.values, p))
    lines.append(f"gr: {_fmt(summary.gr, p)}   gr_ind: {_fmt(summary.gr_ind, p)}"
                 f"   gr_tot: {_fmt(summary.gr_tot, p)}")
    lines.append("per-factor gr_tot: "
                 + _fmt_seq((f.gr_tot for f in summary.per_factor), p))
    lines.append("per-factor gr_ind: "
                 + _fmt_seq((f.gr_ind for f in summary.per_factor), p))
    worst_cols = " ".join(str(c + 1) for c in summary.worst_projection)
    lines.append(f"worst projection: columns {worst_cols} "
                 f"(a_{r} = {_fmt(projection_a(oa, summary.worst_projection, coding=args.coding).value, p)})")
    if summary.bound is not None:
        tag = "attained" if summary.bound.attained else "not attained"
        lines.append(f"gr upper bound: {_fmt(summary.bound.value, p)} ({tag})")
    else:
        lines.append("gr upper bound: not applicable (mixed level counts)")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_gwlp(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    max_k = args.max_k if args.max_k is not None else oa.factors
    pattern = gwlp(oa, max_k=max_k, coding=args.coding)
    report = {
        "design": _design_block(oa, args.input),
        "gwlp": {
            "coding": args.coding,
            "max_k": max_k,
            "values": [float(v) for v in pattern.values],
            "resolution": pattern.resolution,
        },
    }
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"gwlp (k=0..{max_k}, {args.coding} coding): "
                 + _fmt_seq(pattern.values, args.precision))
    if pattern.resolution is not None:
        lines.append(f"resolution: {pattern.resolution}")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_gr(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    if strength(oa) == 0:
        print("error: array has strength 0; generalized resolution undefined",
              file=sys.stderr)
        return EXIT_STRENGTH_ZERO
    res_block = _resolution_block(oa, args.coding)
    report: Dict[str, Any] = {
        "design": _design_block(oa, args.input),
        "resolution": res_block,
        "factors": [],
    }
    p = args.precision
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"strength: {res_block['strength']}")
    if res_block["resolution"] is None:
        lines.append(res_block["note"])
        _emit(report, args.json, lines)
        return EXIT_OK
    per_factor = gr_factorwise(oa, coding=args.coding)
    report["factors"] = [
        {"column": f.column + 1, "levels": f.levels,
         "gr_tot": f.gr_tot, "gr_ind": f.gr_ind}
        for f in per_factor
    ]
    lines.append(f"resolution: {res_block['resolution']}")
    lines.append(f"gr: {_fmt(res_block['gr'], p)}   "
                 f"gr_ind: {_fmt(res_block['gr_ind'], p)}   "
                 f"gr_tot: {_fmt(res_block['gr_tot'], p)}")
    lines.append("per-factor gr_tot: "
                 + _fmt_seq((f.gr_tot for f in per_factor), p))
    lines.append("per-factor gr_ind: "
                 + _fmt_seq((f.gr_ind for f in per_factor), p))
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_strength(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    t = strength(oa, max_t=args.max_t)
    report = {
        "design": _design_block(oa, args.input),
        "strength": t,
        "coincidences": {str(k): v for k, v in
                         sorted(coincidence_distribution(oa).items())},
        "v_uniformity": v_uniformity(oa),
    }
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"strength: {t}")
    pairs = ", ".join(f"{k}: {v}" for k, v in
                      sorted(coincidence_distribution(oa).items()))
    lines.append(f"coincidence counts (shared coordinates: pairs): {pairs}")
    lines.append(f"v uniformity: {_fmt(v_uniformity(oa), args.precision)}")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_balance(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    t = args.t
    if not 1 <= t <= oa.factors:
        raise ValidationError(f"t must be between 1 and {oa.factors}")
    report_obj = max_t_balance(oa, t)
    weak = weak_strength(oa, t)
    report = {
        "design": _design_block(oa, args.input),
        "balance": {
            "t": t,
            "is_strength_t": report_obj.is_strength_t,
            "has_max_t_balance": report_obj.has_max_t_balance,
            "weak_strength_t": weak,
            "q": report_obj.q,
            "r": report_obj.r,
            "witness": [c + 1 for c in report_obj.witness]
            if report_obj.witness is not None else None,
        },
    }
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"strength {t}: {'yes' if report_obj.is_strength_t else 'no'}")
    lines.append("maximal balance in {t}-tuples: {v}".format(
        t=t, v="yes" if report_obj.has_max_t_balance else "no"))
    lines.append(f"weak strength {t}: {'yes' if weak else 'no'}")
    lines.append(f"cell counts split as q={report_obj.q}, remainder r={report_obj.r}")
    if report_obj.witness is not None:
        cols = " ".join(str(c + 1) for c in report_obj.witness)
        lines.append(f"first failing column set: {cols}")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    n_runs, s, big_r = args.N, args.s, args.R
    levels = (s,) * big_r
    a_lower = a_r_lower_bound(n_runs, levels)
    upper = gr_upper_bound(n_runs, s, big_r)
    report = {
        "bounds": {
            "runs": n_runs,
            "levels": s,
            "strength": big_r - 1,
            "a_lower": a_lower,
            "gr_upper": upper.value,
            "remainder": upper.remainder,
        }
    }
    p = args.precision
    lines = [
        f"projection frequency lower bound a_{big_r} >= {_fmt(a_lower, p)}",
        f"gr upper bound: {_fmt(upper.value, p)} (remainder {upper.remainder})",
    ]
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_cancor(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    factor = _columns_in([args.factor], oa.factors, "factor")[0]
    subset = _columns_in(args.subset, oa.factors, "column")
    if factor in subset:
        raise ValidationError("factor must not appear in the subset")
    if len(set(subset)) != len(subset):
        raise ValidationError("subset columns must be distinct")
    if args.coding == "dummy":
        print("warning: dummy coding is not orthogonal; R^2 totals depend on "
              "the coding and are shown for demonstration only",
              file=sys.stderr)
    y = main_effect_matrix(oa, factor, args.coding)
    x = full_model_matrix(oa, tuple(sorted(subset)), args.coding)
    result = canonical_correlations(y, x)
    try:
        r2 = r2_sum(y, x, check_orthogonality=args.coding != "dummy")
        per_column = list(r2.per_column)
        total = r2.total
    except CodingError:
        per_column, total = None, None
    report = {
        "design": _design_block(oa, args.input),
        "cancor": {
            "factor": factor + 1,
            "subset": [c + 1 for c in sorted(subset)],
            "coding": args.coding,
            "correlations": list(result.correlations),
            "largest": result.largest,
            "sum_of_squares": result.sum_of_squares,
            "r2_per_contrast": per_column,
            "r2_total": total,
        },
    }
    p = args.precision
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    subset_txt = " ".join(str(c + 1) for c in sorted(subset))
    lines.append(f"factor {factor + 1} vs full model of columns {subset_txt} "
                 f"({args.coding} coding)")
    lines.append("canonical correlations: "
                 + _fmt_seq(result.correlations, p))
    lines.append(f"largest: {_fmt(result.largest, p)}   "
                 f"sum of squares: {_fmt(result.sum_of_squares, p)}")
    if per_column is not None:
        lines.append("r^2 per contrast: " + _fmt_seq(per_column, p))
        lines.append(f"r^2 total: {_fmt(total, p)}")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    oa = _load_array(args)
    reports = verify_array(oa, max_k=args.max_k, seed=args.seed)
    mismatches = [r for r in reports if not r.ok]
    max_diff = max((r.diff for r in reports), default=0.0)
    report = {
        "design": _design_block(oa, args.input),
        "verify": {
            "checks": len(reports),
            "mismatches": len(mismatches),
            "max_diff": max_diff,
            "seed": args.seed,
            "failures": [
                {"quantity": r.quantity, "context": list(r.context),
                 "main": r.main, "oracle": r.oracle, "diff": r.diff}
                for r in mismatches
            ],
        },
    }
    lines = []
    if not args.json:
        _print_design(oa, args.input)
    lines.append(f"checks run: {len(reports)}   mismatches: {len(mismatches)}"
                 f"   max difference: {max_diff:.3e}")
    for r in mismatches:
        lines.append(f"  MISMATCH {r.quantity} {r.context}: "
                     f"main={r.main!r} oracle={r.oracle!r} diff={r.diff:.3e}")
    _emit(report, args.json, lines)
    return EXIT_OK if not mismatches else EXIT_VERIFY_MISMATCH


def _add_common(parser: argparse.ArgumentParser, coding: bool = True,
                schemes: Sequence[str] = ("polynomial", "helmert")) -> None:
    parser.add_argument("input", help="path to an array file")
    parser.add_argument("--levels", type=_int_list, metavar="S1,S2,...",
                        help="override the per-column level counts")
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of text")
    parser.add_argument("--precision", type=int, default=2, metavar="P",
                        help="decimal places in text output (default 2)")
    if coding:
        parser.add_argument("--coding", choices=list(schemes),
                            default="polynomial",
                            help="contrast coding scheme (default polynomial)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oametrics",
        description="Analyze orthogonal arrays with qualitative factors: "
                    "word length patterns, projection frequencies, and "
                    "canonical-correlation based generalized resolutions. "
                    "Columns are numbered starting at 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report: gwlp, resolutions, "
                                       "projections, bounds")
    _add_common(p)
    p.add_argument("--max-k", type=int, default=None, metavar="K",
                   help="largest word length to report (default min(n, 5))")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gwlp", help="generalized word length pattern")
    _add_common(p)
    p.add_argument("--max-k", type=int, default=None, metavar="K",
                   help="largest word length to report (default: all)")
    p.set_defaults(func=cmd_gwlp)

    p = sub.add_parser("gr", help="generalized resolution values")
    _add_common(p)
    p.set_defaults(func=cmd_gr)

    p = sub.add_parser("strength", help="strength and uniformity diagnostics")
    _add_common(p, coding=False)
    p.add_argument("--max-t", type=int, default=None, metavar="T",
                   help="stop the strength search at T")
    p.set_defaults(func=cmd_strength)

    p = sub.add_parser("balance", help="balance diagnostics for t-tuples")
    _add_common(p, coding=False)
    p.add_argument("--t", type=int, required=True,
                   help="tuple size to check")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("bound", help="bounds for symmetric arrays from run "
                                     "size, level count, and resolution")
    p.add_argument("--N", type=int, required=True, help="number of runs")
    p.add_argument("--s", type=int, required=True, help="levels per factor")
    p.add_argument("--R", type=int, required=True, help="resolution")
    p.add_argument("--json", action="store_true",
                   help="emit a JSON report instead of text")
    p.add_argument("--precision", type=int, default=2, metavar="P",
                   help="decimal places in text output (default 2)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("cancor", help="canonical correlations of one factor "
                                      "against a column subset")
    _add_common(p, schemes=SCHEMES[:3])
    p.add_argument("--factor", type=int, required=True,
                   help="factor column (1-based)")
    p.add_argument("--subset", type=_int_list, required=True,
                   metavar="C1,C2,...",
                   help="columns of the explanatory subset (1-based)")
    p.set_defaults(func=cmd_cancor)

    p = sub.add_parser("verify", help="compare the main computation path "
                                      "against the slow oracle")
    _add_common(p, coding=False)
    p.add_argument("--max-k", type=int, default=None, metavar="K",
                   help="largest projection size to verify")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for the oracle's random rotations")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, CodingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except StrengthZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRENGTH_ZERO
    except (OracleDeclinedError, OAMetricsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
