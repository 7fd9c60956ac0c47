"""Command-line front end.

Exit codes: 0 success / pass, 1 analysis-negative, 2 input error.
Output is deterministic: keys sorted, floats printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import embedding as emb
from . import isomorphism as iso
from . import kernel as ker
from . import series as ser
from .errors import MalformedInput, PickDiscError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0.0"
    return f"{x:.17g}" if ("e" in f"{x:.17g}" or "." in f"{x:.17g}") else f"{x:.17g}.0"


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        return format_float(float(obj))
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0].keys())
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([format_float(float(row[k])) if isinstance(row[k], (float, Fraction, np.floating)) else row[k] for k in fields])
    return buf.getvalue()


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def load_embedding(path: str) -> emb.EmbeddingMap:
    return emb.EmbeddingMap.from_json(_load_json(path))


def load_coefficients(path: str) -> ser.CoefficientSequence:
    return ser.CoefficientSequence.from_json(_load_json(path))


def _complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        parts = value.split(",")
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
        return complex(value.replace(" ", ""))
    re, im = value
    return complex(float(re), float(im))


def _normalized(f: emb.EmbeddingMap, grid: int) -> tuple[emb.EmbeddingMap, dict | None]:
    """Move a single crossing to +-1 if it is not there already."""
    if emb.has_pm1_crossing(f):
        return f, None
    crossings = emb.find_self_crossings(f, grid)
    if len(crossings) != 1:
        raise MalformedInput(f"expected exactly one boundary crossing, found {len(crossings)}")
    g, mu = emb.normalize_crossing(f, crossings[0])
    return g, {"crossing": crossings[0].to_json(), "mobius": mu.to_json()}


def cmd_validate(args) -> tuple[int, object]:
    f = load_embedding(args.embedding)
    report = emb.validate_embedding(f, args.grid)
    return (EXIT_OK if report.passed else EXIT_NEGATIVE), report.to_json()


def cmd_crossings(args) -> tuple[int, object]:
    f = load_embedding(args.embedding)
    grid = args.grid
    if args.compare:
        g = load_embedding(args.compare)
        verdict = iso.same_crossing_type(f, g, grid)
        return (EXIT_OK if verdict.same else EXIT_NEGATIVE), verdict.to_json()
    return EXIT_OK, [c.to_json() for c in emb.find_self_crossings(f, grid)]


def cmd_obstruct(args) -> tuple[int, object]:
    f0, g0 = load_embedding(args.f), load_embedding(args.g)
    crossing_type = iso.same_crossing_type(f0, g0, args.grid)
    f, f_norm = _normalized(f0, args.grid)
    g, g_norm = _normalized(g0, args.grid)
    rf, rg = iso.invariant_ratio(f), iso.invariant_ratio(g)
    cand = iso.candidate_automorphisms(f, g)
    limits = iso.matched_path_limits(f, g, args.t_min)
    tol = args.tolerance if args.tolerance is not None else 1e-8
    ratio_aligned = iso.invariant_ratio(g.compose(cand.alpha_map)).value
    ratios_equal = abs(rf.value - rg.value) <= tol * max(rf.value, rg.value)
    passed = crossing_type.same and ratios_equal and limits.extrapolated_dg < 1e-3
    notes = []
    if abs(cand.alpha) < 1e-12 and abs(cand.beta) < 1e-12:
        notes.append("identity and flip are the only candidates")
    report = {
        "verdict": "obstruction_passed" if passed else "obstruction_failed",
        "same_crossing_type": crossing_type.same,
        "ratio_f": rf.value,
        "ratio_g": rg.value,
        "alpha": cand.alpha,
        "beta": cand.beta,
        "ratio_g_after_alpha": ratio_aligned,
        "predicted_dg_limit": limits.predicted_dg_limit,
        "extrapolated_dg": limits.extrapolated_dg,
        "extrapolated_df": limits.extrapolated_df,
        "normalization_f": f_norm,
        "normalization_g": g_norm,
        "ladder": limits.table(),
        "notes": notes + list(limits.notes),
    }
    code = EXIT_OK if passed else EXIT_NEGATIVE
    if args.format == "csv":
        return code, limits.table()
    return code, report


def _coefficients_from_args(args) -> ser.CoefficientSequence:
    if args.weighted_hardy is not None:
        s = args.weighted_hardy
        exact = float(s).is_integer()
        return ser.weighted_hardy_coeffs(s, args.truncation, exact=exact)
    if not args.coeffs:
        raise MalformedInput("series needs a coefficient file or --weighted-hardy S")
    c = load_coefficients(args.coeffs)
    if args.truncation is not None and c.truncation > args.truncation:
        c = ser.CoefficientSequence(c.values[: args.truncation + 1], c.mode, c.generator)
    return c


def cmd_series(args) -> tuple[int, object]:
    c = ser.normalize(_coefficients_from_args(args))
    rep = ser.reciprocal_coeffs(c)
    verdict = ser.complete_pick_check(c, rep)
    out = {
        "generator": c.generator,
        "mode": c.mode,
        "truncation": c.truncation,
        "complete_pick": verdict.to_json(),
        "sum_r": float(rep.sum_r),
        "all_nonnegative": rep.all_nonnegative,
    }
    if verdict.is_complete_pick:
        out["embedding_dimension"] = ser.embedding_dimension(c).to_json()
        try:
            out["renewal"] = ser.renewal_limit(c).to_json()
        except PickDiscError as exc:
            out["renewal"] = {"error": str(exc)}
    table = [{"n": n, "c": float(c.values[n]), "r": float(rep.r[n - 1]) if n else 0.0} for n in range(len(c.values))]
    code = EXIT_NEGATIVE if (args.require_cp and not verdict.is_complete_pick) else EXIT_OK
    if args.format == "csv":
        return code, table
    out["r"] = [float(x) for x in rep.r]
    return code, out


def _kernel_from_args(args):
    if getattr(args, "embedding", None):
        return ker.DiscKernel(load_embedding(args.embedding)), "disc"
    if getattr(args, "coeffs", None):
        c = ser.normalize(load_coefficients(args.coeffs))
        return ker.RotationInvariantKernel(c), "rotation_invariant"
    if getattr(args, "weighted_hardy", None) is not None:
        return ker.RotationInvariantKernel(ser.weighted_hardy_coeffs(args.weighted_hardy, 16)), "rotation_invariant"
    return ker.szego_kernel(), "szego"


def cmd_pick(args) -> tuple[int, object]:
    data = _load_json(args.problem)
    try:
        points = [_complex(p) for p in data["points"]]
        targets = [_complex(a) for a in data["targets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed Pick problem: {exc}") from exc
    k, kind = _kernel_from_args(args)
    rtol = args.tolerance if args.tolerance is not None else ker.PSD_RTOL
    report = ker.pick_matrix(k, points, targets, rtol)
    out = report.to_json()
    out["kernel"] = kind
    return (EXIT_OK if report.psd else EXIT_NEGATIVE), out


def cmd_metric(args) -> tuple[int, object]:
    k, kind = _kernel_from_args(args)
    w = _complex(args.point)
    n = args.grid
    radii = np.linspace(0, args.radius, n)
    angles = 2 * np.pi * np.arange(n) / n
    rows = []
    for rho in radii:
        for th in angles:
            z = complex(rho * math.cos(th), rho * math.sin(th))
            rows.append({"re": z.real, "im": z.imag, "d": ker.metric(k, z, w)})
    if args.format == "csv":
        return EXIT_OK, rows
    return EXIT_OK, {"kernel": kind, "point": [w.real, w.imag], "grid": n, "radius": args.radius, "samples": rows}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pickdisc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=None, help="grid size (>= 64)")
    common.add_argument("--truncation", type=int, default=None, help="series truncation N (>= 16)")
    common.add_argument("--t-min", type=float, default=iso.DEFAULT_T_MIN, help="smallest ladder step, in (0, 1e-2)")
    common.add_argument("--tolerance", type=float, default=None, help="override the command's decision tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default=None, help="write here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the analytic-disc conditions")
    s.add_argument("embedding")
    s.set_defaults(func=cmd_validate, default_grid=512)

    s = sub.add_parser("crossings", parents=[common], help="boundary self-crossings")
    s.add_argument("embedding")
    s.add_argument("--compare", default=None, help="second embedding: compare crossing types")
    s.set_defaults(func=cmd_crossings, default_grid=emb.CROSSING_GRID)

    s = sub.add_parser("obstruct", parents=[common], help="isomorphism obstructions for two discs")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_obstruct, default_grid=emb.CROSSING_GRID)

    s = sub.add_parser("series", parents=[common], help="complete Pick / embedding dimension / renewal analysis")
    s.add_argument("coeffs", nargs="?")
    s.add_argument("--weighted-hardy", type=float, default=None, metavar="S")
    s.add_argument("--require-cp", action="store_true")
    s.set_defaults(func=cmd_series, default_grid=None)

    for name, fn, helptext in (("pick", cmd_pick, "Pick matrix positivity"), ("metric", cmd_metric, "kernel metric grid dump")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        if name == "pick":
            s.add_argument("problem", help='JSON {"points": [[re, im], ...], "targets": [[re, im], ...]}')
        else:
            s.add_argument("--point", required=True, help="base point w as 're,im'")
            s.add_argument("--radius", type=float, default=0.95)
        s.add_argument("--embedding", default=None)
        s.add_argument("--coeffs", default=None)
        s.add_argument("--weighted-hardy", type=float, default=None, metavar="S")
        s.set_defaults(func=fn, default_grid=64)
    return p


def _check_config(args) -> None:
    if args.grid is None:
        args.grid = args.default_grid
    if args.grid is not None and args.grid < 64:
        raise MalformedInput("--grid must be >= 64")
    if args.command == "series":
        if args.truncation is None:
            args.truncation = ser.DEFAULT_TRUNCATION
        if args.truncation < 16:
            raise MalformedInput("--truncation must be >= 16")
    if not 0 < args.t_min < 1e-2:
        raise MalformedInput("--t-min must lie in (0, 1e-2)")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_config(args)
        code, payload = args.func(args)
    except (PickDiscError, ValueError) as exc:
        code, payload = EXIT_INPUT, {"error": str(exc)}
        print(f"pickdisc: error: {exc}", file=sys.stderr)
    if args.format == "csv" and isinstance(payload, list):
        text = to_csv(payload)
    else:
        text = dumps(payload) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
