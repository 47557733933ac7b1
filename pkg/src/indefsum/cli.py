"""Command-line front end.

Subcommands: eval | constants | verify | expand | tabulate | catalog.
Exit codes: 0 ok, 2 input/parse error, 3 convergence failure (rows are
still emitted), 4 identity violation.  Output is CSV or JSON, floats
rendered by repr so identical inputs (and seed) give byte-identical
bytes on any platform.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import asymptotics, constants, identities
from .catalog import CATALOG_NAMES, CatalogEntry, builtin, from_expression, \
    named_constant
from .exprlang import ExprError
from .numerics import QuadratureError
from .shape import ShapeError
from .sigma import MissingSigmaConstant, sigma

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3
EXIT_VIOLATION = 4

_PSI2_ONLY_SUITES = ("webster", "wallis", "reflection", "taylor",
                     "euler-series", "inequalities")
_GENERIC_SUITES = ("raabe", "mult", "wendel", "stirling")
_SUITES = _GENERIC_SUITES + _PSI2_ONLY_SUITES + ("all",)


class CliInputError(ValueError):
    """Bad flags, unknown names, unparsable grids: exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    fn: Optional[str]
    expr: Optional[str]
    p: Optional[int]
    shape: Optional[str]
    tol: float
    fmt: str
    seed: int

    def __post_init__(self):
        if (self.fn is None) == (self.expr is None):
            raise CliInputError("exactly one of --fn / --expr is required")
        if self.tol < 1e-12:
            raise CliInputError("--tol must be >= 1e-12")

    @property
    def label(self) -> str:
        return self.fn if self.fn is not None else self.expr


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise CliInputError(f"{flag} expects comma-separated numbers, got {text!r}")
    if not values:
        raise CliInputError(f"{flag} must contain at least one number")
    return values


def _parse_ints(text: str, flag: str) -> list[int]:
    values = _parse_floats(text, flag)
    out = []
    for v in values:
        if v != int(v):
            raise CliInputError(f"{flag} expects integers, got {v!r}")
        out.append(int(v))
    return out


def _resolve_entry(cfg: RunConfig) -> CatalogEntry:
    if cfg.fn is not None:
        if cfg.fn not in CATALOG_NAMES:
            raise CliInputError(
                f"unknown catalog function {cfg.fn!r}; choose from {', '.join(CATALOG_NAMES)}"
            )
        entry = builtin(cfg.fn)
        if cfg.p is not None or cfg.shape is not None:
            g = dataclasses.replace(
                entry.g,
                p=cfg.p if cfg.p is not None else entry.g.p,
                shape=cfg.shape if cfg.shape is not None else entry.g.shape,
            )
            entry = dataclasses.replace(entry, g=g)
        return entry
    try:
        return from_expression(cfg.expr, p=cfg.p, shape=cfg.shape,
                               rng=random.Random(cfg.seed))
    except ExprError as exc:
        raise CliInputError(f"expression error: {exc}")
    except ShapeError as exc:
        raise CliInputError(f"classification failed: {exc}")


def _emit_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# eval

def cmd_eval(cfg: RunConfig, xs: list[float], offset_mode: str, out) -> int:
    entry = _resolve_entry(cfg)
    if any(x <= 0.0 for x in xs):
        raise CliInputError("--x values must be positive")
    try:
        constants.asymptotic_constant(entry.g, entry.g.p)
    except (QuadratureError, ShapeError):
        pass  # per-point strategies still work without the cached constant
    shift = entry.offset if offset_mode == "named" else 0.0
    rows = []
    worst_over_tol = False
    for x in xs:
        res = sigma(entry.g, x, tol=cfg.tol)
        if res.err_estimate > cfg.tol:
            worst_over_tol = True
        rows.append([x, res.value + shift, res.err_estimate, res.strategy])
    if cfg.fmt == "csv":
        out.write(_emit_csv(["x", "sigma", "err_estimate", "strategy"], rows))
    else:
        out.write(_emit_json({
            "command": "eval",
            "function": cfg.label,
            "offset": offset_mode,
            "rows": [
                {"x": r[0], "sigma": r[1], "err_estimate": r[2], "strategy": r[3]}
                for r in rows
            ],
        }))
    return EXIT_CONVERGENCE if worst_over_tol else EXIT_OK


# ---------------------------------------------------------------------------
# constants

def cmd_constants(cfg: RunConfig, out) -> int:
    entry = _resolve_entry(cfg)
    report = constants.constants_report(entry.g, entry.g.p)
    payload = {
        "command": "constants",
        "function": cfg.label,
        "p": report.p,
        "shape": entry.g.shape,
        "sigma": report.sigma,
        "gamma": report.gamma_gen,
        "err": report.err,
        "method": report.method,
    }
    if cfg.fmt == "csv":
        header = ["p", "shape", "sigma", "gamma", "err", "method"]
        out.write(_emit_csv(header, [[payload[h] for h in header]]))
    else:
        out.write(_emit_json(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _suite_raabe(entry, xs):
    xs = xs or [0.5, 1.0, 2.0, 5.0, 10.0]
    sides = [identities.raabe_sides(entry.g, entry.g.p, x) for x in xs]
    residuals = [lhs - rhs for lhs, rhs in sides]
    return [(identities.make_report("raabe", xs, residuals, [list(s) for s in sides]),
             1e-7)]


def _suite_mult(entry, ms, xs):
    ms = ms or [1, 2, 3, 5]
    xs = xs or [0.3, 1.0, 2.7, 8.0]
    points, residuals, sides = [], [], []
    for m in ms:
        for x in xs:
            lhs, rhs = identities.mult_sides(entry.g, entry.g.p, m, x)
            points.append([m, x])
            residuals.append(lhs - rhs)
            sides.append([lhs, rhs])
    reports = [(identities.make_report("mult", points, residuals, sides), 1e-7)]
    if entry.name == "psi2g":
        pts, res, sd = [], [], []
        for m in ms:
            if m >= 2:
                engine, closed = identities.mult_finite_sum_psi2(m)
                pts.append(m)
                res.append(engine - closed)
                sd.append([engine, closed])
        if pts:
            reports.append(
                (identities.make_report("mult-finite-sum", pts, res, sd), 1e-7)
            )
    return reports


def _suite_wendel(entry, xs):
    reports = []
    a_grid = [0.25, 0.5, 0.75]
    if entry.name == "ln":
        xs = xs or [1.0, 10.0, 100.0]
        points, residuals, sides = [], [], []
        for a in a_grid:
            for x in xs:
                w = sigma(entry.g, x + a).value - sigma(entry.g, x).value \
                    - a * math.log(x)
                lo = (a - 1.0) * math.log1p(a / x)
                viol = max(0.0, lo - w, w - 0.0) / max(1.0, abs(lo))
                points.append([a, x])
                residuals.append(viol)
                sides.append([lo, w, 0.0])
        reports.append((identities.make_report("wendel-bracket", points, residuals,
                                               sides), 1e-9))
        tail = [sigma(entry.g, 1e4 + a).value - sigma(entry.g, 1e4).value
                - a * math.log(1e4) for a in a_grid]
        reports.append((identities.make_report("wendel-tail", a_grid, tail), 1e-4))
    else:
        xs = xs or [16.0, 64.0, 256.0]
        points, residuals = [], []
        for a in (0.25, 1.5, 3.0):
            mags = [abs(asymptotics.wendel_residual(entry.g, entry.g.p, a, x))
                    for x in xs]
            for i in range(len(mags) - 1):
                points.append([a, xs[i], xs[i + 1]])
                residuals.append(max(0.0, mags[i + 1] - mags[i]))
        reports.append((identities.make_report("wendel-decay", points, residuals),
                        1e-9))
    return reports


def _suite_stirling(entry, xs):
    if entry.name == "psi2g":
        xs = xs or [25.0, 50.0, 100.0]
        points, residuals, sides = [], [], []
        for x in xs:
            rem = asymptotics.expansion_remainder(entry.g, entry.g.p, x)
            bound = 1.1 / (720.0 * x * x)
            points.append(x)
            residuals.append(max(0.0, abs(rem) - bound))
            sides.append([abs(rem), bound])
        return [(identities.make_report("stirling-bound", points, residuals, sides),
                 1e-9)]
    xs = xs or [10.0, 100.0, 1000.0]
    mags = [abs(asymptotics.binet(entry.g, entry.g.p, x)) for x in xs]
    points, residuals = [], []
    for i in range(len(mags) - 1):
        points.append([xs[i], xs[i + 1]])
        residuals.append(max(0.0, mags[i + 1] - mags[i]))
    return [(identities.make_report("stirling-decay", points, residuals), 1e-9)]


def _suite_webster(entry, ms, xs):
    ms = ms or [1, 2, 5]
    xs = xs or [0.7, 1.0, 2.0]
    points, residuals, sides = [], [], []
    for m in ms:
        for x in xs:
            lhs, rhs = identities.webster_sides(m, x)
            points.append([m, x])
            residuals.append(lhs - rhs)
            sides.append([lhs, rhs])
    return [(identities.make_report("webster", points, residuals, sides), 1e-7)]


def _suite_wallis(entry):
    first, second = identities.wallis_extrapolated(10_000)
    lim1 = named_constant("ln_2") / 12.0 - 3.0 * named_constant("ln_glaisher")
    lim2 = named_constant("ln_glaisher") - named_constant("ln_2") / 12.0
    report = identities.make_report(
        "wallis", ["first", "second"],
        [first - lim1, second - lim2],
        [[first, lim1], [second, lim2]],
    )
    return [(report, 1e-3)]


def _suite_reflection(entry, xs):
    xs = xs or [0.1, 0.25, 0.5, 0.75, 0.9]
    sides = [identities.reflection_sides_psi2(x) for x in xs]
    residuals = [lhs - rhs for lhs, rhs in sides]
    return [(identities.make_report("reflection", xs, residuals,
                                    [list(s) for s in sides]), 1e-7)]


def _suite_taylor(entry, xs):
    xs = xs or [-0.5, -0.25, 0.25, 0.5]
    points, residuals, sides = [], [], []
    for x in xs:
        series = identities.taylor_psi2(x, 60)
        engine = identities.psi2_value(1.0 + x)
        points.append(x)
        residuals.append(series - engine)
        sides.append([series, engine])
    return [(identities.make_report("taylor", points, residuals, sides), 1e-9)]


def _suite_euler_series(entry):
    partial = identities.euler_series_analogue(50)
    closed = identities.euler_series_closed()
    return [(identities.make_report("euler-series", [50], [partial - closed],
                                    [[partial, closed]]), 1e-12)]


def _suite_inequalities(entry):
    reports = []
    points, residuals, sides = [], [], []
    for i in range(1, 21):
        for j in range(10):
            x = 0.25 * i
            a = 0.25 * j
            rep = identities.inequality_report_psi2(x, a)
            points.extend(rep.points)
            residuals.extend(rep.residuals)
            sides.extend(rep.sides)
    reports.append((identities.make_report("inequality-chains", points, residuals,
                                           sides), 1e-9))
    grid = [0.1 * k for k in range(1, 51)] + [10.0, 20.0, 35.0, 50.0]
    pts, res, sd = [], [], []
    for x in grid:
        alpha, beta = identities.bounds_alpha_beta(x)
        value = identities.psi2_value(x)
        scale = max(1.0, abs(alpha), abs(beta))
        pts.append(x)
        res.append(max(0.0, alpha - value, value - beta) / scale)
        sd.append([alpha, value, beta])
    reports.append((identities.make_report("alpha-beta-bounds", pts, res, sd), 1e-9))
    sup = identities.alpha_beta_sup_gap()
    target = (3.0 * named_constant("ln_2") - 1.0) / 18.0
    reports.append((identities.make_report("alpha-beta-sup-gap", ["sup"],
                                           [sup - target], [[sup, target]]), 1e-3))
    return reports


def cmd_verify(cfg: RunConfig, suite: str, ms: Optional[list[int]],
               xs: Optional[list[float]], out) -> int:
    entry = _resolve_entry(cfg)
    if suite not in _SUITES:
        raise CliInputError(f"unknown suite {suite!r}")
    wanted = list(_GENERIC_SUITES + _PSI2_ONLY_SUITES) if suite == "all" else [suite]
    if suite == "all" and entry.name != "psi2g":
        wanted = [s for s in wanted if s not in _PSI2_ONLY_SUITES]
    collected = []
    for name in wanted:
        if name in _PSI2_ONLY_SUITES and entry.name != "psi2g":
            raise CliInputError(f"suite {name!r} requires --fn psi2g")
        if name == "raabe":
            collected += _suite_raabe(entry, xs)
        elif name == "mult":
            collected += _suite_mult(entry, ms, xs)
        elif name == "wendel":
            collected += _suite_wendel(entry, xs)
        elif name == "stirling":
            collected += _suite_stirling(entry, xs)
        elif name == "webster":
            collected += _suite_webster(entry, ms, xs)
        elif name == "wallis":
            collected += _suite_wallis(entry)
        elif name == "reflection":
            collected += _suite_reflection(entry, xs)
        elif name == "taylor":
            collected += _suite_taylor(entry, xs)
        elif name == "euler-series":
            collected += _suite_euler_series(entry)
    all_pass = all(rep.max_abs <= tol for rep, tol in collected)
    if cfg.fmt == "json":
        out.write(_emit_json({
            "command": "verify",
            "function": cfg.label,
            "suite": suite,
            "pass": all_pass,
            "reports": [
                {
                    "identity": rep.identity,
                    "tol": tol,
                    "max_abs": rep.max_abs,
                    "pass": rep.max_abs <= tol,
                    "points": rep.points,
                    "residuals": rep.residuals,
                    "sides": rep.sides,
                }
                for rep, tol in collected
            ],
        }))
    else:
        rows = []
        for rep, tol in collected:
            for i, (pt, r) in enumerate(zip(rep.points, rep.residuals)):
                side = rep.sides[i] if rep.sides is not None else []
                rows.append([
                    rep.identity,
                    pt if isinstance(pt, str) else json.dumps(pt),
                    r,
                    ";".join(repr(float(v)) for v in side),
                    tol,
                    "pass" if abs(r) <= tol else "FAIL",
                ])
        out.write(_emit_csv(["identity", "point", "residual", "sides", "tol",
                             "status"], rows))
    return EXIT_OK if all_pass else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# expand

def cmd_expand(cfg: RunConfig, x: float, q: int, m: int, out) -> int:
    entry = _resolve_entry(cfg)
    if x <= 0.0:
        raise CliInputError("--x must be positive")
    if not 0 <= q <= 8:
        raise CliInputError("--q must be in 0..8")
    if m < 1:
        raise CliInputError("--m must be >= 1")
    total, terms = asymptotics.asym_expansion(entry.g, entry.g.p, x, q, m)
    main = total - math.fsum(t.value for t in terms)
    if cfg.fmt == "csv":
        rows = [[t.k, t.coefficient, t.value] for t in terms]
        rows.append(["main", None, main])
        rows.append(["total", None, total])
        out.write(_emit_csv(["k", "coefficient", "value"], rows))
    else:
        out.write(_emit_json({
            "command": "expand",
            "function": cfg.label,
            "x": x,
            "q": q,
            "m": m,
            "main": main,
            "terms": [
                {"k": t.k, "coefficient": t.coefficient, "value": t.value}
                for t in terms
            ],
            "total": total,
        }))
    return EXIT_OK


# ---------------------------------------------------------------------------
# tabulate

def cmd_tabulate(cfg: RunConfig, start: float, stop: float, step: float, out) -> int:
    entry = _resolve_entry(cfg)
    if step <= 0.0:
        raise CliInputError("--step must be positive")
    if start <= 0.0:
        raise CliInputError("--from must be positive")
    xs = []
    i = 0
    while True:
        x = start + i * step
        if x > stop + 1e-12 * max(1.0, abs(stop)):
            break
        xs.append(x)
        i += 1
    with_bounds = entry.name == "psi2g"
    worst_over_tol = False
    rows = []
    if xs:
        try:
            constants.asymptotic_constant(entry.g, entry.g.p)
        except (QuadratureError, ShapeError):
            pass
        for x in xs:
            res = sigma(entry.g, x, tol=cfg.tol)
            if res.err_estimate > cfg.tol:
                worst_over_tol = True
            jval = asymptotics.binet(entry.g, entry.g.p, x)
            if with_bounds:
                alpha, beta = identities.bounds_alpha_beta(x)
            else:
                alpha = beta = None
            rows.append([x, res.value, jval, alpha, beta])
    if cfg.fmt == "csv":
        out.write(_emit_csv(["x", "sigma", "binet", "alpha", "beta"], rows))
    else:
        out.write(_emit_json({
            "command": "tabulate",
            "function": cfg.label,
            "rows": [
                {"x": r[0], "sigma": r[1], "binet": r[2], "alpha": r[3],
                 "beta": r[4]}
                for r in rows
            ],
        }))
    return EXIT_CONVERGENCE if worst_over_tol else EXIT_OK


# ---------------------------------------------------------------------------
# catalog

def cmd_catalog(cfg_fmt: str, out) -> int:
    entry_rows = []
    for name in CATALOG_NAMES:
        e = builtin(name)
        entry_rows.append(["entry", e.name, e.g.p, e.g.shape, e.offset,
                           e.sigma_closed, e.gamma_closed, None])
    for cname in ("euler_gamma", "ln_glaisher", "ln_2pi", "ln_pi", "ln_2"):
        entry_rows.append(["constant", cname, None, None, None, None, None,
                           named_constant(cname)])
    if cfg_fmt == "csv":
        out.write(_emit_csv(
            ["kind", "name", "p", "shape", "offset", "sigma_closed",
             "gamma_closed", "value"],
            entry_rows,
        ))
    else:
        out.write(_emit_json({
            "command": "catalog",
            "entries": [
                {"name": r[1], "p": r[2], "shape": r[3], "offset": r[4],
                 "sigma_closed": r[5], "gamma_closed": r[6]}
                for r in entry_rows if r[0] == "entry"
            ],
            "constants": {
                r[1]: r[7] for r in entry_rows if r[0] == "constant"
            },
        }))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fn", help="catalog function name")
    common.add_argument("--expr", help="expression-language source text")
    common.add_argument("--p", type=int, help="override difference order p")
    common.add_argument("--shape", choices=["convex", "concave"],
                        help="override certified shape")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="target tolerance (default 1e-9)")
    common.add_argument("--format", choices=["csv", "json"], default=None,
                        dest="fmt",
                        help="output format (default: json for constants and "
                             "verify, csv otherwise)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled classification (default 0)")

    parser = argparse.ArgumentParser(
        prog="indefsum",
        description="Principal indefinite sums: evaluation, constants, and "
                    "identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="evaluate Sigma g on a list of points")
    p_eval.add_argument("--x", required=True,
                        help="comma-separated evaluation points")
    p_eval.add_argument("--offset", choices=["none", "named"], default="none",
                        help="add the catalog offset so values land on the "
                             "named special function")

    sub.add_parser("constants", parents=[common],
                   help="compute sigma[g] and gamma[g]")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run identity/inequality suites")
    p_verify.add_argument("--suite", required=True, choices=list(_SUITES))
    p_verify.add_argument("--m", help="comma-separated multiplication orders")
    p_verify.add_argument("--x", help="comma-separated grid override")

    p_expand = sub.add_parser("expand", parents=[common],
                              help="Bernoulli asymptotic expansion terms")
    p_expand.add_argument("--x", type=float, required=True)
    p_expand.add_argument("--q", type=int, default=6)
    p_expand.add_argument("--m", type=int, default=1)

    p_tab = sub.add_parser("tabulate", parents=[common],
                           help="tabulate sigma/binet (and bounds) over a range")
    p_tab.add_argument("--from", dest="start", type=float, required=True)
    p_tab.add_argument("--to", dest="stop", type=float, required=True)
    p_tab.add_argument("--step", type=float, required=True)

    p_cat = sub.add_parser("catalog", help="list catalog entries and constants")
    p_cat.add_argument("--format", choices=["csv", "json"], default=None,
                       dest="fmt")
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        default_fmt = "json" if args.command in ("constants", "verify") else "csv"
        fmt = args.fmt if args.fmt is not None else default_fmt
        if args.command == "catalog":
            return cmd_catalog(fmt, out)
        cfg = RunConfig(fn=args.fn, expr=args.expr, p=args.p, shape=args.shape,
                        tol=args.tol, fmt=fmt, seed=args.seed)
        if args.command == "eval":
            xs = _parse_floats(args.x, "--x")
            return cmd_eval(cfg, xs, args.offset, out)
        if args.command == "constants":
            return cmd_constants(cfg, out)
        if args.command == "verify":
            ms = _parse_ints(args.m, "--m") if args.m else None
            xs = _parse_floats(args.x, "--x") if args.x else None
            return cmd_verify(cfg, args.suite, ms, xs, out)
        if args.command == "expand":
            return cmd_expand(cfg, args.x, args.q, args.m, out)
        if args.command == "tabulate":
            return cmd_tabulate(cfg, args.start, args.stop, args.step, out)
        raise CliInputError(f"unknown command {args.command!r}")
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (QuadratureError, MissingSigmaConstant) as exc:
        print(f"error: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
