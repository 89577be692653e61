"""``ward`` command-line front end.

Output is compact JSON on stdout; ``--pretty`` prints aligned fractions
instead.  Exit codes: 0 success, 1 domain error (a ``{"error": ...}`` JSON
object is printed), 2 malformed input.

The default truncation is read from ``WARD_DEFAULT_TRUNC`` (fallback 32).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import catalog, riordan, sheffer, solver
from .errors import WardError
from .operators import (HSeries, barrow_check, d_h, ftc_check,
                        hadamard_derivative_identity_check, i_h, leibniz_defect)
from .series import Series, parse_rat

DEFAULT_TRUNC = 32


def default_trunc() -> int:
    raw = os.environ.get("WARD_DEFAULT_TRUNC")
    if raw is None or raw.strip() == "":
        return DEFAULT_TRUNC
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"ward: WARD_DEFAULT_TRUNC must be an integer, got {raw!r}")
    if value < 0:
        raise SystemExit("ward: WARD_DEFAULT_TRUNC must be non-negative")
    return value


# -- parsing --------------------------------------------------------------


def parse_rat_list(text: str) -> List[Fraction]:
    out = []
    for tok in text.split(","):
        try:
            out.append(parse_rat(tok))
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed fraction {tok.strip()!r}")
    return out


def parse_series(text: str) -> Series:
    """A comma-separated fraction list, a JSON object, or a JSON file path."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _series_from_json_text(stripped)
    if os.path.isfile(text):
        with open(text) as fh:
            return _series_from_json_text(fh.read())
    return Series(parse_rat_list(text))


def _series_from_json_text(text: str) -> Series:
    try:
        return Series.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad series JSON: {exc}")


def _rhs_series(obj, trunc: int) -> Series:
    """RHS coefficients: JSON series objects keep their trunc, lists are polynomials."""
    if isinstance(obj, dict):
        return Series.from_json(obj)
    if isinstance(obj, (int, str)):
        obj = str(obj).split(",")
    return Series([parse_rat(str(c)) for c in obj][: trunc + 1], trunc)


def _poly_or_series(text: Optional[str], trunc: int) -> Series:
    """A comma list is an exact polynomial; JSON keeps its own trunc."""
    if text is None:
        return Series.zero(trunc)
    s = parse_series(text)
    if text.strip().startswith("{") or os.path.isfile(text):
        return s
    return Series(s.coeffs[: trunc + 1], trunc)


def parse_rhs(text: str, trunc: int):
    stripped = text.strip()
    if stripped == "identity":
        return solver.PolynomialRHS((Series.zero(trunc), Series.one(trunc)))
    if stripped == "zero":
        return solver.PolynomialRHS((Series.zero(trunc),))
    if not stripped.startswith("{") and os.path.isfile(text):
        with open(text) as fh:
            stripped = fh.read()
    try:
        obj = json.loads(stripped)
        kind = obj["type"]
        if kind == "polynomial":
            return solver.PolynomialRHS(tuple(_rhs_series(q, trunc) for q in obj["q"]))
        if kind == "linear":
            q = _rhs_series(obj.get("q", "0"), trunc)
            p = tuple(_rhs_series(pi, trunc) for pi in obj.get("p", []))
            return solver.LinearDhRHS(q, p)
        if kind == "affine":
            return solver.AffineIntegralRHS(_rhs_series(obj["f"], trunc),
                                            _rhs_series(obj.get("r", "0"), trunc))
    except (ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad --rhs: {exc}")
    raise argparse.ArgumentTypeError(f"unknown rhs type {kind!r}")


# -- output ---------------------------------------------------------------


def _align(rows: List[List[str]]) -> str:
    width = max((len(c) for row in rows for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in rows)


def series_text(s: Series) -> str:
    width = len(str(s.trunc))
    vals = [str(c) for c in s.coeffs]
    vw = max(len(v) for v in vals)
    lines = [f"x^{str(k).ljust(width)}  {v.rjust(vw)}" for k, v in enumerate(vals)]
    lines.append(f"trunc {s.trunc}")
    return "\n".join(lines)


def emit(obj, text: Optional[str], pretty: bool, out) -> None:
    if pretty and text is not None:
        out.write(text + "\n")
    else:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")


# -- commands -------------------------------------------------------------


def _h(args, trunc: int) -> HSeries:
    if args.h is None:
        raise argparse.ArgumentTypeError(f"{args.command} needs --h")
    return catalog.make_h(args.h, trunc)


def cmd_dh(args):
    s = args.series.truncate(min(args.series.trunc, args.trunc))
    res = d_h(_h(args, s.trunc))(s)
    return res.to_json(), series_text(res)


def cmd_ih(args):
    s = args.series.truncate(min(args.series.trunc, args.trunc))
    res = i_h(_h(args, s.trunc + 1))(s)
    return res.to_json(), series_text(res)


def cmd_solve(args):
    work = args.trunc + args.order
    h = _h(args, work)
    rhs = parse_rhs(args.rhs, work)
    init = args.init if args.init is not None else [Fraction(0)] * args.order
    P = solver.IVProblem(h, args.order, rhs, tuple(init))
    res = solver.solve_ivp_fixed_point(P, args.trunc)
    obj = {"coeffs": [str(c) for c in res.series.coeffs],
           "iterations": res.iterations, "method": res.method}
    return obj, series_text(res.series) + f"\niterations {res.iterations}"


def cmd_heaviside(args):
    n = len(args.a)
    h = _h(args, args.trunc + n)
    q = _poly_or_series(args.q, args.trunc)
    init = args.init if args.init is not None else [Fraction(0)] * n
    P = solver.CharProblem(h, tuple(args.a), q, tuple(init))
    methods = {
        "heaviside": lambda: solver.solve_heaviside(P, args.trunc),
        "oracle": lambda: solver.oracle_linear_solve(P, args.trunc),
        "fixed-point": lambda: solver.solve_char_fixed_point(P, args.trunc).series,
        "roots": lambda: solver.solve_via_roots(P, args.trunc),
    }
    y = methods[args.method]()
    obj = {"coeffs": [str(c) for c in y.coeffs], "method": args.method,
           "reflected": [str(c) for c in P.reflected()]}
    if args.method == "heaviside":
        obj["r"] = solver.heaviside_reduce(P).to_json()
    return obj, series_text(y)


def cmd_sheffer(args):
    if args.a is not None:
        h = sheffer.h_from_a(args.a, args.trunc)
    else:
        h = _h(args, args.trunc)
    E = sheffer.sheffer_coeffs(h)
    obj = E.to_json()
    rows = [["k", "c_k"]] + [[str(k), str(E.c[k])] for k in range(1, E.trunc + 1)]
    text = _align(rows) + f"\nverdict {obj['verdict']}"
    if E.finite_degree is not None:
        text += f" (degree {E.finite_degree})"
    return obj, text


def cmd_classify(args):
    h = _h(args, args.trunc)
    v = sheffer.classify_calculus(h)
    obj = v.to_json()
    text = v.kind + (f" {v.degree}" if v.degree is not None else "")
    return obj, text


def cmd_riordan(args):
    if args.pascal:
        R = riordan.pascal(args.trunc)
    else:
        if args.f is None or args.g is None:
            raise argparse.ArgumentTypeError("riordan needs --f and --g, or --pascal")
        R = riordan.RiordanPair(_poly_or_series(args.f, args.trunc),
                                _poly_or_series(args.g, args.trunc))
    if args.op == "inverse":
        R = riordan.riordan_inverse(R)
    if args.op in ("matrix", "inverse"):
        rows = min(args.rows, R.trunc)
        M = riordan.materialize(R, rows)
        obj = {"rows": [[str(c) for c in row] for row in M]}
        return obj, _align([[str(c) for c in row] for row in M])
    if args.op == "aseq":
        A = riordan.a_sequence(R).a
        return A.to_json(), series_text(A)
    if args.gamma is None:
        raise argparse.ArgumentTypeError("--op apply needs --gamma")
    res = riordan.riordan_apply(R, _poly_or_series(args.gamma, args.trunc))
    return res.to_json(), series_text(res)


def cmd_exp(args):
    e = catalog.generalized_exp(_h(args, args.trunc), args.trunc)
    return e.to_json(), series_text(e)


def cmd_hyp(args):
    res = catalog.hypergeom_pFq(args.upper, args.lower, args.scale, args.trunc)
    return res.to_json(), series_text(res)


def cmd_check(args):
    name = args.name
    if name in ("barrow", "ftc", "hadamard", "leibniz"):
        if args.series is None:
            raise argparse.ArgumentTypeError(f"check {name} needs --series")
        s = args.series
        h = _h(args, s.trunc + 1)
        if name == "barrow":
            ok = barrow_check(h, s)
        elif name == "ftc":
            ok = ftc_check(h, s)
        elif name == "hadamard":
            ok = hadamard_derivative_identity_check(h, s)
        else:
            defect = leibniz_defect(h, s, s)
            return ({"check": name, "ok": defect.is_zero(), "defect": defect.to_json()},
                    f"{name}: {'ok' if defect.is_zero() else 'defect ' + str(defect)}")
    elif name == "polylog":
        ok = catalog.polylog_closed_form_check(args.param, args.trunc)
    elif name == "pascal-column":
        y = args.series if args.series is not None else Series.geometric(args.trunc)
        ok = sheffer.pascal_column_expansion_check(args.param, y)
    elif name == "exp-hyp":
        ok = catalog.exp_equals_hypergeom_check(args.param, args.trunc)
    else:  # pragma: no cover - argparse restricts choices
        raise argparse.ArgumentTypeError(f"unknown check {name}")
    return {"check": name, "ok": ok}, f"{name}: {'ok' if ok else 'FAILED'}"


# -- parser ---------------------------------------------------------------


def _trunc_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("trunc must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true",
                        help="aligned p/q fractions instead of JSON")
    common.add_argument("--trunc", type=_trunc_arg, default=None,
                        help="truncation order (default $WARD_DEFAULT_TRUNC or 32)")

    parser = argparse.ArgumentParser(
        prog="ward", description="Exact Ward (h-) calculus on truncated power series.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_h(p, required=True):
        p.add_argument("--h", required=required,
                       help="pascal:S | polylog:A | fibonomial | q:P/Q | file:PATH")
        return p

    p = with_h(sub.add_parser("dh", parents=[common], help="apply D_h"))
    p.add_argument("--series", type=parse_series, required=True)
    p.set_defaults(func=cmd_dh)

    p = with_h(sub.add_parser("ih", parents=[common], help="apply I_h"))
    p.add_argument("--series", type=parse_series, required=True)
    p.set_defaults(func=cmd_ih)

    p = with_h(sub.add_parser("solve", parents=[common],
                              help="fixed-point solve of D_h^(n) y = G(y)"))
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--rhs", default="identity",
                   help='"identity", "zero", or JSON {"type": polynomial|linear|affine, ...}')
    p.add_argument("--init", type=parse_rat_list, default=None)
    p.set_defaults(func=cmd_solve)

    p = with_h(sub.add_parser("heaviside", parents=[common],
                              help="constant-coefficient linear h-equation"))
    p.add_argument("--a", type=parse_rat_list, required=True,
                   help="a_0,...,a_(n-1) of C(x) = x^n - sum a_k x^k "
                        "(write --a=-2,3 when the list starts with a minus)")
    p.add_argument("--q", default=None,
                   help="forcing term: comma list (polynomial) or JSON series")
    p.add_argument("--init", type=parse_rat_list, default=None)
    p.add_argument("--method", choices=["heaviside", "roots", "oracle", "fixed-point"],
                   default="heaviside")
    p.set_defaults(func=cmd_heaviside)

    p = with_h(sub.add_parser("sheffer", parents=[common],
                              help="classical-derivative expansion of D_h"), required=False)
    p.add_argument("--a", type=parse_rat_list, default=None,
                   help="build h from polynomial a instead of --h")
    p.set_defaults(func=cmd_sheffer)

    p = with_h(sub.add_parser("classify", parents=[common],
                              help="finite or infinite calculus"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("riordan", parents=[common], help="Riordan matrices T(f|g)")
    p.add_argument("--f", default=None)
    p.add_argument("--g", default=None)
    p.add_argument("--pascal", action="store_true", help="use T(1|1-x)")
    p.add_argument("--op", choices=["matrix", "inverse", "aseq", "apply"], default="matrix")
    p.add_argument("--rows", type=int, default=6)
    p.add_argument("--gamma", default=None)
    p.set_defaults(func=cmd_riordan)

    p = with_h(sub.add_parser("exp", parents=[common], help="generalized exponential"))
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("hyp", parents=[common], help="hypergeometric pFq coefficients")
    p.add_argument("--upper", type=parse_rat_list, default=[])
    p.add_argument("--lower", type=parse_rat_list, default=[])
    p.add_argument("--scale", type=lambda t: parse_rat_list(t)[0], default=Fraction(1))
    p.set_defaults(func=cmd_hyp)

    p = with_h(sub.add_parser("check", parents=[common], help="identity checks"),
               required=False)
    p.add_argument("--name", required=True,
                   choices=["barrow", "ftc", "hadamard", "leibniz", "polylog",
                            "pascal-column", "exp-hyp"])
    p.add_argument("--series", type=parse_series, default=None)
    p.add_argument("--param", type=int, default=2, help="alpha or s")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    if args.trunc is None:
        args.trunc = default_trunc()
    pretty = args.pretty
    try:
        obj, text = args.func(args)
    except argparse.ArgumentTypeError as exc:
        err.write(f"ward {args.command}: error: {exc}\n")
        return 2
    except WardError as exc:
        emit(exc.to_json(), None, False, out)
        return 1
    emit(obj, text, pretty, out)
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
