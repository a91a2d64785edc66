"""Command-line front end: ``carlitz-q compute ...`` and ``carlitz-q verify ...``."""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import operator
import os
import re
import sys
from fractions import Fraction

from . import carlitz, dirichlet, lfunc
from .characters import parse_character
from .errors import CarlitzError, DomainError, PrecisionExhausted, PrecisionNotReached
from .padic_core import PadicNumber
from .qcalc import QParam
from .verify import SUITES, SweepConfig, run_suite

SCHEMA = "carlitz-q/1"
EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_PRECISION = 0, 1, 2, 3

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def parse_expr(text: str, p: int | None = None) -> Fraction:
    """Evaluate a rational expression in ``p`` such as ``1+2p``, ``1+p^2`` or ``7/2``."""
    src = re.sub(r"(\d)\s*p", r"\1*p", text.strip()).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "p":
            if p is None:
                raise DomainError("expression uses p but no prime was given")
            return Fraction(p)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if right.denominator != 1 or abs(right) > 64:
                    raise DomainError("exponents must be small integers")
                return left ** int(right)
            if isinstance(node.op, ast.Div) and right == 0:
                raise DomainError("division by zero")
            return _BINOPS[type(node.op)](left, right)
        raise DomainError(f"unsupported expression {text!r}")

    return ev(tree)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def _check_prime(p):
    if p is None:
        raise DomainError("--p is required")
    if p == 2 or not _is_prime(p):
        raise DomainError(f"--p must be an odd prime, got {p}")
    return p


def _max_level(args):
    if args.max_level is not None:
        if args.max_level < 1:
            raise DomainError("--max-level must be positive")
        return args.max_level
    env = os.environ.get("CARLITZ_MAX_LEVEL")
    return int(env) if env else None


def _engine(args):
    level = _max_level(args)
    return {} if level is None else {"max_level": level}


def _qparam(args, p: int) -> QParam:
    if args.prec < 1:
        raise DomainError("--prec must be at least 1")
    q = parse_expr(args.q, p)
    return QParam(q, p, args.prec)


def _scalar(text: str, p: int):
    v = parse_expr(text, p)
    return int(v) if v.denominator == 1 else v


# rendering


def _json_value(v):
    if isinstance(v, PadicNumber):
        return v.to_dict()
    if isinstance(v, Fraction):
        return str(v)
    return v


def _csv_value(v):
    if isinstance(v, PadicNumber):
        if v.is_zero() or v.precision <= 0:
            return "0"
        if v.valuation < 0:
            # u p^v with v < 0 shown as (u mod p^relprec)/p^-v
            return f"{v.unit % v.prime ** v.relprec}/{v.prime}^{-v.valuation}"
        return str(v.reduce(v.precision))
    if isinstance(v, (Fraction, int)):
        return str(Fraction(v))
    return "" if v is None else str(v)


def _emit(fmt: str, header: dict, rows: list, out):
    if fmt == "json":
        doc = {"schema": SCHEMA, **header, "rows": [{k: _json_value(v) for k, v in r.items()}
                                                   for r in rows]}
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    fields = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _csv_value(r.get(k)) for k in fields})
    out.write(buf.getvalue())


# compute


def _routes(arg: str, allowed: tuple) -> tuple:
    if arg in (None, "all"):
        return allowed
    route = arg.replace("-", "_")
    if route not in allowed:
        raise DomainError(f"route must be one of {', '.join(allowed)} or all")
    return (route,)


def _fixed(v, prec):
    return v.with_precision(min(prec, v.precision)) if isinstance(v, PadicNumber) else v


def compute_rows(args) -> tuple[dict, list]:
    kind = args.kind
    if args.n_max < 0:
        raise DomainError("--n-max must be non-negative")
    if kind == "euler":
        return {"kind": kind}, [{"n": n, "value": carlitz.classical_euler(n)}
                                for n in range(args.n_max + 1)]
    p = _check_prime(args.p)
    qp = _qparam(args, p)
    prec = args.prec
    header = {"kind": kind, "p": p, "q": args.q, "prec": prec}
    engine = _engine(args)
    rows = []
    if kind == "euler-q":
        routes = _routes(args.route, carlitz.ROUTES)
        for n in range(args.n_max + 1):
            row = {"n": n}
            for r in routes:
                row[r] = _fixed(carlitz.euler_q(n, qp, r, prec, **engine).value, prec)
            rows.append(row)
    elif kind == "euler-q-poly":
        x = _scalar(args.x, p)
        header["x"] = args.x
        routes = _routes(args.route, ("closed_form", "addition", "integral"))
        funcs = {
            "closed_form": lambda n: carlitz.euler_poly_q_closed(n, x, qp, prec),
            "addition": lambda n: carlitz.euler_poly_q_addition(n, x, qp, prec),
            "integral": lambda n: carlitz.euler_poly_q_integral(n, x, qp, prec, **engine),
        }
        for n in range(args.n_max + 1):
            rows.append({"n": n, **{r: _fixed(funcs[r](n), prec) for r in routes}})
    elif kind == "gen-euler":
        chi = parse_character(args.chi, p)
        x = _scalar(args.x, p)
        header.update(chi=chi.to_spec(), x=args.x)
        routes = _routes(args.route, ("closed_form", "integral"))
        for n in range(args.n_max + 1):
            row = {"n": n}
            if "closed_form" in routes:
                row["closed_form"] = _fixed(dirichlet.gen_euler_closed(n, x, qp, chi, prec), prec)
            if "integral" in routes:
                row["integral"] = _fixed(
                    dirichlet.gen_euler_integral(n, x, qp, chi, prec, **engine), prec)
            rows.append(row)
    elif kind == "lfunc":
        chi = parse_character(args.chi, p)
        s = _scalar(args.s, p)
        header["chi"] = chi.to_spec()
        req = lfunc.LEvalRequest(s, chi, qp, prec, F=args.F)
        neg = isinstance(s, int) and s <= 0
        routes = _routes(args.route, ("integral", "neg_int", "series") if neg
                         else ("integral", "series"))
        for r in routes:
            if r == "integral":
                value = lfunc.l_integral(req, **engine)
            elif r == "series":
                value = lfunc.l_series(req)
            else:
                if not neg:
                    raise DomainError("the neg_int route needs s = -n with n >= 0")
                value = lfunc.l_neg_int(-s, chi, qp, prec)
            value = _fixed(value, prec)
            rows.append({"s": args.s, "chi": chi.to_spec(), "p": p, "q": args.q,
                         "value": value, "precision": value.precision, "route": r})
    else:
        raise DomainError(f"unknown kind {kind!r}")
    return header, rows


# verify


def verify_reports(args):
    primes = (_check_prime(args.p),) if args.p is not None else (5, 7)
    cfg = SweepConfig(primes=primes, quick=args.quick, seed=args.seed,
                      max_level=_max_level(args), target=args.prec, F=args.F, d=args.d,
                      n_max=args.n_max if args.n_max is not None else 8)
    if args.q is not None:
        cfg.q = lambda p, text=args.q: parse_expr(text, p)
    if args.chi is not None:
        cfg.chi = parse_character(args.chi, primes[0])
    if args.d is not None and args.d % 2 == 0:
        raise DomainError("--d must be odd")
    return list(run_suite(args.suite, cfg))


def _report_row(rep, timings: bool) -> dict:
    d = rep.to_dict()
    row = {
        "identity": d["identity"],
        "params": ";".join(f"{k}={v}" for k, v in d["params"].items()),
        "routes": "/".join(d["routes"]),
        "agreement": d["agreement"],
        "target": d["target"],
        "passed": "pass" if d["passed"] else "FAIL",
    }
    if rep.detail:
        row["detail"] = rep.detail
    if timings:
        row["runtime"] = d["runtime"]
    return row


# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carlitz-q",
                                     description="Carlitz-type q-Euler numbers and p-adic "
                                                 "q-l-functions")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int)
        sp.add_argument("--q", default=None, help="q as an expression in p, e.g. 1+2p or 7/2")
        sp.add_argument("--prec", type=int)
        sp.add_argument("--chi", default=None,
                        help="trivial, quadratic:3, omega:2 or table:d:m:e0,e1,...")
        sp.add_argument("--F", type=int, default=None)
        sp.add_argument("--max-level", type=int, default=None)
        sp.add_argument("--format", choices=("json", "csv"), default="csv")

    comp = sub.add_parser("compute", help="tabulate numbers and l-values")
    comp.add_argument("kind", choices=("euler", "euler-q", "euler-q-poly", "gen-euler", "lfunc"))
    common(comp)
    comp.add_argument("--n-max", type=int, default=6)
    comp.add_argument("--x", default="0")
    comp.add_argument("--s", default="0")
    comp.add_argument("--route", default="all")

    ver = sub.add_parser("verify", help="run cross-route verification suites")
    ver.add_argument("suite", choices=SUITES + ("all",))
    common(ver)
    ver.add_argument("--n-max", type=int, default=None)
    ver.add_argument("--d", type=int, default=None)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--quick", action="store_true")
    ver.add_argument("--timings", action="store_true")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            if args.q is None:
                args.q = "1+p"
            if args.prec is None:
                args.prec = 10
            if args.chi is None:
                args.chi = "trivial"
            header, rows = compute_rows(args)
            _emit(args.format, header, rows, out)
            return EXIT_OK
        reports = verify_reports(args)
        rows = [_report_row(r, args.timings) for r in reports]
        failed = [r for r in reports if not r.passed]
        header = {"suite": args.suite, "passed": not failed, "total": len(reports),
                  "failures": len(failed)}
        _emit(args.format, header, rows, out)
        for r in failed:
            err.write(f"FAIL {r.identity} {r.params} agreement={r.agreement} "
                      f"target={r.target} {r.detail}\n")
        return EXIT_FAIL if failed else EXIT_OK
    except (PrecisionNotReached, PrecisionExhausted) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_PRECISION
    except (DomainError, ValueError, KeyError, CarlitzError) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
