"""hyperzeta command line: zeta, moments, predict, compare, identities."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import cache as cachefmt
from .akpred import PrecisionContext, qk_direct, render
from .algebra import FqPoly, prime_power
from .algebraic import AlgebraicValue
from .ensemble import DEFAULT_BUDGET, EnsembleSpec, field, moments
from .errors import BudgetExceeded, HyperzetaError, VerificationFailed
from .fastcount import EnsembleEngine
from .identities import SUITES, run_suite
from .lfunc import central_value, lpoly_from_charsums, verify_lpoly

COMPARE_COLUMNS = ["k", "M_exact", "M_decimal", "Q_decimal", "diff", "ratio"]
MOMENT_COLUMNS = ["k", "sum_exact", "M_exact", "M_decimal"]


class UsageError(HyperzetaError):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fixed(v: Decimal) -> str:
    return format(v, "f")


def short(v: Decimal) -> str:
    return f"{float(v):g}"


# zeta

def cmd_zeta(q: int, d: int, spec: str | None, all_: bool, out, verify: bool = False,
             reduced: bool = False, budget: int = DEFAULT_BUDGET) -> int:
    prime_power(q)
    ctx = field(q)
    if all_:
        engine = EnsembleEngine(ctx, d, reduced)
        if engine.space > budget:
            raise BudgetExceeded(f"{engine.space} polynomials exceed budget {budget}")
        rows = cachefmt.engine_rows(ctx, d, reduced)
        if verify:
            rows = _verified(ctx, d, rows)
        cachefmt.write_records(out, q, d, reduced, rows)
        return 0
    try:
        D = FqPoly.from_digits(ctx, spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if D.degree != d:
        raise UsageError(f"D-spec {spec!r} has degree {D.degree}, expected {d}")
    L = lpoly_from_charsums(D)
    if verify:
        verify_lpoly(L, D)
    cachefmt.write_records(out, q, d, reduced, [(D.digits(), L.b)])
    return 0


def _verified(ctx, d, rows):
    for digits, b in rows:
        D = FqPoly.from_digits(ctx, digits)
        L = lpoly_from_charsums(D)
        if list(L.b) != list(b):
            raise VerificationFailed(f"{digits}: enumeration gives {b}, character sums give {L.b}")
        verify_lpoly(L, D)
        yield digits, b


# moments

def _moments_from_cache(path: str, k_max: int) -> tuple[int, list[AlgebraicValue], int]:
    data = cachefmt.load(path)
    q = data.q
    sums = [AlgebraicValue(0, 0, q) for _ in range(k_max + 1)]
    for L in data.lpolys():
        v = central_value(L)
        w = AlgebraicValue(1, 0, q)
        for k in range(k_max + 1):
            sums[k] = sums[k] + w
            w = w * v
    if data.reduced:
        sums = [s * q for s in sums]
    return q, sums, EnsembleSpec.default(q, data.d).size


def moment_rows(q: int, d: int, k_max: int, digits: int = 22, cache: str | None = None,
                threads: int = 1, budget: int = DEFAULT_BUDGET) -> list[dict]:
    if cache:
        q, sums, count = _moments_from_cache(cache, k_max)
    else:
        table = moments(q, d, k_max, budget=budget, threads=threads)
        sums, count = table.sums, table.count
    rows = []
    for k, s in enumerate(sums):
        mean = s / count
        rows.append({"k": k, "sum_exact": str(s), "M_exact": str(mean),
                     "M_decimal": fixed(mean.to_decimal(digits))})
    return rows


# predictions

def _prec(q: int, k: int, digits: int | None, target: int, shift: int, trunc: int | None):
    return PrecisionContext.for_problem(q, k, target_digits=target, shift_exponent=shift,
                                        truncation=trunc, digits=digits)


def predict_rows(q: int, d: int, k_max: int, digits: int | None = None, target: int = 22,
                 shift: int = 65, trunc: int | None = None) -> list[dict]:
    rows = []
    for k in range(1, k_max + 1):
        pred = qk_direct(q, d, k, _prec(q, k, digits, target, shift, trunc))
        rows.append({"k": k, "Q_decimal": fixed(pred.decimal(target)),
                     "certified_digits": pred.certified_digits})
    return rows


def compare_rows(q: int, d: int, k_max: int, digits: int = 22, threads: int = 1,
                 shift: int = 65, trunc: int | None = None,
                 budget: int = DEFAULT_BUDGET) -> list[dict]:
    table = moments(q, d, k_max, budget=budget, threads=threads)
    rows = []
    for k in range(1, k_max + 1):
        mean = table.mean(k)
        pred = qk_direct(q, d, k, _prec(q, k, None, digits, shift, trunc))
        M = mean.to_decimal(digits + 20)
        Q = render(pred.value, digits + 20)
        with localcontext() as c:
            c.prec = digits + 20
            diff, ratio = M - Q, M / Q
        rows.append({
            "k": k,
            "M_exact": str(mean),
            "M_decimal": fixed(mean.to_decimal(digits)),
            "Q_decimal": fixed(pred.decimal(digits)),
            "diff": short(diff),
            "ratio": fixed(_round(ratio, digits)),
        })
    return rows


def _round(v: Decimal, digits: int) -> Decimal:
    return render(Fraction(v), digits)


# output

def emit(rows: list[dict], columns: list[str], fmt: str, out, title: str = "") -> None:
    if fmt == "json":
        json.dump([{c: r[c] for c in columns} for r in rows], out, indent=1)
        out.write("\n")
    elif fmt == "tex":
        out.write("\\begin{tabular}{" + "|".join("c" for _ in columns) + "}\n")
        out.write(" & ".join(columns) + " \\\\ \\hline\n")
        for r in rows:
            out.write(" & ".join(_tex_cell(c, r[c]) for c in columns) + " \\\\\n")
        out.write("\\end{tabular}\n")
        if title:
            out.write(f"% {title}\n")
    else:
        w = csv.DictWriter(out, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)


def _tex_cell(col: str, value) -> str:
    return str(value) if col == "k" else f"${value}$"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperzeta", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    z = sub.add_parser("zeta", help="L-polynomials of one curve or a whole family")
    z.add_argument("q", type=int)
    z.add_argument("d", type=int)
    z.add_argument("spec", nargs="?", help="base-q digits of c_0..c_{d-1}")
    z.add_argument("--all", action="store_true")
    z.add_argument("--out", help="cache file (default: stdout)")
    z.add_argument("--verify", action="store_true")
    z.add_argument("--reduced", action="store_true", help="only D with c_{d-1} = 0")
    z.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    m = sub.add_parser("moments", help="exact central-value moments")
    m.add_argument("q", type=int)
    m.add_argument("d", type=int)
    m.add_argument("k_max", type=int)
    m.add_argument("--cache")
    m.add_argument("--threads", type=int, default=1)
    m.add_argument("--digits", type=int, default=22)
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    m.add_argument("--format", choices=["csv", "json", "tex"], default="csv")

    r = sub.add_parser("predict", help="Q_k(q; d) for k = 1..k_max")
    r.add_argument("q", type=int)
    r.add_argument("d", type=int)
    r.add_argument("k_max", type=int)
    r.add_argument("--digits", type=int, help="working precision in decimal digits")
    r.add_argument("--target", type=int, default=22, help="output digits")
    r.add_argument("--shift-exp", type=int, default=65)
    r.add_argument("--trunc", type=int)
    r.add_argument("--format", choices=["csv", "json", "tex"], default="csv")

    c = sub.add_parser("compare", help="moments against predictions, with difference and ratio")
    c.add_argument("q", type=int)
    c.add_argument("d", type=int)
    c.add_argument("k_max", type=int)
    c.add_argument("--digits", type=int, default=22)
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--shift-exp", type=int, default=65)
    c.add_argument("--trunc", type=int)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--format", choices=["csv", "json", "tex"], default="csv")

    i = sub.add_parser("identities", help="run an invariant suite")
    i.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    return p


def run(argv: list[str], out) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "zeta":
        if not args.all and not args.spec:
            raise UsageError("give a D-spec or --all")
        if args.out:
            with open(args.out, "w") as fh:
                return cmd_zeta(args.q, args.d, args.spec, args.all, fh, args.verify,
                                args.reduced, args.budget)
        return cmd_zeta(args.q, args.d, args.spec, args.all, out, args.verify,
                        args.reduced, args.budget)
    if args.command == "moments":
        rows = moment_rows(args.q, args.d, args.k_max, args.digits, args.cache,
                           args.threads, args.budget)
        emit(rows, MOMENT_COLUMNS, args.format, out)
        return 0
    if args.command == "predict":
        rows = predict_rows(args.q, args.d, args.k_max, args.digits, args.target,
                            args.shift_exp, args.trunc)
        emit(rows, ["k", "Q_decimal", "certified_digits"], args.format, out)
        return 0
    if args.command == "compare":
        rows = compare_rows(args.q, args.d, args.k_max, args.digits, args.threads,
                            args.shift_exp, args.trunc, args.budget)
        emit(rows, COMPARE_COLUMNS, args.format, out, f"M_k({args.q},{args.d}) vs Q_k({args.q},{args.d})")
        return 0
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        res = run_suite(name)
        if res.ok:
            out.write(f"{name}: PASS ({res.checks} checks)\n")
        else:
            out.write(f"{name}: FAIL ({len(res.failures)} of {res.checks}); first: {res.failures[0]}\n")
            status = VerificationFailed.exit_code
    return status


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv, sys.stdout)
    except UsageError as exc:
        sys.stderr.write(build_parser().format_usage())
        print(f"hyperzeta: {exc}", file=sys.stderr)
        return exc.exit_code
    except HyperzetaError as exc:
        print(f"hyperzeta: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"hyperzeta: {exc}", file=sys.stderr)
        return 1


def run_to_string(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    try:
        code = run(argv, buf)
    except HyperzetaError as exc:
        return exc.exit_code, buf.getvalue()
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
