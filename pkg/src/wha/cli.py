"""Command line interface: ``wha verify|report|dual|twist|make|convert``.

Exit codes: 0 all checks pass, 1 a mathematical check failed,
2 input/output or parse failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import document as doc
from . import examples as ex
from .core import check_axioms, counital_subalgebras, dual, twist
from .cstar import (
    canonical_grouplike,
    cstar_certify,
    haar_modular_identities,
    sectors,
)
from .errors import FactoryError, NotWHA, ParseError, WhaError
from .hopf_modules import check_whm
from .integrals import (
    frobenius_test,
    haar,
    integral_calculus_report,
    integral_space,
    is_semisimple,
    normalized_integral,
)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


class InputError(Exception):
    """Bad invocation or unreadable input; maps to exit code 2."""


def _tolerance(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("WHA_TOL")
    if env:
        try:
            tol = float(env)
        except ValueError:
            raise InputError(f"WHA_TOL is not a number: {env!r}") from None
        if tol < 0:
            raise InputError("WHA_TOL must be non-negative")
        return tol
    return None


def _read(path, args):
    try:
        return doc.read(path, _tolerance(args))
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (ValueError, WhaError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _out(args, text):
    if getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"{args.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _vec(A, x):
    F = A.F
    fmt = (lambda c: f"{complex(c).real:.6g}" if abs(complex(c).imag) <= F.tol
           else f"({complex(c):.6g})") if F.kind == "C" else F.format
    terms = [f"{fmt(c)}*{A.labels[i]}" for i, c in enumerate(x) if not F.is_zero_scalar(c)]
    return " + ".join(terms) or "0"


def _print_report(rep: Report, verbose):
    status = "PASS" if rep.passed else "FAIL"
    print(f"{rep.title}: {status} ({len(rep.checks)} checks, max residual {rep.max_residual:.3g})")
    for line, c in zip(rep.lines(), rep.checks):
        if verbose or not c.passed:
            print("  " + line)


def _finish(args, d, rep, summary=()):
    if args.format == "json":
        _out(args, doc.emit(d.algebra, d.modules, {"summary": dict(summary), **rep.to_dict()}))
    else:
        for key, value in summary:
            print(f"{key}: {value}")
        _print_report(rep, args.verbose)
    return EXIT_OK if rep.passed else EXIT_FAIL


# --------------------------------------------------------------------------
# commands


def cmd_verify(args):
    d = _read(args.path, args)
    A = d.algebra
    rep = Report(f"verify {A.name or args.path}")
    axioms = check_axioms(A)
    rep.extend(axioms, prefix="axioms: ")
    if axioms.is_wha:
        rep.extend(counital_subalgebras(A).report, prefix="subalgebras: ")
    for M in d.modules:
        rep.extend(check_whm(M), prefix=f"module {M.name}: ")
    return _finish(args, d, rep)


def cmd_report(args):
    d = _read(args.path, args)
    A = d.algebra
    flags = [args.integrals, args.haar, args.grouplike, args.sectors, args.frobenius]
    if not any(flags):
        args.integrals = args.haar = args.frobenius = True
    if (args.grouplike or args.sectors) and (A.star is None or A.F.kind != "C"):
        raise InputError("--grouplike and --sectors need a document over C with a 'star' section")
    rep = Report(f"report {A.name or args.path}")
    axioms = check_axioms(A)
    rep.extend(axioms, prefix="axioms: ")
    if not axioms.is_wha:
        return _finish(args, d, rep)
    summary = [("dim", A.dim), ("dim A^L", len(A.left_sub)), ("dim A^R", len(A.right_sub)),
               ("dim I^L", integral_space(A, "L").dim), ("dim I^R", integral_space(A, "R").dim)]
    try:
        if args.integrals:
            ss = is_semisimple(A)
            summary.append(("semisimple", ss))
            rep.extend(normalized_integral(A).report, prefix="normalized integral: ")
            rep.extend(integral_calculus_report(A, args.seed), prefix="calculus: ")
        if args.frobenius:
            fr = frobenius_test(A, args.seed)
            summary.append(("Frobenius", fr.frobenius))
            if fr.left_integral is not None:
                summary.append(("non-degenerate left integral", _vec(A, fr.left_integral)))
            rep.extend(fr.report, prefix="Frobenius: ")
        if args.haar:
            hr = haar(A, args.seed)
            summary.append(("Haar", _vec(A, hr.element) if hr.element is not None else "none"))
            rep.extend(hr.report, prefix="Haar: ")
        if args.grouplike or args.sectors:
            cert = cstar_certify(A, args.seed)
            summary.append(("C*", cert.cstar))
            rep.extend(cert.report, prefix="C*: ")
            if cert.cstar and args.grouplike:
                gd = canonical_grouplike(cert, args.seed)
                summary += [("g", _vec(A, gd.g)), ("g_L", _vec(A, gd.g_left)),
                            ("g_R", _vec(A, gd.g_right))]
                rep.extend(gd.report, prefix="grouplike: ")
                rep.extend(haar_modular_identities(cert, gd), prefix="modular: ")
            if cert.cstar and args.sectors:
                sd = sectors(cert, args.seed)
                summary += [("sectors", len(sd.idempotents)), ("block sizes", sd.dims),
                            ("vacuum sectors", [r for r, v in enumerate(sd.vacuum) if v])]
                rep.extend(sd.report, prefix="sectors: ")
    except WhaError as exc:
        rep.add("computation", False, detail=f"{type(exc).__name__}: {exc}")
    return _finish(args, d, rep, summary)


def _emit_checked(args, A):
    rep = check_axioms(A)
    if not rep.is_wha:
        bad = ", ".join(c.name for c in rep.failures())
        print(f"constructed algebra fails: {bad}", file=sys.stderr)
        return EXIT_FAIL
    _out(args, doc.emit(A))
    return EXIT_OK


def cmd_dual(args):
    return _emit_checked(args, dual(_read(args.path, args).algebra))


def cmd_twist(args):
    return _emit_checked(args, twist(_read(args.path, args).algebra, args.kind))


def cmd_convert(args):
    d = _read(args.path, args)
    _out(args, doc.emit(d.algebra, d.modules, d.report))
    return EXIT_OK


def _field(args):
    try:
        return doc.parse_field(args.field, _tolerance(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _table(args):
    if args.cyclic is not None:
        return ex.cyclic_table(args.cyclic)
    if args.symmetric is not None:
        return ex.symmetric_table(args.symmetric)
    if args.table is not None:
        try:
            with open(args.table, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"{args.table}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.table}: line {exc.lineno}: {exc.msg}") from None
        table = data.get("table") if isinstance(data, dict) else data
        if not isinstance(table, list):
            raise InputError(f"{args.table}: expected a multiplication table")
        return table
    return None


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def cmd_make(args):
    F = _field(args)
    try:
        if args.kind == "group":
            table = _table(args)
            if table is None:
                raise InputError("make group needs --cyclic, --symmetric or --table")
            A = ex.group_algebra(table, F, name=args.name or "K[G]")
        elif args.kind == "groupoid":
            table = _table(args) or [[0]]
            A = ex.groupoid_algebra(args.pair, table, F, name=args.name or "K[groupoid]")
        elif args.kind == "bbop":
            if not (args.B and args.E):
                raise InputError("make bbop needs --B and --E")
            try:
                B = doc.parse_algebra(_read_text(args.B), _tolerance(args))
                B.E = doc.parse_functional(_read_text(args.E), B.field, B.dim)
            except ParseError as exc:
                raise InputError(str(exc)) from None
            if args.normalize:
                B = ex.normalize_index(B)
            A = ex.bbop(B)
        else:
            A = ex.m2z2()
    except (FactoryError, NotWHA, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return _emit_checked(args, A)


# --------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=None,
                        help="complex tolerance (overrides WHA_TOL)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-o", "--output", help="write the document here instead of stdout")

    p = argparse.ArgumentParser(prog="wha", description="Weak Hopf algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check the axioms of a document")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="integrals, Haar and C* data")
    s.add_argument("path")
    for flag in ("integrals", "haar", "grouplike", "sectors", "frobenius"):
        s.add_argument(f"--{flag}", action="store_true")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("dual", parents=[common], help="write the dual algebra")
    s.add_argument("path")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("twist", parents=[common], help="write op, cop or opcop")
    s.add_argument("path")
    s.add_argument("--kind", choices=("op", "cop", "opcop"), required=True)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("convert", parents=[common], help="rewrite a document canonically")
    s.add_argument("path")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("make", parents=[common], help="construct an example")
    s.add_argument("kind", choices=("group", "groupoid", "bbop", "m2z2"))
    s.add_argument("--field", default="Q", help="Q, C or GF(p) (default Q)")
    s.add_argument("--name")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--cyclic", type=int, metavar="N")
    g.add_argument("--symmetric", type=int, metavar="K")
    g.add_argument("--table", metavar="FILE", help="JSON multiplication table")
    s.add_argument("--pair", type=int, default=1, metavar="K",
                   help="number of objects of the groupoid")
    s.add_argument("--B", metavar="FILE", help="algebra file")
    s.add_argument("--E", metavar="FILE", help="functional file")
    s.add_argument("--normalize", action="store_true", help="rescale E to index 1")
    s.set_defaults(func=cmd_make)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
