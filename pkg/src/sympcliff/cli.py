"""Command-line front end.

Exit codes: 0 success, 1 evaluation error, 2 usage error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, dsl, endf, process, quantize, symplectic
from .poisson import QuadPoly
from .quaternion import I, J, K

EXIT_OK, EXIT_EVAL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n\n{self.format_usage()}")


def _quaternion_rows():
    # same layout as the other tables: the unit row doubles as the header
    gens = [I, J, K]
    rows = [["e", "i", "j", "k"]]
    for a in gens:
        rows.append([str(a)] + [str(a * b) for b in gens])
    return rows


def _format_rows(rows) -> str:
    width = max(len(c) for r in rows for c in r)
    return "\n".join(" ".join(c.rjust(width) for c in r).rstrip() for r in rows)


def _emit(args, text: str, payload) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text)


def _quad_arg(source: str) -> QuadPoly:
    v = dsl.evaluate(source, "poly")
    quad = v.as_quad() if isinstance(v, dsl.Poly) else None
    if quad is None:
        raise dsl.EvalError(f"expected a homogeneous quadratic in q, p, got {dsl.format_value(v)}", 0)
    return quad


def _complex_matrix_text(m: np.ndarray) -> str:
    def cell(z):
        re, im = float(z.real) + 0.0, float(z.imag) + 0.0
        if im == 0:
            return f"{re:.6g}"
        if re == 0:
            return f"{im:.6g}i"
        return f"{re:.6g}{im:+.6g}i"
    return _format_rows([[cell(z) for z in row] for row in m])


# -- subcommands ------------------------------------------------------------

def cmd_tables(args):
    rows = {"process": process.table_rows, "quaternion": _quaternion_rows,
            "endf": endf.table_rows}[args.algebra]()
    _emit(args, _format_rows(rows), {"algebra": args.algebra, "rows": rows})


def _eval_emit(args, source, mode):
    v = dsl.evaluate(source, mode)
    _emit(args, dsl.format_value(v), dsl.value_to_json(v))


def cmd_bracket(args):
    if args.other is None:
        return _eval_emit(args, args.expr, "poly")
    f = dsl.parse(args.expr)
    try:
        g = dsl.parse(args.other)
    except dsl.DslError as exc:
        args.expr = args.other  # point the caret at the second argument
        raise exc
    _eval_emit(args, dsl.PoissonBracket(f, g), "poly")


def cmd_ham(args):
    _eval_emit(args, dsl.Call("ham", (dsl.parse(args.poly),)), "poly")


def cmd_quantize(args):
    f = _quad_arg(args.poly)
    op = quantize.weyl_quantize(f)
    payload = dsl.value_to_json(op)
    text = dsl.format_value(op)
    if args.fock_dim is not None:
        m = quantize.quantize_matrix(f, args.fock_dim)
        payload["fock_dim"] = args.fock_dim
        payload["matrix"] = dsl.value_to_json(m)["value"]
        text += "\n" + _complex_matrix_text(m)
    _emit(args, text, payload)


def cmd_spectrum(args):
    values = quantize.spectrum(_quad_arg(args.poly), args.fock_dim)
    _emit(args, dsl.format_value(dsl.Spectrum(tuple(values))),
          {"type": "spectrum", "fock_dim": args.fock_dim, "value": values})


def cmd_decompose(args):
    space = symplectic.particle_phase_space(args.particles)
    d = space.to_dict()
    lines = [f"R^{space.dim} = " + " (+) ".join(f"F_{p['index']}" for p in d["planes"])]
    for p in d["planes"]:
        lines.append(f"F_{p['index']} = span({p['q']}, {p['p']}), omega({p['q']}, {p['p']}) = {p['omega_qp']}")
    _emit(args, "\n".join(lines), d)


def cmd_eval(args):
    _eval_emit(args, args.expr, args.mode)


def cmd_verify(args):
    from .verify import emit_report, run_checks
    report = run_checks(args.seed, args.cases)
    if args.report:
        emit_report(report, args.report)
    s = report.summary
    for c in report.to_dict()["checks"]:
        if c["status"] != "pass":
            print(f"{c['status']}: {c['name']}: {c['detail']}")
    print(f"{s['passed']} passed, {s['failed']} failed (seed {report.seed}, {len(report.checks)} checks)")
    return EXIT_VERIFY if s["failed"] else EXIT_OK


# -- argument parsing -------------------------------------------------------

def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def _fock_dim(text):
    n = _positive(text)
    if not 3 <= n <= dsl.MAX_FOCK_DIM:
        raise argparse.ArgumentTypeError(f"must lie in 3..{dsl.MAX_FOCK_DIM}, got {n}")
    return n


def _default_seed():
    raw = os.environ.get("SYMPCLIFF_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SYMPCLIFF_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sympcliff", description="Exact Clifford and Poisson algebra of symplectic planes.",
                 epilog="expression grammar:\n" + dsl.GRAMMAR,
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help, value=True):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        if value:
            p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("tables", cmd_tables, "print a composition table")
    p.add_argument("--algebra", choices=("process", "quaternion", "endf"), required=True)

    p = add("bracket", cmd_bracket, "evaluate a Poisson bracket expression, or {F, G} for two arguments")
    p.add_argument("expr")
    p.add_argument("other", nargs="?")

    p = add("ham", cmd_ham, "matrix of the Hamiltonian field of a quadratic polynomial")
    p.add_argument("poly")

    p = add("quantize", cmd_quantize, "Weyl quantization of a quadratic polynomial")
    p.add_argument("poly")
    p.add_argument("--fock-dim", type=_fock_dim, help="also print the truncated N x N matrix")

    p = add("spectrum", cmd_spectrum, "sorted spectrum of i Q_N(f)")
    p.add_argument("poly")
    p.add_argument("--fock-dim", type=_fock_dim, required=True)

    p = add("decompose", cmd_decompose, "split R^6m into 3m symplectic planes")
    p.add_argument("--particles", type=_positive, required=True)

    p = add("verify", cmd_verify, "run the verification suite", value=False)
    p.add_argument("--seed", type=int, default=None, help="default: $SYMPCLIFF_SEED or 0")
    p.add_argument("--cases", type=_positive, default=500)
    p.add_argument("--report", help="write the JSON report here")

    p = add("eval", cmd_eval, "evaluate an expression")
    p.add_argument("--mode", choices=dsl.MODES, default="poly")
    p.add_argument("expr")
    return ap


def _report_dsl_error(exc: dsl.DslError, source) -> None:
    print(f"error: {exc}", file=sys.stderr)
    if isinstance(source, str) and exc.position is not None:
        col = len(source.encode("utf-8")[: exc.position].decode("utf-8", "replace"))
        print(f"  {source}\n  {' ' * col}^", file=sys.stderr)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) == "verify" and args.seed is None:
            args.seed = _default_seed()
    except UsageError as exc:
        print(exc, file=sys.stderr)
        print("expression grammar:\n" + dsl.GRAMMAR, file=sys.stderr, end="")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        code = args.func(args)
    except dsl.DslError as exc:
        _report_dsl_error(exc, getattr(args, "expr", None) or getattr(args, "poly", None))
        return EXIT_EVAL
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    return code or EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
