"""Command line front end.

Every number crosses the boundary as a canonical ``"p/q"`` string, so JSON
output re-parses to exactly the values that were computed.  Exit status is
0 on success, 2 when a verification finds a violated identity and 1 on any
error; errors are reported on stderr as ``{"error": code, "message": ...}``.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Iterator, Sequence

from . import bispectral, darboux, diffop, eigenpoly, hermite, recurrence
from ._docs import read_document
from .errors import EigenpolyError, ParseError
from .exact import Poly, format_rational, parse_rational

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


class UsageError(EigenpolyError):
    code = "UsageError"


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: which subcommand, output format and pool size."""

    command: str
    fmt: str = "json"
    workers: int = 1

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "pretty"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")


@dataclass
class Result:
    """A document, or a stream of table rows checked one at a time."""

    data: dict | None = None
    rows: Iterable[dict] | None = None
    columns: Sequence[str] = ()
    ok: bool = True
    check: Callable[[dict], bool] | None = field(default=None, repr=False)


# --------------------------------------------------------------------------
# argument helpers


def parse_range(text: str) -> range:
    """``"a:b"`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; expected a:b") from exc
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def _gammas(args, m: int) -> darboux.GammaSequence:
    if getattr(args, "hermite_gamma1", None) is not None:
        return hermite.gamma_sequence(parse_rational(args.hermite_gamma1), m)
    if getattr(args, "gamma_const", None) is not None:
        return darboux.GammaSequence.constant(parse_rational(args.gamma_const), m)
    if getattr(args, "gammas", None) is not None:
        return darboux.GammaSequence.of(parse_rational_list(args.gammas))
    raise UsageError("give --gammas, --gamma-const or --hermite-gamma1")


def _matrix(args, n_max: int) -> recurrence.BandedHessenberg:
    if args.matrix:
        return recurrence.load_banded(args.matrix)
    return hermite.hermite_recurrence_matrix(n_max)


# --------------------------------------------------------------------------
# handlers


def cmd_op_spectrum(args, cfg) -> Result:
    op = diffop.load_operator(args.op)
    sp = diffop.spectrum(op, args.n)
    return Result({"eigenvalues": list(sp.eigenvalues), "distinct": sp.distinct, "notes": list(op.notes)})


def cmd_op_delta(args, cfg) -> Result:
    op = diffop.load_operator(args.op)
    dt = diffop.delta_table(op, args.n)
    rows = ({"n": n, "k": k, "delta": dt(n, k)} for n in range(args.n + 1) for k in range(n + 1))
    return Result(rows=rows, columns=("n", "k", "delta"))


def cmd_op_eigenpoly(args, cfg) -> Result:
    op = diffop.load_operator(args.op)
    out: dict = {"n": args.n}
    if args.method in ("backsub", "both"):
        out["backsub"] = eigenpoly.eigenpoly_backsub(op, args.n)
    if args.method in ("explicit", "both"):
        out["explicit"] = eigenpoly.eigenpoly_explicit(op, args.n)
    ok = True
    if args.method == "both":
        ok = out["agree"] = out["backsub"] == out["explicit"]
    return Result(out, ok=ok)


def cmd_op_verify(args, cfg) -> Result:
    op = diffop.load_operator(args.op)
    lams = diffop.spectrum(op, args.n).eigenvalues
    if args.poly is not None:
        p = Poly(parse_rational_list(args.poly))
        lam = parse_rational(args.lam) if args.lam is not None else lams[p.degree]
        holds = eigenpoly.verify_eigen(op, p, lam)
        return Result({"poly": p, "lambda": lam, "holds": holds}, ok=holds)
    tri = eigenpoly.coefficient_triangle(op, args.n)
    rows = (
        {"n": n, "lambda": lams[n], "holds": eigenpoly.verify_eigen(op, tri.poly(n), lams[n])}
        for n in range(args.n + 1)
    )
    return Result(rows=rows, columns=("n", "lambda", "holds"), check=lambda r: r["holds"])


def cmd_rec_gen(args, cfg) -> Result:
    J = _matrix(args, args.n)
    polys = recurrence.polys_from_recurrence(J, args.n)

    def row(n, p):
        # the last member has no successor to test the relation against
        holds = n == args.n or recurrence.hessenberg_apply(J, polys, n) == Poly.x() * p
        return {"n": n, "poly": p, "bispectral": holds}

    rows = (row(n, p) for n, p in enumerate(polys))
    return Result(rows=rows, columns=("n", "poly", "bispectral"), check=lambda r: r["bispectral"])


def _family(args) -> list[Poly]:
    if args.family:
        doc = read_document(args.family, "family document")
        try:
            return [Poly(parse_rational(v) for v in row) for row in doc["polys"]]
        except (KeyError, TypeError) as exc:
            raise ParseError("family document needs 'polys'") from exc
    if not args.op:
        raise UsageError("give --family or --op")
    tri = eigenpoly.coefficient_triangle(diffop.load_operator(args.op), args.n)
    if args.gammas is None and args.gamma_const is None and args.hermite_gamma1 is None:
        return tri.polys()
    return bispectral.transform_coeffs(tri, _gammas(args, args.n)).polys()


def cmd_rec_fit(args, cfg) -> Result:
    polys = _family(args)
    ps = [args.p] if args.p is not None else range(args.p_max + 1)
    verdicts = []
    for p in ps:
        fit = recurrence.fit_recurrence(polys, p)
        entry = {"p": p, "ok": fit.ok}
        if fit.ok:
            entry["matrix"] = recurrence.banded_to_document(fit.matrix)
        else:
            n, k, residual = fit.failure
            entry["failure"] = {"n": n, "k": k, "residual": residual}
        verdicts.append(entry)
    return Result({"fits": verdicts}, ok=any(v["ok"] for v in verdicts))


def cmd_darboux_factorize(args, cfg) -> Result:
    J = _matrix(args, args.n_max)
    pair = darboux.ul_factorize(
        J, parse_rational(args.c), parse_rational(args.gamma1), args.n_max,
        check_truncations=args.check_truncations,
    )
    ok = pair.reconstruct() == J.truncate(args.n_max)
    return Result(
        {
            "C": pair.C,
            "u": list(pair.u),
            "l": list(pair.l),
            "U": darboux.bidiagonal_to_document(pair.U),
            "L": darboux.bidiagonal_to_document(pair.L),
            "reconstruction": ok,
        },
        ok=ok,
    )


def cmd_darboux_transform(args, cfg) -> Result:
    factors = [darboux.load_bidiagonal(f) for f in args.factors]
    J = darboux.geronimus_transform(factors, parse_rational(args.c), args.s, args.rows)
    return Result(recurrence.banded_to_document(J))


def cmd_darboux_conjugate(args, cfg) -> Result:
    J = _matrix(args, args.n_max)
    D = darboux.conjugate_by_T(J, _gammas(args, args.n_max + 1), args.n_max)
    defect = darboux.band_defect(D, J.p)
    out = {"rows": D, "banded": defect is None}
    if defect:
        out["first_defect"] = {"i": defect[0], "j": defect[1], "value": defect[2]}
    return Result(out)


def _necessary_cell(op, b, gammas, cell):
    n, k = cell
    value = bispectral.necessary_condition(op, b, gammas, n, k)
    return {"n": n, "k": k, "value": value, "nonzero": value != 0}


def cmd_test_necessary(args, cfg) -> Result:
    op = diffop.load_operator(args.op)
    n_range, k_range = parse_range(args.n_range), parse_range(args.k_range)
    b = eigenpoly.coefficient_triangle(op, n_range[-1])
    gammas = _gammas(args, n_range[-1])
    cells = [(n, k) for n in n_range for k in k_range if 1 <= k <= n]
    rows = _pool_map(partial(_necessary_cell, op, b, gammas), cells, cfg.workers)
    return Result(rows=rows, columns=("n", "k", "value", "nonzero"))


def _sigma_fields(row: dict) -> dict:
    return {k: row[k] for k in ("n", "k", "sigma_bruteforce", "sigma_sum", "sigma_closed", "nonzero")}


def _sigma_consistent(row: dict) -> bool:
    if row["sigma_bruteforce"] != row["sigma_sum"]:
        return False
    closed = row["sigma_closed"]
    return closed is None or abs(closed) == abs(row["sigma_sum"])


def cmd_hermite_sigma(args, cfg) -> Result:
    g1 = parse_rational(args.gamma1)
    if args.mode == "all":
        row = hermite.sigma_row(args.n, args.k, g1)
        return Result(_sigma_fields(row), ok=_sigma_consistent(row))
    value = hermite.sigma_h(args.n, args.k, g1, args.mode)
    return Result({"n": args.n, "k": args.k, "mode": args.mode, "value": value, "nonzero": value != 0})


def cmd_hermite_gamma(args, cfg) -> Result:
    g2 = parse_rational(args.gamma2) if args.gamma2 is not None else None
    g = hermite.gamma_sequence(parse_rational(args.gamma1), args.m, gamma2=g2)
    return Result({"gammas": list(g.values)})


def _sigma_cell(g1, cell):
    return _sigma_fields(hermite.sigma_row(cell[0], cell[1], g1))


def cmd_hermite_table(args, cfg) -> Result:
    g1 = parse_rational(args.gamma1)
    n_range, k_range = parse_range(args.n_range), parse_range(args.k_range)
    cells = [(n, k) for n in n_range for k in k_range if 1 <= k <= n]
    rows = _pool_map(partial(_sigma_cell, g1), cells, cfg.workers)
    return Result(
        rows=rows,
        columns=("n", "k", "sigma_bruteforce", "sigma_sum", "sigma_closed", "nonzero"),
        check=_sigma_consistent,
    )


def _pool_map(fn, cells: list, workers: int) -> Iterator[dict]:
    """Ordered results; with several workers cells are sharded by row."""
    if workers == 1 or len(cells) < 2:
        yield from map(fn, cells)
        return
    chunk = max(1, len(cells) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, cells, chunksize=chunk)


# --------------------------------------------------------------------------
# output


def to_jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    if isinstance(value, Poly):
        return value.to_strings()
    if isinstance(value, dict):
        return {k: (v if k in ("n", "k", "p", "i", "j", "s") and isinstance(v, int) else to_jsonable(v))
                for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def to_text(value) -> str:
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return format_rational(value)
    if isinstance(value, Poly):
        return str(value)
    if value is None:
        return ""
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(to_jsonable(value))
    return str(value).lower() if isinstance(value, bool) else str(value)


def emit(result: Result, fmt: str, out) -> bool:
    """Write the result; returns whether every streamed row passed its check."""
    ok = result.ok
    if result.rows is None:
        data = result.data
        if fmt == "json":
            json.dump(to_jsonable(data), out, indent=2)
            out.write("\n")
        elif fmt == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(("key", "value"))
            for k, v in data.items():
                w.writerow((k, to_text(v)))
        else:
            for k, v in data.items():
                out.write(f"{k}: {to_text(v)}\n")
        return ok
    writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
    if writer:
        writer.writerow(result.columns)
    elif fmt == "pretty":
        out.write("  ".join(result.columns) + "\n")
    for row in result.rows:
        if result.check and not result.check(row):
            ok = False
        if fmt == "json":
            out.write(json.dumps(to_jsonable(row)) + "\n")
        elif writer:
            writer.writerow([to_text(row[c]) for c in result.columns])
        else:
            out.write("  ".join(to_text(row[c]) for c in result.columns) + "\n")
        out.flush()
    return ok


# --------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"),
                        help="default: csv for hermite table, json otherwise")
    common.add_argument("--workers", type=int, default=1)

    root = _Parser(prog="eigenpolys", description=__doc__.splitlines()[0])
    groups = root.add_subparsers(dest="group", required=True)

    def sub(group, name, handler, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(handler=handler)
        return p

    def gamma_flags(p):
        p.add_argument("--gammas", help="comma-separated gamma_1, gamma_2, ...")
        p.add_argument("--gamma-const", help="constant gamma_n")
        p.add_argument("--hermite-gamma1", help="constrained Hermite sequence from gamma_1")

    op = groups.add_parser("op").add_subparsers(dest="cmd", required=True)
    for name, handler in (("spectrum", cmd_op_spectrum), ("delta", cmd_op_delta)):
        p = sub(op, name, handler)
        p.add_argument("--op", required=True)
        p.add_argument("--n", type=int, required=True)
    p = sub(op, "eigenpoly", cmd_op_eigenpoly)
    p.add_argument("--op", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", default="backsub", choices=("backsub", "explicit", "both"))
    p = sub(op, "verify", cmd_op_verify)
    p.add_argument("--op", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", help="ascending coefficients; default checks P_0..P_n")
    p.add_argument("--lam", help="eigenvalue for --poly (default lambda_deg)")

    rec = groups.add_parser("rec").add_subparsers(dest="cmd", required=True)
    p = sub(rec, "gen", cmd_rec_gen)
    p.add_argument("--matrix", help="banded matrix document (default: Hermite)")
    p.add_argument("--n", type=int, required=True)
    p = sub(rec, "fit", cmd_rec_fit)
    p.add_argument("--family", help='{"polys": [[...], ...]} document')
    p.add_argument("--op", help="use the operator's eigenfamily instead")
    p.add_argument("--n", type=int, default=20)
    gamma_flags(p)
    band = p.add_mutually_exclusive_group()
    band.add_argument("--p", type=int)
    band.add_argument("--p-max", type=int, default=3)

    dx = groups.add_parser("darboux").add_subparsers(dest="cmd", required=True)
    p = sub(dx, "factorize", cmd_darboux_factorize)
    p.add_argument("--matrix", help="tridiagonal matrix document (default: Hermite)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--c", default="0")
    p.add_argument("--gamma1", default="1", help="free parameter l_1")
    p.add_argument("--check-truncations", action="store_true")
    p = sub(dx, "transform", cmd_darboux_transform)
    p.add_argument("--factors", nargs="+", required=True, help="U then L^(1) .. L^(p)")
    p.add_argument("--c", default="0")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--rows", type=int)
    p = sub(dx, "conjugate", cmd_darboux_conjugate)
    p.add_argument("--matrix", help="tridiagonal matrix document (default: Hermite)")
    p.add_argument("--n-max", type=int, default=10)
    gamma_flags(p)

    test = groups.add_parser("test").add_subparsers(dest="cmd", required=True)
    p = sub(test, "necessary", cmd_test_necessary)
    p.add_argument("--op", required=True)
    p.add_argument("--n-range", required=True)
    p.add_argument("--k-range", required=True)
    gamma_flags(p)

    hm = groups.add_parser("hermite").add_subparsers(dest="cmd", required=True)
    p = sub(hm, "sigma", cmd_hermite_sigma)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gamma1", default="1")
    p.add_argument("--mode", default="all", choices=("all",) + hermite.SIGMA_MODES)
    p = sub(hm, "gamma", cmd_hermite_gamma)
    p.add_argument("--gamma1", default="1")
    p.add_argument("--gamma2")
    p.add_argument("--m", type=int, default=10)
    p = sub(hm, "table", cmd_hermite_table)
    p.add_argument("--n-range", required=True)
    p.add_argument("--k-range", required=True)
    p.add_argument("--gamma1", default="1")
    return root


def _fail(code: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message}) + "\n")
    return EXIT_ERROR


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        command = f"{args.group} {args.cmd}"
        fmt = args.fmt or ("csv" if command == "hermite table" else "json")
        cfg = RunConfig(command, fmt, args.workers)
        result = args.handler(args, cfg)
        ok = emit(result, cfg.fmt, out)
    except EigenpolyError as exc:
        return _fail(exc.code, str(exc))
    except FileNotFoundError as exc:
        return _fail("FileNotFound", str(exc))
    except IndexError as exc:
        return _fail("IndexError", str(exc))
    except (ValueError, ArithmeticError) as exc:
        return _fail(type(exc).__name__, str(exc))
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
