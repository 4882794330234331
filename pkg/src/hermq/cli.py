"""Command line: ``hermq gen | verify | fourier``.

Exit status is 0 on success, 1 when a check fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .polyring import Poly2, format_rational
from .qcore import DomainError, as_rational, qparam
from .report import VerifyReport

FAMILIES = ("classical", "q", "qinv", "qp")


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return as_rational(text)
    except (DomainError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _float_list(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _q_samples(text: str):
    if text == "certify":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--q-samples takes a positive integer or 'certify'") from None
    if value < 1:
        raise argparse.ArgumentTypeError("--q-samples must be positive")
    return value


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# gen -------------------------------------------------------------------------


def build_family(family: str, n: int, p=None, q=None) -> Poly2:
    if n < 0:
        raise UsageError("n must be nonnegative")
    if family == "classical":
        from .classical import hermite

        return hermite(n)
    if q is None:
        raise UsageError(f"family {family!r} needs --q")
    try:
        q = qparam(q, allow_classical=True)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if family == "q":
        from .qhermite import q_hermite

        return q_hermite(n, q)
    if family == "qinv":
        from .qinverse import q_inv_hermite

        return q_inv_hermite(n, q)
    if p is None or p < 1:
        raise UsageError("family 'qp' needs --p >= 1")
    from .qp import qp_hermite

    return qp_hermite(n, p, q)


def cmd_gen(args) -> int:
    poly = build_family(args.family, args.n, args.p, args.q)
    if args.format == "pretty":
        print(poly)
    elif args.format == "csv":
        sys.stdout.write(_csv_text(["x", "s", "coeff"], ([i, j, format_rational(c)] for (i, j), c in poly.terms())))
    else:
        out = {"family": args.family, "n": args.n}
        if args.p is not None and args.family == "qp":
            out["p"] = args.p
        if args.q is not None and args.family != "classical":
            out["q"] = format_rational(args.q)
        out.update(poly.to_dict())
        print(json.dumps(out, separators=(",", ":")))
    return 0


# verify ----------------------------------------------------------------------


def _emit_reports(reports, fmt: str, timing: bool):
    if fmt == "json":
        for r in reports:
            print(json.dumps(r.to_dict(timing=timing), separators=(",", ":")))
    elif fmt == "csv":
        header = ["identity_id", "params", "status", "residual"] + (["runtime_ms"] if timing else [])
        rows = []
        for r in reports:
            row = [r.identity_id, ";".join(f"{k}={v}" for k, v in r.params), r.status, r.residual]
            rows.append(row + ([r.runtime_ms] if timing else []))
        sys.stdout.write(_csv_text(header, rows))
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params)
            tail = f" [{r.runtime_ms} ms]" if timing else ""
            residual = "" if r.status == "pass" else f"  residual: {r.residual}"
            print(f"{r.status:<17} {r.identity_id:<36} {params}{residual}{tail}")


def cmd_verify(args) -> int:
    from .verify import summarize, verify

    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    reports = verify(args.suite, args.n_max, args.q_samples, args.workers)
    _emit_reports(reports, args.format, args.timing)
    counts = summarize(reports)
    print(
        f"{len(reports)} checks: {counts['pass']} pass, {counts['fail']} fail, "
        f"{counts['paper_discrepancy']} paper_discrepancy",
        file=sys.stderr,
    )
    return 1 if counts["fail"] else 0


# fourier ---------------------------------------------------------------------


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


FOURIER_HEADER = ["identity_id", "params", "lhs", "rhs", "oracle", "abs_err", "rel_err", "pass", "status"]


def _fourier_rows(args):
    from . import fourier as fo

    tol = args.tol
    if args.theorem == "gauss":
        for y in args.y or [0.0]:
            for s in args.s or [1.0]:
                pair = fo.gauss_transform(y, s)
                yield "fourier.gauss", pair, "pass" if pair.rel_err <= tol else "fail"
    elif args.theorem == "thm41":
        for n in args.n or [1]:
            for q in args.q or [0.5]:
                for s in args.s or [1.0]:
                    for y in args.y or [0.0]:
                        for b in args.b or [1.0]:
                            pair = fo.q_fourier_theorem(n, b, s, q, y)
                            yield "fourier.thm41", pair, "pass" if pair.agrees(tol) else "fail"
    elif not args.m:
        for n in args.n or [1]:
            for s in args.s or [1.0]:
                pair = fo.classical_fourier_zero(n, s)
                yield "fourier.thm23_zero", pair, "pass" if pair.abs_err <= 1e-10 else "fail"
    else:
        for n in args.n or [1]:
            for s in args.s or [1.0]:
                for y in args.y or [0.0]:
                    for m in args.m:
                        check = fo.classical_fourier_theorem(n, args.a, s, y, fo.complex_kappa(m, s))
                        pair = check.pair
                        pair.params["m"] = m
                        quad_ok = abs(pair.lhs - pair.oracle) <= tol * max(1.0, abs(pair.oracle))
                        phased_ok = abs(pair.lhs - check.phase * pair.rhs) <= tol * max(1.0, abs(pair.rhs))
                        if quad_ok and check.printed_holds and pair.rel_err <= tol:
                            status = "pass"
                        elif quad_ok and phased_ok:
                            status = "paper_discrepancy"
                        else:
                            status = "fail"
                        yield "fourier.thm23_complex_kappa", pair, status


def _params_text(params: dict) -> str:
    parts = []
    for k, v in params.items():
        parts.append(f"{k}={_fmt_complex(v) if isinstance(v, (float, complex)) else v}")
    return ";".join(parts)


def cmd_fourier(args) -> int:
    from .fourier import QuadratureError

    rows, failed = [], False
    try:
        for identity, pair, status in _fourier_rows(args):
            failed |= status == "fail"
            rows.append([
                identity, _params_text(pair.params), _fmt_complex(pair.lhs), _fmt_complex(pair.rhs),
                "" if pair.oracle is None else _fmt_complex(pair.oracle),
                f"{pair.abs_err:.3e}", f"{pair.rel_err:.3e}", str(status != "fail").lower(), status,
            ])
    except QuadratureError as exc:
        print(f"quadrature failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        for row in rows:
            print(json.dumps(dict(zip(FOURIER_HEADER, row)), separators=(",", ":")))
    elif args.format == "pretty":
        for row in rows:
            print(f"{row[8]:<17} {row[0]:<28} {row[1]}  lhs={row[2]} rhs={row[3]} rel_err={row[6]}")
    else:
        sys.stdout.write(_csv_text(FOURIER_HEADER, rows))
    return 1 if failed else 0


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermq", description="Deformed Hermite polynomial toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="print one polynomial of a family")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("n", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--q", type=_rational, help="rational such as 1/2")
    gen.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="run the exact identity checks")
    ver.add_argument("suite", choices=("all",) + FAMILIES)
    ver.add_argument("--n-max", type=int, default=12)
    ver.add_argument("--q-samples", type=_q_samples, default=10,
                     help="number of q points, or 'certify' for max(10, 2n^2+1) at each n")
    ver.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    ver.add_argument("--timing", action="store_true", help="include runtime_ms (output then varies run to run)")
    ver.add_argument("--workers", type=int, default=None, help="process count; default QHERMITE_WORKERS or 1")
    ver.set_defaults(func=cmd_verify)

    fou = sub.add_parser("fourier", help="numerical Fourier checks")
    fou.add_argument("theorem", choices=("gauss", "thm23", "thm41"))
    fou.add_argument("--n", type=_int_list)
    fou.add_argument("--q", type=_float_list)
    fou.add_argument("--s", type=_float_list)
    fou.add_argument("--y", type=_float_list)
    fou.add_argument("--b", type=_float_list)
    fou.add_argument("--m", type=_int_list, help="thm23: kappa = sqrt(pi m / s) e^(i pi/4)")
    fou.add_argument("--a", type=float, default=1.0)
    fou.add_argument("--tol", type=float, default=1e-6)
    fou.add_argument("--format", choices=("json", "csv", "pretty"), default="csv")
    fou.set_defaults(func=cmd_fourier)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        parser.exit(2, f"hermq: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
