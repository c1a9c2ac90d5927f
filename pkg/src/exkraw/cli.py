"""Command-line front end.

Exit codes: 0 when every check passes, 1 on an identity failure, 2 on a
usage or configuration error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction

from .algebra import format_rational, parse_rational
from .darboux import inject_fault
from .krawtchouk import InvalidFamily, InvalidParameters, KrawtchoukParams, krawtchouk
from .report import Report, encode
from .structure.family22 import c0_from_values, closed_coefficients, q3, xkraw22_family
from .structure.recurrence import NotInSpan, recurrence_coefficients
from .structure.resultants import DEFAULT_A_RANGE, resultant_lemma_check
from .suites import DEFAULT_P, SUITES, Sweep, run_suites
from .xkrawtchouk import DegenerateNu, SpecialMemberRequired, spectrum, xk

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
MAX_D = 6


class ConfigError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational a/b, got {text!r}") from exc


def _int_range(text: str) -> list[int]:
    """"3", "0..5" (inclusive) or "1,4,6"."""
    try:
        out: list[int] = []
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        return out
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an int, a..b or a comma list, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exkraw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, *, n=True, j=False, d=False, fmt="json"):
        sp.add_argument("--p", type=_rational, help="p as an exact fraction a/b")
        sp.add_argument("--N", type=int, help="grid size N")
        if j:
            sp.add_argument("--j", type=int, help="family type 1..4")
        if d:
            sp.add_argument("--d", type=_int_range, help="seed degree d (int, a..b or list)")
        if n:
            sp.add_argument("--n", type=_int_range, help="index n (int, a..b or list)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
        sp.add_argument("--inject-fault", help=argparse.SUPPRESS)

    common(sub.add_parser("kraw", help="coefficients of K_n(x; p, N)"))
    common(sub.add_parser("xkraw", help="coefficients of Khat^{(j,d)}_n"), j=True, d=True)
    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, j=True, d=True, n=False)
    sp.add_argument("--suite", action="append", choices=sorted(SUITES), help="suite name (repeatable; default all)")
    sp.add_argument("--d-max", type=int, default=3)
    common(sub.add_parser("recurrence", help="recurrence coefficients c_{n,l} as a table"), j=True, d=True, fmt="csv")
    sp = sub.add_parser("resultant", help="resultant identities and common-zero criterion")
    common(sp)
    sp.add_argument("--a", type=_rational, action="append", help="parameter a (repeatable)")
    common(sub.add_parser("family22", help="full report for the (2,2) family"), n=False)
    return parser


# ---------------------------------------------------------------------------
# helpers


def _params(args, *, required: bool = True) -> KrawtchoukParams | None:
    if args.p is None or args.N is None:
        if required:
            raise ConfigError("--p and --N are required")
        return None
    return KrawtchoukParams(args.p, args.N)


def _single(values, name, default=None):
    if values is None:
        if default is None:
            raise ConfigError(f"--{name} is required")
        return default
    return values


def _check_j(j):
    if j is None:
        raise ConfigError("--j is required")
    if j not in (1, 2, 3, 4):
        raise ConfigError(f"--j must be in 1..4, got {j}")
    return j


def _check_ds(ds):
    for d in ds:
        if d < 0:
            raise ConfigError("--d must be nonnegative")
        if d > MAX_D:
            raise ConfigError(f"--d is capped at {MAX_D}")
    return ds


def _emit_table(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format_rational(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v for v in r])
        return buf.getvalue()
    if fmt == "text":
        lines = ["\t".join(header)]
        lines += ["\t".join(str(encode(v)) for v in r) for r in rows]
        return "\n".join(lines) + "\n"
    return json.dumps([dict(zip(header, encode(r))) for r in rows], indent=1) + "\n"


def _emit_report(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json(indent=1) + "\n"
    rows = [[c["id"], json.dumps(c["params"], sort_keys=True), "pass" if c["pass"] else "FAIL"]
            for c in rep.to_dict()["cases"]]
    if fmt == "csv":
        return _emit_table(["id", "params", "result"], rows, "csv")
    failed = [r for r in rows if r[2] == "FAIL"]
    lines = [f"{r[2]}\t{r[0]}\t{r[1]}" for r in failed]
    lines.append(f"{rep.suite}: {rep.total - len(rep.failed)}/{rep.total} passed, {len(rep.skipped)} skipped")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_kraw(args) -> tuple[int, str]:
    P = _params(args)
    ns = _single(args.n, "n")
    if any(n < 0 for n in ns):
        raise ConfigError("--n must be nonnegative")
    polys = {n: krawtchouk(n, P.p, P.N) for n in ns}
    if args.format == "json":
        out = [{"n": n, "p": format_rational(P.p), "N": format_rational(P.N), "coefficients": K.to_json()}
               for n, K in polys.items()]
        return EXIT_OK, json.dumps(out if len(out) > 1 else out[0]) + "\n"
    rows = [[n, k, c] for n, K in polys.items() for k, c in enumerate(K.coeffs)]
    return EXIT_OK, _emit_table(["n", "k", "coefficient"], rows, args.format)


def cmd_xkraw(args) -> tuple[int, str]:
    P = _params(args)
    j = _check_j(args.j)
    ds = _check_ds(_single(args.d, "d"))
    ns = _single(args.n, "n")
    items = []
    for d in ds:
        for n in ns:
            X_ = xk(j, d, n, P)
            items.append(X_)
    if args.format == "json":
        out = [{**encode(X_.metadata()), "coefficients": X_.poly.to_json()} for X_ in items]
        return EXIT_OK, json.dumps(out if len(out) > 1 else out[0]) + "\n"
    rows = [[X_.j, X_.d, X_.n, k, c] for X_ in items for k, c in enumerate(X_.poly.coeffs)]
    return EXIT_OK, _emit_table(["j", "d", "n", "k", "coefficient"], rows, args.format)


def cmd_verify(args) -> tuple[int, str]:
    sweep = Sweep(d_max=args.d_max)
    if args.p is not None:
        sweep.p_values = (args.p,)
    if args.N is not None:
        if args.N < 1:
            raise ConfigError("--N must be >= 1")
        sweep.N_values = (args.N,)
    if args.j is not None:
        sweep.j_values = (_check_j(args.j),)
    if args.d is not None:
        sweep.d_values = tuple(_check_ds(args.d))
    for p in sweep.p_values:
        if not 0 < p < 1:
            raise ConfigError("p must lie strictly between 0 and 1")
    names = args.suite or list(SUITES)
    rep = run_suites(names, sweep, jobs=max(1, args.jobs))
    return (EXIT_OK if rep.ok else EXIT_FAIL), _emit_report(rep, args.format)


def cmd_recurrence(args) -> tuple[int, str]:
    P = _params(args)
    j = _check_j(args.j)
    ds = _check_ds(_single(args.d, "d"))
    status = EXIT_OK
    header = ["j", "d", "n", "ell", "value"]
    compare = j == 2 and ds == [2]
    if compare:
        header += ["closed", "match"]
    rows = []
    for d in ds:
        ns = args.n if args.n is not None else spectrum(j, d, P, P.n_int)
        if j == 2 and d == 2 and args.n is None:
            ns = ns + [P.n_int + 3]
        for n in ns:
            s = recurrence_coefficients(j, d, n, P, q3(P) if compare else None)
            closed = closed_coefficients(n, P) if compare else {}
            if compare and 0 not in closed:
                closed[0] = c0_from_values(n, closed, P)
            for l, v in s.coefficients.items():
                row = [j, d, n, l, v]
                if compare:
                    off = l - n
                    if off in closed:
                        ok = closed[off] == v
                        row += [closed[off], "match" if ok else "MISMATCH"]
                        status = status if ok else EXIT_FAIL
                    else:
                        row += ["", "n/a"]
                rows.append(row)
            if compare:
                for off, c in closed.items():
                    if c != 0 and (n + off) not in s.coefficients:
                        rows.append([j, d, n, n + off, Fraction(0), c, "MISMATCH"])
                        status = EXIT_FAIL
    return status, _emit_table(header, rows, args.format)


def cmd_resultant(args) -> tuple[int, str]:
    ps = (args.p,) if args.p is not None else DEFAULT_P[:2]
    a_range = args.a or DEFAULT_A_RANGE
    n_max = max(args.n) if args.n else 5
    if n_max > 6:
        raise ConfigError("resultant checks are limited to n <= 6")
    rep = Report("resultant")
    for p in ps:
        rep.extend(resultant_lemma_check(p, a_range, n_max))
    return (EXIT_OK if rep.ok else EXIT_FAIL), _emit_report(rep, args.format)


def cmd_family22(args) -> tuple[int, str]:
    P = _params(args)
    rep = xkraw22_family(P)
    return (EXIT_OK if rep.ok else EXIT_FAIL), _emit_report(rep, args.format)


COMMANDS = {
    "kraw": cmd_kraw,
    "xkraw": cmd_xkraw,
    "verify": cmd_verify,
    "recurrence": cmd_recurrence,
    "resultant": cmd_resultant,
    "family22": cmd_family22,
}

CONFIG_ERRORS = (
    ConfigError,
    InvalidParameters,
    InvalidFamily,
    SpecialMemberRequired,
    DegenerateNu,
    NotInSpan,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    fault = inject_fault(args.inject_fault) if args.inject_fault else contextlib.nullcontext()
    try:
        with fault:
            code, text = COMMANDS[args.command](args)
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
