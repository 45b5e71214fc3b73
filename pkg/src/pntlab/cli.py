"""Command-line entry point.

Exit codes: 0 success, 1 acceptance failure, 2 usage or domain error,
3 resource limit or coverage overrun, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import acceptance, asymptotics, primes, tauberian, zeros
from .errors import (
    CoverageError,
    DomainError,
    PntlabError,
    ResourceLimitError,
)
from .zeta import euler_product_partial, zeta, zeta_direct, zeta_eta_oracle, zeta_floor_integral

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_NUMERIC = 4

MAX_CAPS = {
    "pi-table": primes.PI_MAX,
    "euler-product": 10**9,
    "theta-ratio": 10**9,
    "tauber-demo": 10**9,
    "pnt-tail": 10**9,
    "verify-all": primes.PI_MAX,
}

ZETA_METHODS = {
    "auto": zeta,
    "direct": zeta_direct,
    "floor": zeta_floor_integral,
    "eta": zeta_eta_oracle,
}


class UsageError(Exception):
    pass


def _parse_int(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v) or v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _parse_tol(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--checkpoint-dir", default=os.environ.get(primes.CHECKPOINT_ENV),
                        help=f"prime-count checkpoint directory (env {primes.CHECKPOINT_ENV})")

    parser = argparse.ArgumentParser(prog="pntlab", description="Prime number theorem numerics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi-table", parents=[common], help="pi(x), Li(x), x/log x at powers of ten")
    p.add_argument("--max", type=_parse_int, default=10**9)

    p = sub.add_parser("zeros", parents=[common], help="first zeros on the critical line")
    p.add_argument("--count", type=int, default=20)

    p = sub.add_parser("zeta-eval", parents=[common], help="evaluate zeta(s)")
    p.add_argument("--s", type=_parse_complex, required=True)
    p.add_argument("--tol", type=_parse_tol, default=1e-12)
    p.add_argument("--method", choices=tuple(ZETA_METHODS), default="auto")

    p = sub.add_parser("euler-product", parents=[common], help="partial Euler product")
    p.add_argument("--s", type=_parse_complex, required=True)
    p.add_argument("--max", type=_parse_int, default=10**6)

    p = sub.add_parser("theta-ratio", parents=[common], help="theta(x)/x and pi(x) log x / x on a log grid")
    p.add_argument("--max", type=_parse_int, default=10**8)
    p.add_argument("--count", type=int, default=200)

    p = sub.add_parser("tauber-demo", parents=[common], help="|g_T(0) - g(0)| for the theta signal")
    p.add_argument("--max", type=_parse_int, default=10**8)
    p.add_argument("--count", type=int, default=25)

    p = sub.add_parser("pnt-tail", parents=[common], help="I(10^k) for the PNT integral")
    p.add_argument("--max", type=_parse_int, default=10**8)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--max", type=_parse_int, default=10**12)
    return parser


def _check_cap(command: str, value: int, lo: int = 2):
    cap = MAX_CAPS[command]
    if value < lo:
        raise UsageError(f"--max must be >= {lo}")
    if value > cap:
        raise ResourceLimitError(f"--max {value} exceeds the {command} cap {cap}")


def _csv_rows(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_json(name: str, header, rows) -> str:
    return json.dumps({"schema": 1, "series": name, "columns": list(header),
                       "rows": [list(r) for r in rows]}, indent=2) + "\n"


def _cmd_pi_table(args) -> str:
    _check_cap("pi-table", args.max, 10**3)
    rows = [x for x in asymptotics.TABLE_ONE_ROWS if x <= args.max]
    k = 3 + len(rows)
    while 10**k <= args.max:
        rows.append(10**k)
        k += 1
    table = asymptotics.table_one(rows, args.checkpoint_dir)
    if args.format == "json":
        return asymptotics.table_to_json(table)
    return asymptotics.table_to_csv(table)


def _cmd_zeros(args) -> str:
    if not 1 <= args.count <= zeros.MAX_COUNT:
        raise UsageError(f"--count must lie in [1, {zeros.MAX_COUNT}]")
    recs = zeros.first_n_zeros(args.count)
    if args.format == "json":
        return json.dumps({"schema": 1, "zeros": [
            {"index": i, "t": r.t, "residual": r.residual} for i, r in enumerate(recs, 1)]}, indent=2) + "\n"
    return zeros.zeros_to_csv(recs)


def _result_text(res, s, fmt) -> str:
    d = res.as_dict(s)
    if fmt == "csv":
        keys = [k for k in d if k != "schema"]
        return _csv_rows(keys, [[repr(d[k]) if isinstance(d[k], float) else d[k] for k in keys]])
    return json.dumps(d, indent=2) + "\n"


def _cmd_zeta_eval(args) -> str:
    res = ZETA_METHODS[args.method](args.s, args.tol)
    return _result_text(res, args.s, args.format or "json")


def _cmd_euler_product(args) -> str:
    _check_cap("euler-product", args.max)
    res = euler_product_partial(args.s, args.max)
    return _result_text(res, args.s, args.format or "json")


def _cmd_theta_ratio(args) -> str:
    _check_cap("theta-ratio", args.max, 10)
    grid = asymptotics.log_grid(2.0, float(args.max), args.count)
    th = asymptotics.theta_ratio_series(grid)
    pi = asymptotics.pnt_ratio_series(grid)
    header = ("x", th.name, pi.name)
    rows = [(asymptotics._fmt_x(x), repr(float(a)), repr(float(b))) for x, a, b in zip(grid, th.ratios, pi.ratios)]
    if args.format == "json":
        return _series_json("theta_ratio", header, rows)
    return _csv_rows(header, rows)


def _cmd_tauber_demo(args) -> str:
    _check_cap("tauber-demo", args.max, 100)
    sig = tauberian.theta_signal(args.max)
    g0 = tauberian.g0_from_phi()
    T_grid = np.linspace(math.log(100), math.log(args.max), args.count)
    series = tauberian.newman_convergence_demo(sig, T_grid, g0)
    if args.format == "json":
        return _series_json("tauber_demo", series.header,
                            [(float(a), float(b)) for a, b in zip(series.grid, series.abs_error)])
    return series.to_csv()


def _cmd_pnt_tail(args) -> str:
    _check_cap("pnt-tail", args.max, 10**3)
    kmax = int(math.floor(math.log10(args.max) + 1e-12))
    header = ("x", "I(x)")
    rows = [(10**k, repr(tauberian.pnt_integral_tail(10**k, args.max))) for k in range(2, kmax + 1)]
    if args.format == "json":
        return _series_json("pnt_tail", header, rows)
    return _csv_rows(header, rows)


COMMANDS = {
    "pi-table": _cmd_pi_table,
    "zeros": _cmd_zeros,
    "zeta-eval": _cmd_zeta_eval,
    "euler-product": _cmd_euler_product,
    "theta-ratio": _cmd_theta_ratio,
    "tauber-demo": _cmd_tauber_demo,
    "pnt-tail": _cmd_pnt_tail,
}


def _verify_all(args) -> int:
    _check_cap("verify-all", args.max, 10**3)
    results = acceptance.run_all(args.max, args.checkpoint_dir, echo=print)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if args.out:
        payload = {"schema": 1, "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "verify-all":
            return _verify_all(args)
        _emit(COMMANDS[args.command](args), args.out)
        return EXIT_OK
    except (UsageError, DomainError) as exc:
        print(f"pntlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, CoverageError, MemoryError) as exc:
        print(f"pntlab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PntlabError, ArithmeticError) as exc:
        print(f"pntlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
