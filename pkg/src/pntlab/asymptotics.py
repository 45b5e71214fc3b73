"""Logarithmic integral, the prime-count comparison table and ratio series."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import primes as _primes
from .errors import DomainError
from .quadrature import adaptive_simpson

TABLE_ONE_ROWS = tuple(10**k for k in range(3, 13))
LI_DEFAULT_RTOL = 1e-9
TABLE_LI_RTOL = 1e-12


@dataclass(frozen=True)
class LiValue:
    x: float
    li: float
    quad_err: float


@dataclass(frozen=True)
class RatioSeries:
    name: str
    grid: np.ndarray
    ratios: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        ratios = np.asarray(self.ratios, dtype=float)
        if len(grid) != len(ratios):
            raise ValueError("grid and ratios differ in length")
        if len(grid) > 1 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(ratios)):
            raise ValueError(f"{self.name}: non-finite ratio")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "ratios", ratios)

    @property
    def final(self) -> float:
        return float(self.ratios[-1])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", self.name])
        for x, r in zip(self.grid, self.ratios):
            writer.writerow([_fmt_x(x), repr(float(r))])
        return buf.getvalue()


def _fmt_x(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _inv_log(t: float) -> float:
    return 1.0 / math.log(t)


def li(x: float, tol: float | None = None) -> LiValue:
    """Li(x) = integral from 2 to x of dt / log t, to absolute tolerance ``tol``.

    The range is split at powers of ten and each piece gets an equal share
    of the tolerance.  Default ``tol`` is 1e-9 relative to x / log x.
    """
    x = float(x)
    if x < 2:
        raise DomainError("Li(x) needs x >= 2")
    if x == 2:
        return LiValue(x, 0.0, 0.0)
    if tol is None:
        tol = LI_DEFAULT_RTOL * max(1.0, x / math.log(x))
    if tol <= 0:
        raise DomainError("tol must be positive")
    edges = [2.0]
    k = 1
    while 10.0**k < x:
        edges.append(10.0**k)
        k += 1
    edges.append(x)
    share = tol / (len(edges) - 1)
    values, errs = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = adaptive_simpson(_inv_log, a, b, share)
        values.append(v)
        errs.append(e)
    return LiValue(x, math.fsum(values), math.fsum(errs))


def li_over_x_logx(x: float) -> float:
    """Li(x) / (x / log x)."""
    if x <= math.e:
        raise DomainError("x must exceed e")
    return li(x).li / (x / math.log(x))


def round_half_away(v: float) -> int:
    return int(math.copysign(math.floor(abs(v) + 0.5), v))


@dataclass(frozen=True)
class TableRow:
    x: int
    pi: int
    li_rounded: int
    x_over_logx_rounded: int
    li: float
    li_err: float
    pi_method: str


def table_row(x: int, checkpoint_dir=None) -> TableRow:
    x = int(x)
    if x < 2:
        raise DomainError("table rows need x >= 2")
    cp = _primes.prime_pi_checkpointed(x, checkpoint_dir)
    lv = li(x, tol=TABLE_LI_RTOL * x / math.log(x) + 1e-9)
    return TableRow(
        x=x,
        pi=cp.pi,
        li_rounded=round_half_away(lv.li),
        x_over_logx_rounded=round_half_away(x / math.log(x)),
        li=lv.li,
        li_err=lv.quad_err,
        pi_method=cp.method,
    )


def table_one(rows=TABLE_ONE_ROWS, checkpoint_dir=None) -> list[TableRow]:
    """Rows of (x, pi(x), round Li(x), round x/log x) in input order."""
    return [table_row(x, checkpoint_dir) for x in rows]


TABLE_CSV_HEADER = ("x", "pi", "li_rounded", "x_over_logx_rounded")


def table_to_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_CSV_HEADER)
    for r in rows:
        writer.writerow([r.x, r.pi, r.li_rounded, r.x_over_logx_rounded])
    return buf.getvalue()


def table_to_json(rows: list[TableRow]) -> str:
    payload = {
        "schema": 1,
        "rows": [{k: asdict(r)[k] for k in TABLE_CSV_HEADER} for r in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """n log-spaced points from lo to hi inclusive."""
    return np.unique(np.geomspace(lo, hi, n))


def _check_grid(grid, lo=2.0) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if len(grid) == 0:
        raise DomainError("empty grid")
    if grid.min() < lo:
        raise DomainError(f"grid values must be >= {lo}")
    if len(grid) > 1 and not np.all(np.diff(grid) > 0):
        raise DomainError("grid must be strictly increasing")
    return grid


def pnt_ratio_series(grid) -> RatioSeries:
    """pi(x) log x / x on the grid."""
    grid = _check_grid(grid)
    pis = np.array(_primes.prime_pi_many(np.floor(grid)), dtype=float)
    return RatioSeries("pi_logx_over_x", grid, pis * np.log(grid) / grid)


def theta_ratio_series(grid) -> RatioSeries:
    """theta(x) / x on the grid."""
    grid = _check_grid(grid)
    table = _primes.theta_table(int(grid.max()))
    return RatioSeries("theta_over_x", grid, table(grid) / grid)


def pn_ratio_series(n_grid) -> RatioSeries:
    """p_n / (n log n) on an integer grid of indices n >= 2."""
    n = _check_grid(n_grid).astype(np.int64)
    pn = _primes.nth_primes(n).astype(float)
    return RatioSeries("pn_over_nlogn", n, pn / (n * np.log(n)))


def li_ratio_series(grid) -> RatioSeries:
    grid = _check_grid(grid, lo=3.0)
    return RatioSeries("li_over_x_logx", grid, [li_over_x_logx(x) for x in grid])


def li_error_normalization(grid) -> RatioSeries:
    """|pi(x) - Li(x)| / (sqrt(x) log x): observational, not asserted bounded."""
    grid = _check_grid(grid)
    pis = _primes.prime_pi_many(np.floor(grid))
    vals = [abs(p - li(x).li) / (math.sqrt(x) * math.log(x)) for p, x in zip(pis, grid)]
    return RatioSeries("abs_pi_minus_li_over_sqrtx_logx", grid, vals)


def _x_minus_log1p(d: float) -> float:
    """d - log(1 + d), accurate for small |d|."""
    if abs(d) < 1e-4:
        return d * d / 2 - d**3 / 3 + d**4 / 4
    return d - math.log1p(d)


def sandwich_positivity(alpha: float, beta: float) -> tuple[float, float]:
    """(alpha - 1 - log alpha, 1 - beta + log beta).

    For alpha > 1 the first is strictly positive; for 0 < beta < 1 the
    second is strictly negative.  Both are f(x) = x - 1 - log x up to sign.
    """
    if not alpha > 1:
        raise DomainError("alpha must exceed 1")
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    return _x_minus_log1p(alpha - 1.0), -_x_minus_log1p(beta - 1.0)
