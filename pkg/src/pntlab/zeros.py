"""Nontrivial zeros of zeta on the critical line, t <= 80."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RefinementError
from .zeta import zeta_eta_many, zeta_floor_integral

SCAN_STEP = 0.05
SCAN_THRESHOLD = 0.25
RESIDUAL_MAX = 1e-8
MAX_ITERATIONS = 50
COVERAGE_T = 80.0
MAX_COUNT = 20
_DIFF_H = 1e-6
_EVAL_TOL = 1e-14

# Ordinates of the first twenty zeros to four decimals.
KNOWN_ORDINATES = (
    14.1347, 21.0220, 25.0109, 30.4249, 32.9351, 37.5862, 40.9187, 43.3271, 48.0052, 49.7738,
    52.9703, 56.4462, 59.3470, 60.8318, 65.1125, 67.0798, 69.5464, 72.0672, 75.7047, 77.1448,
)


@dataclass(frozen=True)
class ZeroRecord:
    t: float
    residual: float
    bracket: tuple[float, float]
    floor_residual: float

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo < self.t < hi:
            raise ValueError(f"t={self.t} outside its bracket {self.bracket}")
        if not self.residual <= RESIDUAL_MAX:
            raise ValueError(f"residual {self.residual} exceeds {RESIDUAL_MAX}")


def critical_line(t, sigma: float = 0.5) -> np.ndarray:
    """zeta(sigma + it) for an array of t, via the eta oracle."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    vals, _ = zeta_eta_many(sigma + 1j * t, _EVAL_TOL)
    return vals


def scan_critical_line(t_lo: float, t_hi: float, step: float = SCAN_STEP,
                       threshold: float = SCAN_THRESHOLD) -> list[tuple[float, float]]:
    """Brackets (t - step, t + step) around local minima of |zeta(1/2+it)|^2 below threshold."""
    if not 0 < t_lo < t_hi:
        raise DomainError("need 0 < t_lo < t_hi")
    if not 0 < step <= 0.1:
        raise DomainError("step must lie in (0, 0.1]")
    n = int(np.floor((t_hi - t_lo) / step + 1e-9)) + 1
    t = t_lo + step * np.arange(n)
    mag2 = np.abs(critical_line(t)) ** 2
    inner = np.arange(1, n - 1)
    is_min = (mag2[inner] <= mag2[inner - 1]) & (mag2[inner] < mag2[inner + 1]) & (mag2[inner] < threshold)
    return [(float(t[i] - step), float(t[i] + step)) for i in inner[is_min]]


def _newton_step(t: float) -> tuple[float, float]:
    pts = np.array([t, t - _DIFF_H, t + _DIFF_H])
    f, fm, fp = critical_line(pts)
    df = (fp - fm) / (2 * _DIFF_H)
    # Gauss-Newton for the real variable t with complex residual f(t)
    delta = -(np.conj(df) * f).real / abs(df) ** 2
    return float(delta), float(abs(f))


def refine_zero(bracket: tuple[float, float]) -> ZeroRecord:
    """Newton refinement from the bracket midpoint; residual |zeta(1/2+it)| <= 1e-8."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0 < lo < hi:
        raise DomainError("bad bracket")
    t = 0.5 * (lo + hi)
    residual = float("inf")
    for it in range(1, MAX_ITERATIONS + 1):
        delta, residual = _newton_step(t)
        t += delta
        if abs(delta) < 1e-12:
            break
    residual = float(abs(critical_line(t)[0]))
    if residual > RESIDUAL_MAX or not lo < t < hi:
        raise RefinementError(
            f"no zero in bracket {bracket}: last t={t}, residual={residual:.3e}",
            iterations=it, last_t=t, residual=residual,
        )
    floor_residual = abs(zeta_floor_integral(complex(0.5, t), 1e-12).value)
    return ZeroRecord(t, residual, (lo, hi), float(floor_residual))


def zeros_in(t_lo: float, t_hi: float, step: float = SCAN_STEP) -> list[ZeroRecord]:
    """All refined zeros in [t_lo, t_hi]; candidates that do not refine are discarded."""
    out = []
    for b in scan_critical_line(t_lo, t_hi, step):
        try:
            out.append(refine_zero(b))
        except RefinementError:
            continue
    return out


def first_n_zeros(n: int) -> list[ZeroRecord]:
    """The first n nontrivial zeros (n <= 20), increasing ordinates."""
    if not 1 <= n <= MAX_COUNT:
        raise DomainError(f"n must lie in [1, {MAX_COUNT}] (coverage window t <= {COVERAGE_T})")
    found = zeros_in(10.0, COVERAGE_T)
    if len(found) < n:
        raise RefinementError(f"only {len(found)} zeros located below t={COVERAGE_T}")
    return found[:n]


def zeros_to_csv(records: list[ZeroRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "t", "residual"])
    for i, r in enumerate(records, start=1):
        writer.writerow([i, f"{r.t:.10f}", f"{r.residual:.3e}"])
    return buf.getvalue()
