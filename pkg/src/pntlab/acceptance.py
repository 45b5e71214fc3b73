"""The acceptance suite shared by ``tests/test_acceptance.py`` and ``pntlab verify-all``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics, primes, tauberian, zeros
from .zeta import (
    three_four_one_grid,
    zeta_direct,
    zeta_eta_many,
    zeta_eta_oracle,
    zeta_floor_integral,
    zeta_floor_many,
)

SEED = 20240601

# (x, pi(x), round Li(x), round x/log x)
REFERENCE_TABLE = (
    (10**3, 168, 177, 145),
    (10**4, 1229, 1245, 1086),
    (10**5, 9592, 9629, 8686),
    (10**6, 78498, 78627, 72382),
    (10**7, 664579, 664917, 620421),
    (10**8, 5761455, 5762208, 5428681),
    (10**9, 50847534, 50849234, 48254942),
    (10**10, 455052511, 455055614, 434294482),
    (10**11, 4118054813, 4118066400, 3948131654),
    (10**12, 37607912018, 37607950280, 36191206825),
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def criterion_table(max_x: int = 10**12, checkpoint_dir=None):
    rows = [r for r in REFERENCE_TABLE if r[0] <= max_x]
    got = asymptotics.table_one([r[0] for r in rows], checkpoint_dir)
    bad = [(r[0], (g.pi, g.li_rounded, g.x_over_logx_rounded))
           for r, g in zip(rows, got) if (g.pi, g.li_rounded, g.x_over_logx_rounded) != r[1:]]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} rows exact through x={rows[-1][0]:.0e}" + (
        f"; mismatches {bad}" if bad else "")


def criterion_zeros():
    t0 = time.perf_counter()
    recs = zeros.first_n_zeros(20)
    elapsed = time.perf_counter() - t0
    dev = max(abs(r.t - k) for r, k in zip(recs, zeros.KNOWN_ORDINATES))
    res = max(r.residual for r in recs)
    ok = len(recs) == 20 and dev <= 5e-5 and res <= 1e-8 and elapsed <= 60
    return ok, f"max |t - listed| = {dev:.2e}, max residual = {res:.1e}, {elapsed:.1f}s"


def criterion_zeta_methods():
    exact = math.pi**2 / 6
    errs = [abs(f(2).value - exact) for f in (zeta_direct, zeta_floor_integral, zeta_eta_oracle)]
    rng = np.random.default_rng(SEED)
    strip = rng.uniform(0.1, 1.0, 100) + 1j * rng.uniform(-30, 30, 100)
    fv, fe = zeta_floor_many(strip, 1e-12)
    ev, ee = zeta_eta_many(strip, 1e-12)
    strip_ok = np.all(np.abs(fv - ev) <= fe + ee)
    right = rng.uniform(1.05, 3.0, 100) + 1j * rng.uniform(-30, 30, 100)
    rv, re_ = zeta_floor_many(right, 1e-12)
    direct = [zeta_direct(s) for s in right]
    right_ok = all(abs(d.value - v) <= d.err + e for d, v, e in zip(direct, rv, re_))
    ok = max(errs) <= 1e-10 and strip_ok and right_ok
    return ok, (f"zeta(2) errors {', '.join(f'{e:.1e}' for e in errs)}; "
                f"strip agreement {bool(strip_ok)}, Re s > 1 agreement {right_ok}")


def criterion_residue():
    worst = []
    for k in range(1, 7):
        s = 1 + 10.0**-k
        worst.append(abs((s - 1) * zeta_floor_integral(s).value - 1) / 10.0 ** (-k + 1))
    return max(worst) < 1, f"max error / 10^(1-k) = {max(worst):.3f}"


def criterion_chebyshev():
    grid = asymptotics.log_grid(2.0, 1e8, 10**4)
    th = primes.theta_table(10**8)(grid)
    ok1 = bool(np.all(th <= 3 * grid))
    n_max = 10**6
    table = primes.theta_at_integers(2 * n_max)
    n = np.arange(1, n_max + 1)
    gap = table[2 * n] - table[n]
    ok2 = bool(np.all(gap <= 2 * n * math.log(2)))
    ratio = primes.chebyshev_theta(1e8).theta / 1e8
    ok3 = 0.98 <= ratio <= 1.02
    return ok1 and ok2 and ok3, (f"theta <= 3x: {ok1}; max gap/(2n log 2) = {np.max(gap / (2 * n * math.log(2))):.4f}; "
                                 f"theta(1e8)/1e8 = {ratio:.6f}")


def criterion_three_four_one():
    rng = np.random.default_rng(SEED)
    x = rng.uniform(-1e3, 1e3, 10**6)
    ident = float(np.max(np.abs(3 + 4 * np.cos(x) + np.cos(2 * x) - 2 * (1 + np.cos(x)) ** 2)))
    ts = np.round(np.arange(0, 501) * 0.1, 10)
    grid = three_four_one_grid([1.001, 1.01, 1.1], ts)
    low = float(grid.min())
    tline = np.linspace(0.1, 80, 1600)
    vals, _ = zeta_floor_many(1 + 1j * tline, 1e-10)
    m = float(np.abs(vals).min())
    ok = ident <= 1e-12 and low >= -1e-6 and m > 0.01
    return ok, f"identity residual {ident:.1e}; grid min {low:.4f}; min |zeta(1+it)| = {m:.4f}"


def criterion_laplace_identity():
    reps = [tauberian.phi_laplace_identity_residual(s, 10**6) for s in (2, 3, 2 + 5j)]
    return all(r.within for r in reps), "; ".join(f"{r.residual:.1e} <= {r.bound:.1e}" for r in reps)


def criterion_newman():
    worst = 0.0
    for sig in (tauberian.exp_decay(1.5), tauberian.damped_cosine(1.5, 1.0)):
        for R in (1.0, 2.0):
            for d in (R / 4, R / 2):
                for T in (1.0, 5.0, 10.0):
                    worst = max(worst, tauberian.newman_contour_residual(sig, tauberian.ContourSpec(R, d), T))
    rng = np.random.default_rng(SEED)
    sigs = (tauberian.exp_decay(1.0), tauberian.damped_cosine(0.1, 1.0), tauberian.exp_decay(0.3))
    rz1 = rz2 = 0
    for i in range(100):
        sig = sigs[i % len(sigs)]
        T = rng.uniform(0.1, 20)
        rz1 += tauberian.bound_rz1_check(sig, complex(rng.uniform(0.01, 3), rng.uniform(-10, 10)), T)
        rz2 += tauberian.bound_rz2_check(sig, complex(-rng.uniform(0.01, 3), rng.uniform(-10, 10)), T)
    circle = 0.0
    bad = 0
    for R in (1.0, 5.0, 10.0):
        phi = rng.uniform(0, 2 * math.pi, 1000)
        for z in R * np.exp(1j * phi):
            bad += not tauberian.circle_factor_check(z, R)
            circle = max(circle, abs(abs(1 / z + z / R**2) - 2 * abs(z.real) / R**2))
    ok = worst <= 1e-6 and rz1 == 100 and rz2 == 100 and bad == 0
    return ok, f"max contour residual {worst:.1e}; Rz1 {rz1}/100; Rz2 {rz2}/100; circle max {circle:.1e}"


def criterion_pnt_integral():
    series = tauberian.pnt_integral_series(10**8, range(2, 9))
    env = series.envelope
    mono = bool(np.all(np.diff(env) <= 0))
    a, b = tauberian.g0_from_tail(10**8), tauberian.g0_from_phi()
    ok = mono and abs(a - b) <= 1e-2
    return ok, f"envelope nonincreasing {mono} ({env[0]:.3f} -> {env[-1]:.1e}); g(0) {a:.5f} vs {b:.5f}"


def criterion_squeeze():
    grid = asymptotics.log_grid(2.0, 1e9, 400)
    pis = np.array(primes.prime_pi_many(np.floor(grid)), dtype=float)
    th = np.array([primes.chebyshev_theta(x).theta for x in grid[grid <= 1e8]])
    ok1 = bool(np.all(th <= pis[: len(th)] * np.log(grid[: len(th)]) * (1 + 1e-12)))
    big = grid >= 1e5
    r = pis[big] * np.log(grid[big]) / grid[big]
    ok2 = bool(np.all((r >= 0.9) & (r <= 1.2)))
    n = np.unique(np.geomspace(1e5, 5e7, 60).astype(np.int64))
    pn = asymptotics.pn_ratio_series(n).ratios
    ok3 = bool(np.all((pn >= 0.9) & (pn <= 1.2)))
    return ok1 and ok2 and ok3, (f"theta <= pi log x: {ok1}; pi log x/x in [{r.min():.4f}, {r.max():.4f}]; "
                                 f"p_n/(n log n) in [{pn.min():.4f}, {pn.max():.4f}]")


CRITERIA: tuple[tuple[int, str, Callable], ...] = (
    (1, "table", criterion_table),
    (2, "zeros", criterion_zeros),
    (3, "zeta methods", criterion_zeta_methods),
    (4, "residue", criterion_residue),
    (5, "chebyshev", criterion_chebyshev),
    (6, "3-4-1", criterion_three_four_one),
    (7, "laplace identity", criterion_laplace_identity),
    (8, "newman machinery", criterion_newman),
    (9, "pnt integral", criterion_pnt_integral),
    (10, "squeeze", criterion_squeeze),
)


def run_criterion(number: int, **kwargs) -> CriterionResult:
    _, name, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        passed, detail = fn(**kwargs)
    except Exception as exc:  # a crash is a failure with its reason recorded
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0)


def run_all(max_x: int = 10**12, checkpoint_dir=None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for number, _, _ in CRITERIA:
        kwargs = {"max_x": max_x, "checkpoint_dir": checkpoint_dir} if number == 1 else {}
        r = run_criterion(number, **kwargs)
        if echo is not None:
            echo(r.line())
        results.append(r)
    return results
