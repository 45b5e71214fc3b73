"""Riemann zeta, its continuation to Re s > 0, Euler products, log zeta and Phi.

Every evaluator returns an :class:`EvalResult` carrying an absolute error
bound.  Three independent routes to zeta are provided:

* ``zeta_direct``: the Dirichlet series, Re s > 1.
* ``zeta_floor_integral``: 1/(s-1) + 1 - s * int_1^oo (x - floor x) x^(-s-1) dx,
  integrated interval by interval with Gauss-Legendre on [1, N] and an
  Euler-Maclaurin expansion for [N, oo).
* ``zeta_eta_oracle``: the alternating series accelerated with Borwein's
  Chebyshev weights, divided by 1 - 2^(1-s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, loggamma

from . import primes as _primes
from .errors import DomainError, PoleError, ResourceLimitError
from .quadrature import gauss_legendre

MARGIN = 0.05
ZERO_GUARD = 1e-3
EPS = float(np.finfo(float).eps)

METHODS = (
    "direct_series",
    "floor_integral",
    "eta_series",
    "euler_product",
    "log_series",
    "log_derivative",
    "phi_series",
    "phi_continued",
)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err: float
    method: str

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ArithmeticError(f"{self.method}: non-finite value {v}")
        if not (self.err >= 0 and math.isfinite(self.err)):
            raise ArithmeticError(f"{self.method}: bad error bound {self.err}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "err", float(self.err))

    def as_dict(self, s: complex) -> dict:
        s = complex(s)
        return {
            "schema": 1,
            "s_re": s.real,
            "s_im": s.imag,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "err": self.err,
            "method": self.method,
        }


@dataclass(frozen=True)
class LogCoefficient:
    n: int
    c: Fraction


def _complex(s) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite argument {s}")
    return s


def _fsum_complex(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


# ---------------------------------------------------------------------------
# direct series

DIRECT_MAX_TERMS = 10**8
_CHUNK = 1 << 20


def zeta_direct(s, tol: float = 1e-12, margin: float = MARGIN) -> EvalResult:
    """sum_{n<=N} n^-s plus the midpoint tail (N + 1/2)^(1-s) / (s - 1).

    The midpoint rule on each cell [n - 1/2, n + 1/2] is off by at most
    |f''| / 24, which sums to |s (s+1)| (N - 1/2)^(-sigma-1) / (24 (sigma+1))
    over n > N; N is the smallest integer making that at most tol / 2.
    """
    s = _complex(s)
    sigma = s.real
    if sigma <= 1:
        raise DomainError("the Dirichlet series needs Re s > 1; use zeta_floor_integral or zeta_eta_oracle")
    if sigma < 1 + margin:
        raise DomainError(f"Re s must be >= 1 + {margin} for the direct series")
    c = abs(s * (s + 1)) / (24.0 * (sigma + 1))
    N = max(8, math.ceil((2.0 * c / tol) ** (1.0 / (sigma + 1)) + 0.5))
    if N > DIRECT_MAX_TERMS:
        raise ResourceLimitError(f"direct series would need {N} terms (cap {DIRECT_MAX_TERMS})")
    re_parts, im_parts, abs_total = [], [], 0.0
    for lo in range(1, N + 1, _CHUNK):
        n = np.arange(lo, min(lo + _CHUNK, N + 1), dtype=float)
        terms = np.exp(-s * np.log(n))
        re_parts.append(math.fsum(terms.real))
        im_parts.append(math.fsum(terms.imag))
        abs_total += float(np.abs(terms).sum())
    tail = (N + 0.5) ** (1 - s) / (s - 1)
    value = complex(math.fsum(re_parts), math.fsum(im_parts)) + tail
    tail_err = c * (N - 0.5) ** (-sigma - 1)
    round_err = 4 * EPS * (abs_total + abs(tail)) * (1 + abs(s) * 1e-3)
    return EvalResult(value, tail_err + round_err, "direct_series")


# ---------------------------------------------------------------------------
# floor-integral continuation

_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510)]
EM_TERMS = len(_BERNOULLI)
# B_2k / (2k)!
_EM_COEF = [float(b / math.factorial(2 * k)) for k, b in enumerate(_BERNOULLI, start=1)]
GAUSS_ORDER = 16
_CHECK_ORDER = 10
_PANEL_PHASE = 1.0
_MAX_FLOOR_N = 10**6


def _rising(z: np.ndarray, j: int) -> np.ndarray:
    out = np.ones_like(z)
    for i in range(j):
        out = out * (z + i)
    return out


def _em_tail_bound(s: np.ndarray, N: int) -> np.ndarray:
    """Bound on |s| * |remainder| of the Euler-Maclaurin tail after EM_TERMS terms."""
    m = EM_TERMS
    sigma = s.real
    return (np.abs(s) * np.abs(_rising(s + 1, 2 * m - 1)) * abs(_EM_COEF[-1])
            * float(N) ** (-sigma - 2 * m + 1) / (sigma + 2 * m - 1))


def _em_tail(s: np.ndarray, N: int) -> np.ndarray:
    """s * int_N^oo (x - floor x) x^(-s-1) dx without the remainder term.

    Repeated integration by parts against the periodic Bernoulli functions
    gives N^-s / 2 - s * sum_k B_2k/(2k)! (s+1)_(2k-2) N^(-s-2k+1).
    """
    logN = math.log(N)
    total = 0.5 * np.exp(-s * logN)
    for k in range(1, EM_TERMS + 1):
        total = total - s * _EM_COEF[k - 1] * _rising(s + 1, 2 * k - 2) * np.exp((-s - 2 * k + 1) * logN)
    return total


def _choose_floor_N(s: np.ndarray, tol: float) -> int:
    lo, hi = 2, 4
    while np.max(_em_tail_bound(s, hi)) > tol / 2:
        lo, hi = hi, hi * 2
        if hi > _MAX_FLOOR_N:
            raise ResourceLimitError("floor-integral truncation point out of range")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if np.max(_em_tail_bound(s, mid)) > tol / 2:
            lo = mid
        else:
            hi = mid
    return hi


def _panel_layout(N: int, kappa: float, scale: float):
    """Left edges, widths and owning integer of the panels covering [1, N]."""
    n = np.arange(1, N, dtype=float)
    per = np.maximum(1, np.ceil(kappa * np.log1p(1.0 / n) / (_PANEL_PHASE * scale))).astype(np.int64)
    owner = np.repeat(n, per)
    counts = np.repeat(per, per)
    start = np.cumsum(per) - per
    local = np.arange(len(owner)) - np.repeat(start, per)
    width = 1.0 / counts
    return owner + local * width, width, owner


def _gauss_panels(left, width, owner, order):
    xi, wi = gauss_legendre(order)
    x = left[:, None] + width[:, None] * (0.5 * (xi[None, :] + 1.0))
    w = 0.5 * width[:, None] * wi[None, :]
    return x, w, x - owner[:, None]


def _floor_integral_quad(s: np.ndarray, N: int, scale: float):
    """Per-panel Gauss sums of (x - n) x^(-s-1) on [1, N] for each s.

    Returns (integral, panel-difference estimate, sum |w f|), each shape (len(s),).
    """
    if N <= 1:
        z = np.zeros(len(s))
        return z.astype(complex), z, z
    kappa = float(np.max(np.abs(s + 1)))
    left, width, owner = _panel_layout(N, kappa, scale)
    x16, w16, frac16 = _gauss_panels(left, width, owner, GAUSS_ORDER)
    x10, w10, frac10 = _gauss_panels(left, width, owner, _CHECK_ORDER)
    lx16, lx10 = np.log(x16), np.log(x10)
    out = np.empty(len(s), dtype=complex)
    est = np.empty(len(s))
    mag = np.empty(len(s))
    for i, si in enumerate(s):
        f16 = frac16 * np.exp(-(si + 1) * lx16) * w16
        f10 = frac10 * np.exp(-(si + 1) * lx10) * w10
        p16 = f16.sum(axis=1)
        p10 = f10.sum(axis=1)
        out[i] = _fsum_complex(p16)
        est[i] = float(np.abs(p16 - p10).sum())
        mag[i] = float(np.abs(f16).sum())
    return out, est, mag


def floor_regular_part(s, tol: float = 1e-13):
    """F(s) = 1 - s * int_1^oo (x - floor x) x^(-s-1) dx, so zeta(s) = 1/(s-1) + F(s).

    Accepts a scalar or an array of points with Re s > 0; returns
    ``(F, err)`` with matching shape.
    """
    scalar = np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s.real <= 0):
        raise DomainError("the floor-integral continuation needs Re s > 0")
    N = _choose_floor_N(s, tol)
    tail = _em_tail(s, N)
    tail_err = _em_tail_bound(s, N)
    scale = 1.0
    for _ in range(6):
        quad, est, mag = _floor_integral_quad(s, N, scale)
        if np.all(np.abs(s) * est <= tol / 2):
            break
        scale /= 2
    F = 1.0 - s * quad - tail
    err = tail_err + np.abs(s) * est + 8 * EPS * (1.0 + np.abs(s) * mag + np.abs(tail))
    if scalar:
        return complex(F[0]), float(err[0])
    return F, err


def zeta_floor_integral(s, tol: float = 1e-12) -> EvalResult:
    """zeta(s) on Re s > 0, s != 1, from the floor-function integral."""
    s = _complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real <= 0:
        raise DomainError("the floor-integral continuation needs Re s > 0")
    F, err = floor_regular_part(s, tol)
    pole = 1.0 / (s - 1)
    return EvalResult(pole + F, err + EPS * abs(pole), "floor_integral")


def zeta_floor_many(s, tol: float = 1e-10, batch: int = 32):
    """Vectorized floor-integral zeta for many points (scans); returns (values, errs)."""
    s = np.asarray(s, dtype=complex).ravel()
    if np.any(s == 1):
        raise PoleError("zeta has a pole at s = 1")
    vals = np.empty(len(s), dtype=complex)
    errs = np.empty(len(s))
    order = np.argsort(np.abs(s.imag))
    for lo in range(0, len(s), batch):
        idx = order[lo : lo + batch]
        F, e = floor_regular_part(s[idx], tol)
        vals[idx] = 1.0 / (s[idx] - 1) + F
        errs[idx] = e
    return vals, errs


# ---------------------------------------------------------------------------
# eta-series oracle

_RHO = 3.0 + math.sqrt(8.0)
_MAX_BORWEIN_N = 2000


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    """Signed weights (-1)^k (1 - d_k / d_n), k = 0..n-1, computed exactly then rounded."""
    term = Fraction(1)  # i = 0 term of d_k / n ... scaled so d_k = n * sum
    partial = [term]
    for i in range(1, n + 1):
        term = term * Fraction(4 * (n + i - 1) * (n - i + 1), (2 * i) * (2 * i - 1))
        partial.append(partial[-1] + term)
    dn = partial[n]
    w = np.array([float((dn - partial[k]) / dn) for k in range(n)])
    w[1::2] *= -1
    w.flags.writeable = False
    return w


def _eta_terms_needed(s: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    sigma = s.real
    denom = np.abs(np.expm1((1 - s) * math.log(2)))
    log_gamma_ratio = gammaln(sigma) - loggamma(s).real
    # 3 Gamma(sigma) / (|Gamma(s)| |1 - 2^(1-s)| rho^n) <= tol / 2
    need = (np.log(6.0 / tol) + log_gamma_ratio - np.log(denom)) / math.log(_RHO)
    n = int(max(8, math.ceil(float(np.max(need)))))
    if n > _MAX_BORWEIN_N:
        raise ResourceLimitError(f"eta oracle would need {n} terms")
    bound = 3.0 * np.exp(log_gamma_ratio - n * math.log(_RHO)) / denom
    return n, bound


def zeta_eta_many(s, tol: float = 1e-12):
    """Vectorized eta-series zeta; returns (values, errs)."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s.real <= 0):
        raise DomainError("the eta oracle needs Re s > 0")
    denom = -np.expm1((1 - s) * math.log(2))
    if np.any(np.abs(denom) < 1e-12):
        raise DomainError("1 - 2^(1-s) vanishes: s = 1 + 2 pi i k / log 2")
    n, bound = _eta_terms_needed(s, tol)
    w = _borwein_weights(n)
    logk = np.log(np.arange(1, n + 1, dtype=float))
    terms = w[None, :] * np.exp(-s[:, None] * logk[None, :])
    eta = terms.sum(axis=1)
    vals = eta / denom
    abs_sum = np.abs(terms).sum(axis=1)
    errs = bound + EPS * (n + 8) * abs_sum / np.abs(denom) + 4 * EPS * np.abs(vals)
    return vals, errs


def zeta_eta_oracle(s, tol: float = 1e-12) -> EvalResult:
    """zeta(s) = eta(s) / (1 - 2^(1-s)) with eta summed by Borwein's method.

    The truncation bound used is 3 Gamma(sigma) / (|Gamma(s)| |1 - 2^(1-s)| (3 + sqrt 8)^n).
    """
    s = _complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    vals, errs = zeta_eta_many(np.array([s]), tol)
    return EvalResult(complex(vals[0]), float(errs[0]), "eta_series")


def zeta(s, tol: float = 1e-12) -> EvalResult:
    """Best available evaluator: direct series for Re s >= 1 + MARGIN, else the floor integral."""
    s = _complex(s)
    if s.real >= 1 + MARGIN:
        return zeta_direct(s, tol)
    return zeta_floor_integral(s, tol)


# ---------------------------------------------------------------------------
# Euler product


def _check_half_plane(s: complex, margin: float = 0.0):
    if s.real <= 1:
        raise DomainError("Re s must exceed 1")
    if s.real < 1 + margin:
        raise DomainError(f"Re s must be >= 1 + {margin}")


def _log_factor_sum(s: complex, primes: np.ndarray) -> complex:
    """sum over the given primes of Log(1 / (1 - p^-s)), principal branch per factor."""
    total_re, total_im = [], []
    for lo in range(0, len(primes), _CHUNK):
        p = primes[lo : lo + _CHUNK].astype(float)
        terms = -np.log1p(-np.exp(-s * np.log(p)))
        total_re.append(math.fsum(terms.real))
        total_im.append(math.fsum(terms.imag))
    return complex(math.fsum(total_re), math.fsum(total_im))


def euler_product_partial(s, N: int) -> EvalResult:
    """prod_{p <= N} (1 - p^-s)^-1 with err = sum_{n > N} n^-sigma <= N^(1-sigma) / (sigma - 1)."""
    s = _complex(s)
    _check_half_plane(s)
    N = int(N)
    if N < 2:
        raise DomainError("N must be >= 2")
    primes = _primes.cached_primes(N)
    value = np.exp(_log_factor_sum(s, primes))
    tail = N ** (1 - s.real) / (s.real - 1)
    return EvalResult(complex(value), tail + 4 * EPS * len(primes) * abs(value), "euler_product")


def reciprocal_product_check(s, N: int) -> float:
    """|zeta(s) prod_{p <= N} (1 - p^-s) - 1|."""
    s = _complex(s)
    _check_half_plane(s)
    z = zeta_direct(s, 1e-15, margin=0.0).value if s.real >= 1 + MARGIN else zeta_floor_integral(s, 1e-14).value
    prod = np.exp(-_log_factor_sum(s, _primes.cached_primes(int(N))))
    return abs(z * prod - 1)


# ---------------------------------------------------------------------------
# log zeta


def log_coefficients(limit: int) -> list[LogCoefficient]:
    """c_n for 1 <= n <= limit: 1/k when n = p^k, 0 otherwise (exact rationals)."""
    limit = int(limit)
    if limit < 1:
        raise DomainError("limit must be >= 1")
    k_of = [0] * (limit + 1)
    for p in _primes.sieve_primes(limit):
        q, k = p, 1
        while q <= limit:
            k_of[q] = k
            q *= p
            k += 1
    return [LogCoefficient(n, Fraction(1, k_of[n]) if k_of[n] else Fraction(0)) for n in range(1, limit + 1)]


def _prime_cutoff(tail_bound, tol: float, max_prime: int) -> int:
    """Smallest power-of-two-ish P <= max_prime with tail_bound(P) <= tol, else max_prime."""
    P = 128
    while P < max_prime and tail_bound(P) > tol:
        P *= 2
    return min(P, max_prime)


def log_zeta_series(s, tol: float = 1e-10, max_prime: int = 10**7) -> EvalResult:
    """log zeta(s) = sum_p Log(1 / (1 - p^-s)) = sum_n c_n n^-s, Re s > 1 + margin.

    The branch is the one fixed by the prime sum (real for real s).  Each
    tail factor obeys |Log(1/(1-z))| <= |z| / (1 - |z|), and the prime sum
    of p^-sigma is bounded through theta(x) < THETA_UPPER x.  When ``max_prime`` is too
    small to reach ``tol`` the returned ``err`` exceeds it.
    """
    s = _complex(s)
    _check_half_plane(s, MARGIN)
    sigma = s.real

    def bound(P):
        return _prime_tail(P, sigma) / (math.log(P) * (1 - P ** (-sigma)))

    P = _prime_cutoff(bound, tol, max_prime)
    primes = _primes.cached_primes(P)
    value = _log_factor_sum(s, primes)
    return EvalResult(value, bound(P) + 4 * EPS * len(primes), "log_series")


def log_abs_zeta(sigma: float, t: float, tol: float = 1e-8, max_prime: int = 10**7) -> float:
    """sum_n c_n cos(t log n) / n^sigma, which equals log |zeta(sigma + it)|."""
    return log_zeta_series(complex(sigma, t), tol, max_prime).value.real


def three_four_one(sigma: float, t: float, tol: float = 1e-12) -> float:
    """3 log|zeta(sigma)| + 4 log|zeta(sigma+it)| + log|zeta(sigma+2it)|, sigma > 1."""
    if sigma <= 1:
        raise DomainError("sigma must exceed 1")
    vals, _ = zeta_floor_many(np.array([sigma, complex(sigma, t), complex(sigma, 2 * t)]), tol)
    a = np.log(np.abs(vals))
    return float(3 * a[0] + 4 * a[1] + a[2])


def three_four_one_grid(sigmas, ts, tol: float = 1e-10) -> np.ndarray:
    """three_four_one on a sigma x t grid, shape (len(sigmas), len(ts))."""
    sigmas = np.asarray(sigmas, dtype=float)
    ts = np.asarray(ts, dtype=float)
    out = np.empty((len(sigmas), len(ts)))
    for i, sg in enumerate(sigmas):
        pts = np.concatenate(([sg + 0j], sg + 1j * ts, sg + 2j * ts))
        vals, _ = zeta_floor_many(pts, tol)
        a = np.log(np.abs(vals))
        out[i] = 3 * a[0] + 4 * a[1 : 1 + len(ts)] + a[1 + len(ts) :]
    return out


def log_tail_bound_check(z) -> bool:
    """Check |Log(1 / (1 - z))| <= 2|z| for |z| < 1/2."""
    z = _complex(z)
    if abs(z) >= 0.5:
        raise DomainError("needs |z| < 1/2")
    lhs = abs(-np.log1p(-z))
    return bool(lhs <= 2 * abs(z) * (1 + 4 * EPS))


# ---------------------------------------------------------------------------
# Phi and -zeta'/zeta


THETA_UPPER = 1.01624  # theta(x) < 1.01624 x for all x > 0


def _prime_tail(P: float, sigma: float) -> float:
    """Bound on sum_{p>P} log p / p^sigma for sigma > 1.

    Partial summation against theta: the boundary term is negative, leaving
    int_P^oo theta(x) sigma x^(-sigma-1) dx < THETA_UPPER sigma P^(1-sigma) / (sigma-1).
    """
    return THETA_UPPER * sigma * P ** (1 - sigma) / (sigma - 1)


def _prime_power_sum(s: complex, primes: np.ndarray, kind: str) -> complex:
    re, im = [], []
    for lo in range(0, len(primes), _CHUNK):
        p = primes[lo : lo + _CHUNK].astype(float)
        lp = np.log(p)
        ps = np.exp(-s * lp)  # p^-s
        if kind == "phi":
            terms = lp * ps
        elif kind == "logderiv":
            terms = lp * ps / (1 - ps)  # log p / (p^s - 1)
        else:  # log p / (p^s (p^s - 1))
            terms = lp * ps * ps / (1 - ps)
        re.append(math.fsum(terms.real))
        im.append(math.fsum(terms.imag))
    return complex(math.fsum(re), math.fsum(im))


def phi_series(s, tol: float = 1e-8, max_prime: int = 10**8) -> EvalResult:
    """Phi(s) = sum_p log p / p^s for Re s > 1 + margin, prime tail bound in err."""
    s = _complex(s)
    _check_half_plane(s, MARGIN)
    sigma = s.real
    P = _prime_cutoff(lambda P: _prime_tail(P, sigma), tol, max_prime)
    primes = _primes.cached_primes(P)
    value = _prime_power_sum(s, primes, "phi")
    err = _prime_tail(P, sigma) + 4 * EPS * len(primes) * math.log(max(P, 2))
    return EvalResult(value, err, "phi_series")


def zeta_log_derivative(s, tol: float = 1e-8, max_prime: int = 10**8) -> EvalResult:
    """-zeta'(s)/zeta(s) = sum_p log p / (p^s - 1), Re s > 1 + margin."""
    s = _complex(s)
    _check_half_plane(s, MARGIN)
    sigma = s.real

    def bound(P):
        return _prime_tail(P, sigma) / (1 - P ** (-sigma))

    P = _prime_cutoff(bound, tol, max_prime)
    primes = _primes.cached_primes(P)
    value = _prime_power_sum(s, primes, "logderiv")
    return EvalResult(value, bound(P) + 4 * EPS * len(primes) * math.log(max(P, 2)), "log_derivative")


def prime_correction(s, tol: float = 1e-10, max_prime: int = 10**7) -> tuple[complex, float]:
    """sum_p log p / (p^s (p^s - 1)), convergent for Re s > 1/2; returns (value, err)."""
    s = _complex(s)
    sigma = s.real
    if sigma <= 0.5:
        raise DomainError("the prime correction converges only for Re s > 1/2")

    def bound(P):
        return _prime_tail(P, 2 * sigma) / (1 - P ** (-sigma))

    P = _prime_cutoff(bound, tol, max_prime)
    primes = _primes.cached_primes(P)
    value = _prime_power_sum(s, primes, "correction")
    return value, bound(P) + 4 * EPS * len(primes)


RICHARDSON_H = 1e-3


def _regular_derivative(s: complex, tol: float):
    """F'(s) for the floor-integral regular part, central differences + Richardson.

    Steps h, h/2, h/4 give two extrapolants; their difference bounds the
    error of the finer one.
    """
    h = RICHARDSON_H
    steps = [h, h / 2, h / 4]
    pts = np.array([s + d for d in steps] + [s - d for d in steps])
    F, e = floor_regular_part(pts, tol)
    D = [(F[i] - F[i + 3]) / (2 * steps[i]) for i in range(3)]
    R1 = (4 * D[1] - D[0]) / 3
    R2 = (4 * D[2] - D[1]) / 3
    noise = float(np.max(e)) / steps[2]
    return complex(R2), abs(R2 - R1) + 2 * noise


def phi_regular(s, tol: float = 1e-9, max_prime: int = 10**7) -> EvalResult:
    """Phi(s) - 1/(s-1) on Re s > 1/2 + margin, away from zeros of zeta.

    With zeta(s) = Z(s)/(s-1), Z(s) = 1 + (s-1) F(s), this is
    -Z'(s)/Z(s) - sum_p log p / (p^s (p^s - 1)); analytic at s = 1.
    """
    s = _complex(s)
    if s.real <= 0.5 + MARGIN:
        raise DomainError(f"Phi continuation needs Re s > {0.5 + MARGIN}")
    F, errF = floor_regular_part(s, min(tol, 1e-13))
    dF, errdF = _regular_derivative(s, min(tol, 1e-13))
    u = s - 1
    Z = 1 + u * F
    dZ = F + u * dF
    if abs(dZ) > 0 and abs(Z / dZ) < ZERO_GUARD:
        raise DomainError(f"s={s} lies within {ZERO_GUARD} of a zero of zeta (pole of Phi)")
    errZ = abs(u) * errF
    errdZ = errF + abs(u) * errdF
    main = -dZ / Z
    main_err = errdZ / abs(Z) + abs(dZ) * errZ / abs(Z) ** 2
    corr, corr_err = prime_correction(s, tol / 2, max_prime)
    return EvalResult(main - corr, main_err + corr_err, "phi_continued")


def phi_continued(s, tol: float = 1e-9, max_prime: int = 10**7) -> EvalResult:
    """Phi(s) = -zeta'/zeta - sum_p log p / (p^s (p^s - 1)) continued to Re s > 1/2 + margin."""
    s = _complex(s)
    if s == 1:
        raise PoleError("Phi has a pole at s = 1")
    reg = phi_regular(s, tol, max_prime)
    pole = 1 / (s - 1)
    return EvalResult(reg.value + pole, reg.err + EPS * abs(pole), "phi_continued")
