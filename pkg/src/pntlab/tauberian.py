"""Laplace transforms of bounded signals and the contour machinery behind the
Tauberian step of the prime number theorem.

The signal of interest is f(t) = theta(e^t) e^-t - 1.  Everything that can
be checked against a closed form is checked on a small catalog of signals
whose Laplace transform g is known exactly; the theta signal itself is
handled through the step-exact transform and the convergence demos.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from . import primes as _primes
from .errors import ContourError, CoverageError, DomainError, QuadratureError
from .quadrature import composite_nodes, neville_at_zero
from .zeta import EPS, MARGIN, phi_regular, phi_series

DEFAULT_NODES = 256
_PANEL_ORDER = 32
THETA_SUP = 2.0  # theta(x) <= 3x puts theta(e^t) e^-t - 1 in [-1, 2]


# ---------------------------------------------------------------------------
# theta as a step function of t


@dataclass(frozen=True)
class ThetaStep:
    breakpoints: np.ndarray
    cumulative: np.ndarray
    cutoff: int

    def __post_init__(self):
        if len(self.breakpoints) != len(self.cumulative):
            raise ValueError("breakpoints and cumulative differ in length")
        if len(self.breakpoints) > 1 and not np.all(np.diff(self.breakpoints) > 0):
            raise ValueError("breakpoints must increase")
        if len(self.cumulative) > 1 and not np.all(np.diff(self.cumulative) > 0):
            raise ValueError("theta must increase at each breakpoint")

    @classmethod
    def from_cutoff(cls, cutoff: int) -> "ThetaStep":
        cutoff = int(cutoff)
        if cutoff < 2:
            raise DomainError("cutoff must be >= 2")
        p = _primes.cached_primes(cutoff).astype(float)
        logs = np.log(p)
        cum = _primes.compensated_cumsum(logs)
        logs.flags.writeable = False
        cum.flags.writeable = False
        return cls(logs, cum, cutoff)

    @property
    def t_max(self) -> float:
        return math.log(self.cutoff)

    def _check(self, t):
        if np.any(np.asarray(t) > self.t_max + 1e-12):
            raise CoverageError(f"theta step only covers e^t <= {self.cutoff}")

    def __call__(self, t):
        """theta(e^t)."""
        t = np.asarray(t, dtype=float)
        self._check(t)
        idx = np.searchsorted(self.breakpoints, t, side="right")
        return np.concatenate(([0.0], self.cumulative))[idx]


_step_cache: dict[str, ThetaStep] = {}


def theta_step(cutoff: int) -> ThetaStep:
    """Shared ThetaStep covering at least ``cutoff`` (trimmed copy if larger)."""
    cached = _step_cache.get("step")
    if cached is None or cached.cutoff < cutoff:
        cached = ThetaStep.from_cutoff(max(int(cutoff), 1000))
        _step_cache["step"] = cached
    if cached.cutoff == cutoff:
        return cached
    k = int(np.searchsorted(cached.breakpoints, math.log(cutoff) + 1e-12, side="right"))
    return ThetaStep(cached.breakpoints[:k], cached.cumulative[:k], int(cutoff))


def _interval_transform(c, a, b, s: complex) -> np.ndarray:
    """int_a^b c e^(-s t) dt, elementwise, exact up to rounding."""
    if s == 0:
        return c * (b - a) + 0j
    return c * np.exp(-s * a) * (-np.expm1(-s * (b - a))) / s


def laplace_exact_step(signal: ThetaStep, s, T: float) -> complex:
    """int_0^T theta(e^t) e^(-s t) dt, summed in closed form over constancy intervals."""
    s = complex(s)
    T = float(T)
    if T > signal.t_max + 1e-12:
        raise CoverageError(f"e^T = {math.exp(T):.6g} exceeds the cutoff {signal.cutoff}")
    if T <= 0:
        return 0j
    k = int(np.searchsorted(signal.breakpoints, T, side="left"))
    if k == 0:
        return 0j
    a = signal.breakpoints[:k]
    b = np.append(signal.breakpoints[1:k], T)
    parts = _interval_transform(signal.cumulative[:k], a, b, s)
    return complex(math.fsum(parts.real), math.fsum(parts.imag))


def laplace_step_quadrature(signal: ThetaStep, s, T: float, tol: float = 1e-10) -> complex:
    """Same integral by adaptive quadrature on each constancy interval (oracle)."""
    s = complex(s)
    k = int(np.searchsorted(signal.breakpoints, T, side="left"))
    edges = np.append(signal.breakpoints[:k], T)
    re, im = [], []
    for c, a, b in zip(signal.cumulative[:k], edges[:-1], edges[1:]):
        re.append(integrate.quad(lambda t: c * (np.exp(-s * t)).real, a, b, epsabs=0, epsrel=tol)[0])
        im.append(integrate.quad(lambda t: c * (np.exp(-s * t)).imag, a, b, epsabs=0, epsrel=tol)[0])
    return complex(math.fsum(re), math.fsum(im))


@dataclass(frozen=True)
class ResidualReport:
    residual: float
    bound: float

    @property
    def within(self) -> bool:
        return self.residual <= self.bound


def phi_laplace_identity_residual(s, cutoff: int, max_prime: int = 10**7) -> ResidualReport:
    """|Phi(s)/s - int_0^(log X) theta(e^t) e^(-st) dt| and its bound.

    The neglected range contributes at most int_(log X)^oo 3 e^(t(1-sigma)) dt
    = 3 X^(1-sigma) / (sigma - 1) since theta(x) <= 3x; the error of the
    Phi evaluation is added after division by |s|.
    """
    s = complex(s)
    if s.real <= 1 + MARGIN:
        raise DomainError(f"needs Re s > {1 + MARGIN}")
    cutoff = int(cutoff)
    if cutoff < 10**4:
        raise DomainError("cutoff must be >= 10^4")
    phi = phi_series(s, tol=1e-10, max_prime=max_prime)
    lap = laplace_exact_step(theta_step(cutoff), s, math.log(cutoff))
    residual = abs(phi.value / s - lap)
    sigma = s.real
    bound = 3.0 * cutoff ** (1 - sigma) / (sigma - 1) + phi.err / abs(s) + 8 * EPS * abs(lap)
    return ResidualReport(residual, bound)


# ---------------------------------------------------------------------------
# bounded signals


@dataclass(frozen=True)
class BoundedSignal:
    evaluator: Callable
    sup_norm: float
    description: str
    laplace: Callable | None = None  # g(z), where known
    laplace_T: Callable | None = None  # g_T(z), closed form where known
    poles: tuple = ()
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.sup_norm >= 0:
            raise ValueError("sup_norm must be >= 0")

    def spot_check(self, t_max: float = 50.0, n: int = 10**4) -> bool:
        t = np.linspace(0.0, t_max, n)
        return bool(np.all(np.abs(self.evaluator(t)) <= self.sup_norm * (1 + 1e-12)))


def _expm1_ratio(w, T):
    """(1 - e^(-w T)) / w, equal to T at w = 0."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-300
    safe = np.where(small, 1.0, w)
    return np.where(small, T + 0j, -np.expm1(-safe * T) / safe)


def exp_decay(a: float = 1.0) -> BoundedSignal:
    """f(t) = e^(-a t), g(z) = 1/(z + a)."""
    if a <= 0:
        raise DomainError("a must be positive")
    return BoundedSignal(
        evaluator=lambda t: np.exp(-a * np.asarray(t, dtype=float)),
        sup_norm=1.0,
        description=f"exp_decay(a={a})",
        laplace=lambda z: 1.0 / (np.asarray(z, dtype=complex) + a),
        laplace_T=lambda z, T: _expm1_ratio(np.asarray(z, dtype=complex) + a, T),
        poles=(complex(-a),),
        params={"a": a},
    )


def damped_cosine(a: float = 1.5, b: float = 1.0) -> BoundedSignal:
    """f(t) = cos(b t) e^(-a t), g(z) = (z + a) / ((z + a)^2 + b^2)."""
    if a <= 0:
        raise DomainError("a must be positive")

    def g_T(z, T):
        w = np.asarray(z, dtype=complex) + a
        return 0.5 * (_expm1_ratio(w - 1j * b, T) + _expm1_ratio(w + 1j * b, T))

    return BoundedSignal(
        evaluator=lambda t: np.cos(b * np.asarray(t, dtype=float)) * np.exp(-a * np.asarray(t, dtype=float)),
        sup_norm=1.0,
        description=f"damped_cosine(a={a}, b={b})",
        laplace=lambda z: (np.asarray(z, dtype=complex) + a) / ((np.asarray(z, dtype=complex) + a) ** 2 + b * b),
        laplace_T=g_T,
        poles=(complex(-a, b), complex(-a, -b)),
        params={"a": a, "b": b},
    )


def constant_signal(c: float = 1.0) -> BoundedSignal:
    """f = c, g(z) = c / z with a pole at 0."""
    return BoundedSignal(
        evaluator=lambda t: np.full(np.shape(t), float(c)),
        sup_norm=abs(c),
        description=f"constant(c={c})",
        laplace=lambda z: c / np.asarray(z, dtype=complex),
        laplace_T=lambda z, T: c * _expm1_ratio(z, T),
        poles=(0j,),
        params={"c": c},
    )


def zero_signal() -> BoundedSignal:
    return BoundedSignal(
        evaluator=lambda t: np.zeros(np.shape(t)),
        sup_norm=0.0,
        description="zero",
        laplace=lambda z: np.zeros(np.shape(z), dtype=complex),
        laplace_T=lambda z, T: np.zeros(np.shape(z), dtype=complex),
    )


def step_signal(breaks, values) -> BoundedSignal:
    """f = values[i] on [breaks[i], breaks[i+1]), zero before breaks[0] and after breaks[-1]."""
    breaks = np.asarray(breaks, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(breaks) != len(values) + 1 or len(values) == 0:
        raise DomainError("need len(breaks) == len(values) + 1")
    if breaks[0] < 0 or np.any(np.diff(breaks) <= 0):
        raise DomainError("breaks must be nonnegative and increasing")

    def f(t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(breaks, t, side="right") - 1
        inside = (idx >= 0) & (idx < len(values))
        return np.where(inside, values[np.clip(idx, 0, len(values) - 1)], 0.0)

    def g_T(z, T):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        a = np.minimum(breaks[:-1], T)
        b = np.minimum(breaks[1:], T)
        # int_a^b e^(-z t) dt = e^(-z a) (1 - e^(-z (b-a))) / z
        out = (values[None, :] * np.exp(-z[:, None] * a[None, :])
               * _expm1_ratio(z[:, None], (b - a)[None, :]))
        return out.sum(axis=1)

    def shaped(z, T):
        r = g_T(z, T)
        return r[0] if np.ndim(z) == 0 else r.reshape(np.shape(z))

    return BoundedSignal(
        evaluator=f,
        sup_norm=float(np.max(np.abs(values))),
        description=f"step({len(values)} pieces)",
        laplace=lambda z: shaped(z, float(breaks[-1])),
        laplace_T=shaped,
    )


def theta_signal(cutoff: int = 10**8) -> BoundedSignal:
    """f(t) = theta(e^t) e^-t - 1 on e^t <= cutoff; g known only through Phi."""
    step = theta_step(cutoff)

    def f(t):
        t = np.asarray(t, dtype=float)
        return step(t) * np.exp(-t) - 1.0

    def g_T(z, T):
        z = complex(z)
        return laplace_exact_step(step, 1 + z, T) - complex(_expm1_ratio(z, T))

    return BoundedSignal(
        evaluator=f,
        sup_norm=THETA_SUP,
        description=f"theta(e^t) e^-t - 1, cutoff {cutoff}",
        laplace_T=g_T,
        params={"cutoff": int(cutoff)},
    )


def g_T(signal: BoundedSignal, z, T: float, tol: float = 1e-11) -> complex:
    """int_0^T e^(-z t) f(t) dt: closed form when the signal has one, adaptive quadrature otherwise."""
    if not T > 0:
        raise DomainError("T must be positive")
    z = complex(z)
    if signal.laplace_T is not None:
        return complex(np.asarray(signal.laplace_T(z, T)).reshape(-1)[0])
    return _quad_laplace(signal, z, 0.0, T, tol)


def _quad_laplace(signal: BoundedSignal, z: complex, a: float, b: float, tol: float) -> complex:
    def integrand(t):
        return complex(np.exp(-z * t) * signal.evaluator(np.array([t]))[0])

    with np.errstate(over="raise", invalid="raise"):
        try:
            val, err, info = integrate.quad(integrand, a, b, epsabs=tol, epsrel=0, limit=500,
                                            complex_func=True, full_output=True)
        except FloatingPointError as exc:
            raise QuadratureError(f"overflow integrating {signal.description}") from exc
    if abs(err) > max(tol, 1e3 * EPS * abs(val)) * 10:
        raise QuadratureError(f"quadrature did not converge for {signal.description} at z={z}: err {err:.3e}")
    return complex(val)


def laplace_quadrature(signal: BoundedSignal, z, tol: float = 1e-11) -> complex:
    """g(z) = int_0^oo e^(-z t) f(t) dt by quadrature, Re z > 0."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("the improper Laplace integral needs Re z > 0")
    return _quad_laplace(signal, z, 0.0, np.inf, tol)


def _g(signal: BoundedSignal, z):
    if signal.laplace is None:
        raise DomainError(f"{signal.description} has no closed-form Laplace transform")
    return complex(np.asarray(signal.laplace(complex(z))).reshape(-1)[0])


def _slack(*values) -> float:
    return 8 * EPS * (1.0 + sum(abs(v) for v in values))


def bound_rz1_check(signal: BoundedSignal, z, T: float) -> bool:
    """|g(z) - g_T(z)| <= ||f|| e^(-T Re z) / Re z for Re z > 0."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("needs Re z > 0")
    g, gT = _g(signal, z), g_T(signal, z, T)
    return abs(g - gT) <= signal.sup_norm * math.exp(-T * z.real) / z.real + _slack(g, gT)


def bound_rz2_check(signal: BoundedSignal, z, T: float) -> bool:
    """|g_T(z)| <= ||f|| e^(-T Re z) / |Re z| for Re z < 0."""
    z = complex(z)
    if z.real >= 0:
        raise DomainError("needs Re z < 0")
    gT = g_T(signal, z, T)
    return abs(gT) <= signal.sup_norm * math.exp(-T * z.real) / abs(z.real) + _slack(gT)


def circle_factor_check(z, R: float) -> bool:
    """|1/z + z/R^2| = 2|Re z| / R^2 for |z| = R, to 1e-10."""
    z = complex(z)
    if R <= 0:
        raise DomainError("R must be positive")
    if abs(abs(z) - R) > 1e-12 * max(1.0, R):
        raise DomainError("z must lie on the circle |z| = R")
    return abs(abs(1 / z + z / R**2) - 2 * abs(z.real) / R**2) <= 1e-10


# ---------------------------------------------------------------------------
# the contour C_R


@dataclass(frozen=True)
class ContourSpec:
    R: float
    delta: float
    n_points: int = DEFAULT_NODES

    def __post_init__(self):
        if not 0 < self.delta < self.R:
            raise ValueError("need 0 < delta < R")
        if self.n_points < 64:
            raise ValueError("n_points must be >= 64")

    @property
    def phi0(self) -> float:
        """Argument of the upper corner where the circle meets Re z = -delta."""
        return math.acos(-self.delta / self.R)

    def contains(self, z, pad: float = 1e-9) -> bool:
        """True when z lies on or inside C_R."""
        z = complex(z)
        return abs(z) <= self.R + pad and z.real >= -self.delta - pad

    def _arc(self, lo: float, hi: float):
        panels = max(1, self.n_points // _PANEL_ORDER)
        phi, w = composite_nodes(lo, hi, panels, _PANEL_ORDER)
        z = self.R * np.exp(1j * phi)
        return z, w * 1j * z

    def pieces(self):
        """(name, nodes, weights*dz) for the pieces of C_R, counterclockwise.

        ``plus`` is the arc in Re z >= 0; ``minus`` is the rest of the arc
        together with the segment on Re z = -delta.
        """
        p0 = self.phi0
        y = self.R * math.sin(p0)
        top = complex(-self.delta, y)
        panels = max(1, self.n_points // _PANEL_ORDER)
        seg_z, seg_w = composite_nodes(top, top.conjugate(), panels, _PANEL_ORDER)
        upper_z, upper_w = self._arc(math.pi / 2, p0)
        lower_z, lower_w = self._arc(-p0, -math.pi / 2)
        plus_z, plus_w = self._arc(-math.pi / 2, math.pi / 2)
        minus_z = np.concatenate((upper_z, seg_z, lower_z))
        minus_w = np.concatenate((upper_w, seg_w, lower_w))
        return [("plus", plus_z, plus_w), ("minus", minus_z, minus_w)]


def _newman_integrand(signal: BoundedSignal, z: np.ndarray, T: float, R: float) -> np.ndarray:
    gT = np.asarray(signal.laplace_T(z, T), dtype=complex)
    g = np.asarray(signal.laplace(z), dtype=complex)
    return (gT - g) * np.exp(z * T) * (1 + z * z / R**2) / z


def newman_contour_parts(signal: BoundedSignal, spec: ContourSpec, T: float) -> dict:
    """(1/2 pi i) times the integral of (g_T - g) e^(zT) (1 + z^2/R^2) / z over C_R^+ and C_R^-."""
    if signal.laplace is None or signal.laplace_T is None:
        raise ContourError(f"{signal.description} lacks a closed-form g or g_T")
    for p in signal.poles:
        if spec.contains(p):
            raise ContourError(f"g has a pole at {p} on or inside C_R (R={spec.R}, delta={spec.delta})")
    out = {}
    for name, z, w in spec.pieces():
        vals = _newman_integrand(signal, z, T, spec.R) * w
        out[name] = complex(math.fsum(vals.real), math.fsum(vals.imag)) / (2j * math.pi)
    return out


def newman_contour_residual(signal: BoundedSignal, spec: ContourSpec, T: float) -> float:
    """|(g_T(0) - g(0)) - contour integral| for a catalog signal."""
    parts = newman_contour_parts(signal, spec, T)
    lhs = g_T(signal, 0.0, T) - _g(signal, 0.0)
    return abs(lhs - (parts["plus"] + parts["minus"]))


def cauchy_square_residual(func: Callable, center, half_width: float, order: int = 16) -> float:
    """|contour integral of func around the square of the given center and half width|."""
    c = complex(center)
    h = float(half_width)
    corners = [c + h * (1 - 1j), c + h * (1 + 1j), c + h * (-1 + 1j), c + h * (-1 - 1j)]
    total = 0j
    for a, b in zip(corners, corners[1:] + corners[:1]):
        z, w = composite_nodes(a, b, 1, order)
        total += sum(complex(func(zi)) * wi for zi, wi in zip(z, w))
    return abs(total)


# ---------------------------------------------------------------------------
# convergence of int_0^T f and of the PNT integral


@dataclass(frozen=True)
class ConvergenceSeries:
    grid: np.ndarray
    abs_error: np.ndarray
    header: tuple[str, str] = ("T", "abs_error")

    @property
    def envelope(self) -> np.ndarray:
        """Suffix maxima: envelope[i] = max(abs_error[i:])."""
        return np.maximum.accumulate(self.abs_error[::-1])[::-1]

    def envelope_decreasing(self) -> bool:
        """Envelope nonincreasing and ending strictly below where it starts."""
        env = self.envelope
        return bool(np.all(np.diff(env) <= 0) and env[-1] < env[0])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for x, e in zip(self.grid, self.abs_error):
            writer.writerow([repr(float(x)), repr(float(e))])
        return buf.getvalue()


def newman_convergence_demo(signal: BoundedSignal, T_grid, g0: complex | None = None) -> ConvergenceSeries:
    """|g_T(0) - g(0)| over T_grid."""
    T_grid = np.asarray(T_grid, dtype=float)
    if g0 is None:
        g0 = _g(signal, 0.0)
    errs = np.array([abs(g_T(signal, 0.0, T) - g0) for T in T_grid])
    return ConvergenceSeries(T_grid, errs)


def theta_integral(a: float, b: float, cutoff: int | None = None) -> float:
    """int_a^b (theta(t) - t) / t^2 dt, exact over prime gaps.

    Over a gap where theta equals c the integrand contributes
    c (1/u - 1/v) - log(v/u); summing by primes gives
    sum_{p <= b} log p (1/max(p, a) - 1/b) - log(b/a).
    """
    a, b = float(a), float(b)
    if not 1 <= a <= b:
        raise DomainError("need 1 <= a <= b")
    if cutoff is not None and b > cutoff:
        raise CoverageError(f"b={b} exceeds the cutoff {cutoff}")
    p = _primes.cached_primes(int(math.floor(b))).astype(float)
    terms = np.log(p) * (1.0 / np.maximum(p, a) - 1.0 / b)
    return math.fsum(terms) - math.log(b / a)


def pnt_integral_tail(x: float, cutoff: float = 10**8) -> float:
    """I(x) = int_x^oo (theta(t) - t) / t^2 dt.

    The range [x, X] is exact; beyond X = cutoff the tail is modelled as
    c / t fitted on [X/100, X], giving I(X) = J(X/100, X) / 99.
    """
    x = float(x)
    X = float(cutoff)
    if x < 1:
        raise DomainError("x must be >= 1")
    if x > X:
        raise CoverageError(f"x={x} exceeds the cutoff {X}")
    return theta_integral(x, X) + theta_integral(X / 100, X) / 99


def pnt_integral_series(cutoff: float = 10**8, k_range=range(2, 9)) -> ConvergenceSeries:
    """|I(10^k)| for k in k_range, CSV header x,I(x)."""
    xs = np.array([10.0**k for k in k_range])
    vals = np.array([pnt_integral_tail(x, cutoff) for x in xs])
    return ConvergenceSeries(xs, np.abs(vals), header=("x", "I(x)"))


def g0_from_tail(cutoff: float = 10**8) -> float:
    """g(0) = int_1^oo (theta(x) - x)/x^2 dx via pnt_integral_tail(1)."""
    return pnt_integral_tail(1.0, cutoff)


def g0_from_phi(ks=(2, 3, 4, 5)) -> float:
    """lim_{s -> 1+} Phi(s)/s - 1/(s-1), Neville-extrapolated from s = 1 + 10^-k.

    Phi(s)/s - 1/(s-1) = (Phi(s) - 1/(s-1) - 1) / s, evaluated with the
    pole removed analytically.
    """
    hs = [10.0 ** (-k) for k in ks]
    vals = [(phi_regular(1 + h).value - 1) / (1 + h) for h in hs]
    return float(neville_at_zero(hs, vals).real)


def theta_signal_integral(T: float, cutoff: int | None = None) -> float:
    """int_0^T (theta(e^t) e^-t - 1) dt from the step-exact transform."""
    cutoff = cutoff or int(math.ceil(math.exp(T) - 1e-9))
    step = theta_step(cutoff)
    return (laplace_exact_step(step, 1.0, T) - T).real
