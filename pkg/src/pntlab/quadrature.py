"""Quadrature rules used across the package."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def composite_nodes(a, b, panels: int, order: int = 16):
    """Nodes/weights of a composite Gauss rule with equal panels on [a, b].

    ``a`` and ``b`` may be complex (straight segment in the plane); the
    weights then carry the complex ``dz``.
    """
    xi, wi = gauss_legendre(order)
    edges = a + (b - a) * np.arange(panels + 1) / panels
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    w = (half[:, None] * wi[None, :]).ravel()
    return x, w


def adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 60):
    """Adaptive Simpson quadrature with Richardson correction.

    Returns ``(value, err_estimate)``; the estimate is the sum over accepted
    panels of ``|S_fine - S_coarse| / 15``.  Partial results are combined
    with ``math.fsum``.
    """
    if a == b:
        return 0.0, 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    values: list[float] = []
    errors: list[float] = []
    while stack:
        lo, hi, flo, fmid, fhi, coarse, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - coarse
        if abs(delta) <= 15.0 * eps or depth >= max_depth:
            if depth >= max_depth and abs(delta) > 15.0 * eps:
                raise QuadratureError(f"adaptive Simpson hit depth {max_depth} on [{lo}, {hi}]")
            values.extend((left, right, delta / 15.0))
            errors.append(abs(delta) / 15.0)
            continue
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
    return math.fsum(values), math.fsum(errors)


def neville_at_zero(h, values) -> complex:
    """Value at h = 0 of the interpolating polynomial through ``(h_i, values_i)``."""
    h = [complex(v) for v in h]
    p = [complex(v) for v in values]
    n = len(p)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i])
    return p[0]
