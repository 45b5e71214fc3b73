import cmath
import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from pntlab import tauberian as tb
from pntlab.errors import ContourError, CoverageError, DomainError


@pytest.fixture(scope="module")
def step6():
    return tb.theta_step(10**6)


# theta step and exact Laplace ---------------------------------------------------------


def test_theta_step_invariants(step6):
    assert np.all(np.diff(step6.cumulative) > 0)
    p = np.array(list(sympy.primerange(2, 200)), dtype=float)
    assert np.allclose(np.diff(step6.cumulative[: len(p)]), np.log(p[1:]), rtol=0, atol=1e-12)
    assert step6(math.log(10.5)) == pytest.approx(math.log(210), abs=1e-13)
    assert step6(math.log(1.9)) == 0
    with pytest.raises(CoverageError):
        step6(math.log(2e6))


def test_laplace_step_examples(step6):
    assert tb.laplace_exact_step(step6, 2.0, math.log(1.9)) == 0
    assert tb.laplace_exact_step(step6, 0, math.log(3)).real == pytest.approx(
        math.log(2) * math.log(1.5), abs=1e-15)
    T = math.log(1e6)
    a = tb.laplace_exact_step(step6, 2.0, T)
    b = tb.laplace_step_quadrature(step6, 2.0, T)
    assert abs(a - b) <= 1e-9
    with pytest.raises(CoverageError):
        tb.laplace_exact_step(step6, 2.0, math.log(1e7))


def test_laplace_step_vs_quadrature_random(rng):
    step = tb.theta_step(3000)
    for _ in range(50):
        s = complex(rng.uniform(-1, 3), rng.uniform(-20, 20))
        T = rng.uniform(0.1, math.log(3000))
        assert abs(tb.laplace_exact_step(step, s, T) - tb.laplace_step_quadrature(step, s, T)) <= 1e-9


@pytest.mark.parametrize("s,cutoff", [(2, 10**6), (3, 10**4), (2 + 5j, 10**6)])
def test_phi_laplace_identity(s, cutoff):
    rep = tb.phi_laplace_identity_residual(s, cutoff)
    assert rep.within
    if s == 2:
        assert rep.bound < 3e-6 + 1e-6


def test_phi_laplace_identity_domain():
    with pytest.raises(DomainError):
        tb.phi_laplace_identity_residual(1.0, 10**6)
    with pytest.raises(DomainError):
        tb.phi_laplace_identity_residual(2.0, 100)


# signals and g_T ---------------------------------------------------------------


CATALOG = [tb.exp_decay(1.0), tb.exp_decay(0.3), tb.damped_cosine(0.1, 1.0), tb.damped_cosine(1.5, 2.0)]


@pytest.mark.parametrize("sig", CATALOG + [tb.constant_signal(), tb.zero_signal(), tb.theta_signal(10**6)])
def test_sup_norm_spot_check(sig):
    t_max = math.log(10**6) if "theta" in sig.description else 50.0
    assert sig.spot_check(t_max)


def test_g_T_examples():
    e = tb.exp_decay(1.0)
    for T in (0.5, 3.0, 20.0):
        assert tb.g_T(e, 0, T) == pytest.approx(1 - math.exp(-T), abs=1e-15)
    assert tb.g_T(tb.constant_signal(), 1, 1) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    with pytest.raises(DomainError):
        tb.g_T(e, 0, 0)


@pytest.mark.parametrize("sig", CATALOG)
def test_closed_form_g_T_vs_quadrature(sig, rng):
    bare = tb.BoundedSignal(sig.evaluator, sig.sup_norm, sig.description)
    for _ in range(5):
        z = complex(rng.uniform(-1, 2), rng.uniform(-5, 5))
        T = rng.uniform(0.5, 8)
        assert abs(tb.g_T(sig, z, T) - tb.g_T(bare, z, T)) <= 1e-9


def test_theta_signal_g_T_matches_step_form():
    sig = tb.theta_signal(10**6)
    T = math.log(10**6)
    direct = tb.laplace_exact_step(tb.theta_step(10**6), 1.0, T) - T
    assert tb.g_T(sig, 0, T) == pytest.approx(direct, abs=1e-12)


def test_substitution_identity():
    for X in (10**3, 10**5, 10**6):
        assert abs(tb.theta_signal_integral(math.log(X), X) - tb.theta_integral(1, X)) <= 1e-9


def bounded_steps():
    return st.lists(st.floats(-3, 3), min_size=1, max_size=6).flatmap(
        lambda vals: st.tuples(
            st.just(vals),
            st.lists(st.floats(0.05, 2.0), min_size=len(vals) + 1, max_size=len(vals) + 1),
        )
    )


@given(bounded_steps(), st.floats(0.01, 3), st.floats(-10, 10), st.floats(0.1, 15))
def test_rz2_random_step_signals(vs, a, b, T):
    vals, widths = vs
    breaks = np.concatenate(([0.0], np.cumsum(widths[: len(vals)])))
    sig = tb.step_signal(breaks, vals)
    assert tb.bound_rz2_check(sig, complex(-a, b), T)


@given(bounded_steps(), st.floats(0.01, 3), st.floats(-10, 10), st.floats(0.1, 15))
def test_rz1_random_step_signals(vs, a, b, T):
    vals, widths = vs
    breaks = np.concatenate(([0.0], np.cumsum(widths[: len(vals)])))
    sig = tb.step_signal(breaks, vals)
    assert tb.bound_rz1_check(sig, complex(a, b), T)


@pytest.mark.parametrize("sig", CATALOG)
def test_rz_bounds_random(sig, rng):
    for _ in range(100):
        T = rng.uniform(0.1, 20)
        assert tb.bound_rz1_check(sig, complex(rng.uniform(0.01, 3), rng.uniform(-10, 10)), T)
        assert tb.bound_rz2_check(sig, complex(-rng.uniform(0.01, 3), rng.uniform(-10, 10)), T)


def test_rz_examples():
    e = tb.exp_decay(1.0)
    assert tb.bound_rz1_check(e, 1, 2)
    assert tb.bound_rz1_check(e, 0.1, 10)
    assert tb.bound_rz2_check(tb.constant_signal(), -1, 1)
    assert abs(tb.g_T(tb.constant_signal(), -1, 1)) == pytest.approx(math.e - 1)
    assert tb.bound_rz2_check(e, -0.5, 3)
    with pytest.raises(DomainError):
        tb.bound_rz1_check(e, -1, 1)
    with pytest.raises(DomainError):
        tb.bound_rz2_check(e, 1, 1)


def test_rz1_detects_wrong_sup_norm():
    e = tb.exp_decay(1.0)
    lying = tb.BoundedSignal(e.evaluator, 0.1, "understated", e.laplace, e.laplace_T)
    assert not tb.bound_rz1_check(lying, 2.0, 1.0)


# circle factor and contour -----------------------------------------------------------


def test_circle_factor_examples():
    assert tb.circle_factor_check(3.0, 3.0)
    assert abs(1 / 3 + 3 / 9 - 2 / 3) < 1e-15
    assert tb.circle_factor_check(2j, 2.0)
    with pytest.raises(DomainError):
        tb.circle_factor_check(1.5, 2.0)


@pytest.mark.parametrize("R", [1.0, 5.0, 10.0])
def test_circle_factor_random(R, rng):
    for phi in rng.uniform(0, 2 * math.pi, 1000):
        assert tb.circle_factor_check(cmath.rect(R, phi), R)


def test_contour_spec_validation():
    with pytest.raises(ValueError):
        tb.ContourSpec(1.0, 1.0)
    with pytest.raises(ValueError):
        tb.ContourSpec(1.0, 0.5, n_points=32)


def test_contour_nodes_trace_a_closed_curve():
    spec = tb.ContourSpec(2.0, 0.5)
    total = 0j
    for _, z, w in spec.pieces():
        total += np.sum(w)  # integral of dz around a closed curve
        assert np.all(np.abs(z) <= 2.0 + 1e-12) and np.all(z.real >= -0.5 - 1e-12)
    assert abs(total) < 1e-13
    # winding number about 0 is one
    wind = sum(np.sum(w / z) for _, z, w in spec.pieces()) / (2j * math.pi)
    assert abs(wind - 1) < 1e-12


def test_newman_example():
    assert tb.newman_contour_residual(tb.exp_decay(1.0), tb.ContourSpec(1.0, 0.5), 5.0) <= 1e-6
    assert tb.newman_contour_residual(tb.zero_signal(), tb.ContourSpec(1.0, 0.5), 5.0) == 0


@pytest.mark.parametrize("sig", [tb.exp_decay(1.5), tb.damped_cosine(1.5, 1.0)])
@pytest.mark.parametrize("R", [1.0, 2.0])
@pytest.mark.parametrize("frac", [0.25, 0.5])
@pytest.mark.parametrize("T", [1.0, 5.0, 10.0])
def test_newman_grid(sig, R, frac, T):
    assert tb.newman_contour_residual(sig, tb.ContourSpec(R, frac * R), T) <= 1e-6


def test_newman_pole_detection():
    with pytest.raises(ContourError, match="pole"):
        tb.newman_contour_residual(tb.constant_signal(), tb.ContourSpec(1.0, 0.5), 5.0)
    with pytest.raises(ContourError):
        tb.newman_contour_residual(tb.exp_decay(1.0), tb.ContourSpec(2.0, 1.0), 5.0)


def test_right_arc_bound():
    sig = tb.damped_cosine(1.5, 1.0)
    for R in (1.0, 2.0):
        for T in (1.0, 5.0, 10.0):
            plus = tb.newman_contour_parts(sig, tb.ContourSpec(R, R / 2), T)["plus"]
            assert abs(plus) <= sig.sup_norm / R


def test_cauchy_square_analyticity_proxy():
    sig = tb.exp_decay(1.0)
    res = tb.cauchy_square_residual(lambda z: tb.laplace_quadrature(sig, z), 1.0 + 0.5j, 0.25)
    assert res <= 1e-8
    step = tb.theta_step(10**4)
    res = tb.cauchy_square_residual(lambda z: tb.laplace_exact_step(step, z, math.log(10**4)), 2.0 + 1j, 0.25)
    assert res <= 1e-8
    # sanity: a pole inside is detected
    assert tb.cauchy_square_residual(lambda z: 1 / (z - 1), 1.0, 0.25) == pytest.approx(2 * math.pi, rel=1e-10)


# convergence ---------------------------------------------------------------------


def test_convergence_demo_exp():
    T = np.linspace(1, 20, 20)
    d = tb.newman_convergence_demo(tb.exp_decay(1.0), T)
    assert np.allclose(d.abs_error, np.exp(-T), rtol=1e-10, atol=1e-16)
    assert d.envelope_decreasing()


def test_convergence_demo_damped_cosine():
    d = tb.newman_convergence_demo(tb.damped_cosine(0.1, 1.0), np.linspace(1, 80, 60))
    assert tb.damped_cosine(0.1, 1.0).laplace(0) == pytest.approx(0.1 / 1.01)
    assert d.envelope_decreasing() and d.envelope[-1] < 1e-3


def test_convergence_demo_theta():
    g0 = tb.g0_from_phi()
    T = np.log(10.0 ** np.arange(2, 9))
    d = tb.newman_convergence_demo(tb.theta_signal(10**8), T, g0)
    assert d.envelope_decreasing()
    assert d.to_csv().splitlines()[0] == "T,abs_error"


def test_theta_integral_vs_quadrature():
    from pntlab.primes import chebyshev_theta

    edges = [1, 2, 3, 5, 7, 10]
    oracle = math.fsum(
        integrate.quad(lambda x: (chebyshev_theta(x).theta - x) / x**2, a, b, epsabs=1e-14)[0]
        for a, b in zip(edges, edges[1:])
    )
    assert abs(tb.theta_integral(1, 10) - oracle) <= 1e-9


def test_theta_integral_closed_form():
    X = 10**5
    ps = list(sympy.primerange(2, X + 1))
    theta = math.fsum(math.log(p) for p in ps)
    closed = math.fsum(math.log(p) / p for p in ps) - theta / X - math.log(X)
    assert abs(tb.theta_integral(1, X) - closed) <= 1e-9


def test_theta_integral_domain():
    with pytest.raises(DomainError):
        tb.theta_integral(0.5, 2)
    with pytest.raises(CoverageError):
        tb.theta_integral(1, 100, cutoff=50)
    with pytest.raises(CoverageError):
        tb.pnt_integral_tail(1e9, 1e8)


def test_pnt_tail_envelope():
    s = tb.pnt_integral_series(10**8, range(2, 9))
    assert np.all(np.diff(s.envelope) <= 0)
    assert s.to_csv().splitlines()[0] == "x,I(x)"


def test_g0_two_oracles():
    a, b = tb.g0_from_tail(10**8), tb.g0_from_phi()
    assert abs(a - b) <= 1e-2
    # Mertens-type constant: -1 - gamma - sum log p / (p (p - 1))
    assert b == pytest.approx(-2.3325823, abs=1e-5)
