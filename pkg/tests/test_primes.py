import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pntlab import primes
from pntlab.errors import CoverageError, DomainError, ResourceLimitError


def trial_division_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def test_sieve_small_cases():
    assert list(primes.sieve_primes(10)) == [2, 3, 5, 7]
    assert list(primes.sieve_primes(1)) == []
    assert list(primes.sieve_primes(2)) == [2]


@given(st.integers(min_value=0, max_value=3000))
def test_sieve_matches_trial_division(n):
    assert list(primes.sieve_primes(n)) == trial_division_primes(n)


@given(st.integers(min_value=2, max_value=200_000), st.sampled_from([64, 1000, 4096]))
def test_segment_size_does_not_change_output(n, seg):
    got = np.concatenate(list(primes.iter_prime_segments(n, seg)) or [np.zeros(0, dtype=np.int64)])
    assert np.array_equal(got, primes.sieve_primes(n).primes)


def test_prime_table_is_immutable():
    t = primes.sieve_primes(100)
    with pytest.raises(ValueError):
        t.primes[0] = 4
    assert 97 in t and 91 not in t and len(t) == 25
    with pytest.raises(CoverageError):
        t.count_upto(101)


def test_sieve_memory_budget():
    with pytest.raises(ResourceLimitError, match="memory budget"):
        primes.sieve_primes(10**9, memory_budget=10**6)


@pytest.mark.parametrize("x,pi", [(10**3, 168), (10**4, 1229), (10**5, 9592), (10**6, 78498), (10**7, 664579)])
def test_pi_reference_rows(x, pi):
    assert primes.prime_pi(x).pi == pi
    assert primes.lucy_prime_pi(x) == pi


@given(st.integers(min_value=0, max_value=2_000_000))
def test_sublinear_count_matches_sympy(x):
    assert primes.lucy_prime_pi(x) == sympy.primepi(x)


def test_sublinear_beyond_sieve_threshold():
    cp = primes.prime_pi(10**8)
    assert cp == primes.PiCheckpoint(10**8, 5761455, "sublinear")


def test_prime_pi_rejects_negative_and_huge():
    with pytest.raises(DomainError):
        primes.prime_pi(-1)
    with pytest.raises(ResourceLimitError):
        primes.prime_pi(10**14)


@given(st.integers(min_value=1, max_value=100_000))
def test_nth_prime_matches_sympy(n):
    assert primes.nth_prime(n) == sympy.prime(n)


def test_nth_prime_examples():
    assert primes.nth_prime(1) == 2
    assert primes.nth_prime(168) == 997
    with pytest.raises(DomainError):
        primes.nth_prime(0)
    with pytest.raises(ResourceLimitError):
        primes.nth_prime(10**12)


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=1, max_size=20000))
def test_compensated_cumsum_tracks_exact_prefix(values):
    got = primes.compensated_cumsum(np.array(values), block=64)
    exact = np.array([math.fsum(values[: i + 1]) for i in range(0, len(values), max(1, len(values) // 50))])
    idx = np.arange(0, len(values), max(1, len(values) // 50))
    scale = np.cumsum(np.abs(values))[idx]
    assert np.all(np.abs(got[idx] - exact) <= 1e-12 * (scale + 1))


def test_theta_small_values():
    assert primes.chebyshev_theta(1.9).theta == 0.0
    assert primes.chebyshev_theta(10).theta == pytest.approx(math.log(210), abs=1e-14)
    with pytest.raises(DomainError):
        primes.chebyshev_theta(-1)


@given(st.floats(min_value=2, max_value=1e5))
def test_theta_matches_sympy_primes(x):
    expected = math.fsum(math.log(p) for p in sympy.primerange(2, math.floor(x) + 1))
    got = primes.chebyshev_theta(x)
    assert abs(got.theta - expected) <= got.err + 1e-12


def test_theta_table_lookup_and_coverage():
    table = primes.theta_table(10**5)
    xs = np.array([2.0, 2.5, 10.0, 1000.0, 99991.0])
    expected = [primes.chebyshev_theta(x).theta for x in xs]
    assert np.allclose(table(xs), expected, rtol=0, atol=1e-9)
    with pytest.raises(CoverageError):
        table(np.array([table.limit + 1.0]))


def test_theta_at_integers_consistent():
    arr = primes.theta_at_integers(1000)
    for n in (0, 1, 2, 97, 100, 1000):
        assert arr[n] == pytest.approx(primes.chebyshev_theta(n).theta, abs=1e-12)


@given(st.integers(min_value=1, max_value=10**6))
def test_theta_doubling_gap_bound(n):
    assert primes.theta_doubling_gap(n) <= 2 * n * math.log(2)


def test_theta_doubling_gap_value():
    assert primes.theta_doubling_gap(4) == pytest.approx(math.log(35), abs=1e-14)


def test_prime_reciprocal_sum_keeps_growing():
    sums = [primes.prime_reciprocal_sum(10**k) for k in (4, 6, 8)]
    assert sums[0] == pytest.approx(2.4831, abs=1e-3)
    assert np.all(np.diff(sums) > 0.01)


def test_checkpoint_roundtrip(tmp_path):
    cp = primes.PiCheckpoint(10**6, 78498, "sieve")
    assert primes.parse_checkpoint(primes.format_checkpoint(cp)) == cp
    with pytest.raises(ValueError):
        primes.parse_checkpoint("1\t2")


def test_checkpointed_pi_resumes(tmp_path, monkeypatch):
    first = primes.prime_pi_checkpointed(10**8, tmp_path)
    path = tmp_path / primes.CHECKPOINT_FILE
    assert path.read_text() == "100000000\t5761455\tsublinear\n"
    calls = []
    monkeypatch.setattr(primes, "prime_pi", lambda x: calls.append(x))
    again = primes.prime_pi_checkpointed(10**8, tmp_path)
    assert again == first and calls == []


def test_checkpoint_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(primes.CHECKPOINT_ENV, str(tmp_path))
    assert primes.checkpoint_path() == tmp_path / primes.CHECKPOINT_FILE
