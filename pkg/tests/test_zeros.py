import mpmath
import numpy as np
import pytest

from pntlab import zeros
from pntlab.errors import DomainError, RefinementError

LISTED = zeros.KNOWN_ORDINATES


@pytest.fixture(scope="module")
def twenty():
    return zeros.first_n_zeros(20)


def test_scan_examples():
    b = zeros.scan_critical_line(10, 16, 0.05)
    assert len(b) == 1 and b[0][0] < 14.1347 < b[0][1]
    assert zeros.scan_critical_line(2, 10) == []
    near = zeros.scan_critical_line(20, 26)
    assert len(near) == 2
    assert near[0][0] < 21.0220 < near[0][1] and near[1][0] < 25.0109 < near[1][1]


def test_scan_preconditions():
    with pytest.raises(DomainError):
        zeros.scan_critical_line(0, 10)
    with pytest.raises(DomainError):
        zeros.scan_critical_line(10, 20, step=0.2)


def test_first_twenty_match_list(twenty):
    assert [abs(r.t - k) <= 5e-5 for r, k in zip(twenty, LISTED)] == [True] * 20
    assert all(r.residual <= 1e-8 for r in twenty)


def test_against_mpmath_zetazero(twenty):
    for i, r in enumerate(twenty, start=1):
        assert abs(r.t - float(mpmath.zetazero(i).imag)) < 1e-9


def test_small_counts():
    assert [round(r.t, 4) for r in zeros.first_n_zeros(5)] == list(LISTED[:5])
    assert round(zeros.first_n_zeros(1)[0].t, 4) == 14.1347
    with pytest.raises(DomainError):
        zeros.first_n_zeros(21)
    with pytest.raises(DomainError):
        zeros.first_n_zeros(0)


def test_refine_examples():
    r = zeros.refine_zero((77.1, 77.2))
    assert abs(r.t - 77.1448) <= 5e-5 and r.residual < 1e-8


def test_refine_rejects_empty_bracket():
    with pytest.raises(RefinementError) as info:
        zeros.refine_zero((17.0, 17.1))
    err = info.value
    assert err.iterations is not None
    assert err.residual > 1e-8 or not 17.0 < err.last_t < 17.1


def test_records_well_formed(twenty):
    ts = np.array([r.t for r in twenty])
    assert np.all(np.diff(ts) >= 0.5)
    for a, b in zip(twenty, twenty[1:]):
        assert a.bracket[1] <= b.bracket[0]
    assert all(r.floor_residual < 1e-9 for r in twenty)


def test_symmetry(twenty):
    vals = zeros.critical_line([-r.t for r in twenty])
    assert np.all(np.abs(vals) <= 1e-6)


def test_off_line_dip(twenty):
    ts = np.array([r.t for r in twenty])
    assert np.all(np.abs(zeros.critical_line(ts, sigma=0.6)) > np.abs(zeros.critical_line(ts)))


def test_no_small_values_on_one_line():
    t = np.arange(0.1, 80, 0.02)
    assert np.abs(zeros.critical_line(t, sigma=1.0)).min() > 0.01


def test_csv_deterministic(twenty):
    a = zeros.zeros_to_csv(twenty)
    b = zeros.zeros_to_csv(zeros.first_n_zeros(20))
    assert a == b
    lines = a.splitlines()
    assert lines[0] == "index,t,residual" and lines[1].startswith("1,14.134725")
