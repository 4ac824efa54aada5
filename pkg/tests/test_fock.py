import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tjcm import (
    CutoffError,
    FieldState,
    SdnParams,
    assoc_laguerre,
    build_sdn_state,
    default_cutoff,
    displacement_element,
    log_factorial,
    mean_photon,
    photon_distribution,
)
from tjcm.fock import displacement_column, falling_ratio, laguerre_kernel, sdn_normalization
from tjcm.oracle import oracle_displacement


def laguerre_series(n, a, x):
    """Explicit finite sum in exact rational arithmetic, independent of the recurrence."""
    xf = Fraction(x)
    total = sum(Fraction((-1) ** j * math.comb(n + a, n - j), math.factorial(j)) * xf**j for j in range(n + 1))
    return float(total)


@pytest.fixture(scope="module")
def dense_d():
    cache = {}

    def get(alpha):
        if alpha not in cache:
            cache[alpha] = oracle_displacement(alpha, 400).matrix
        return cache[alpha]

    return get


def test_log_factorial_values():
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0
    assert log_factorial(10) == pytest.approx(math.log(3628800), abs=1e-14)
    assert log_factorial(2000) == pytest.approx(math.lgamma(2001), rel=1e-14)


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        log_factorial(-1)


def test_falling_ratio_is_exact_for_small_arguments():
    assert falling_ratio(3, 2) == 20.0
    assert falling_ratio(0, 4) == 24.0


@pytest.mark.parametrize("n,a,x", [(0, 0, 1.3), (2, 0, 1.0), (5, 3, 2.5), (12, 1, 7.0), (20, 4, 30.0)])
def test_assoc_laguerre_matches_series(n, a, x):
    assert assoc_laguerre(n, a, x) == pytest.approx(laguerre_series(n, a, x), rel=1e-10, abs=1e-10)


def test_assoc_laguerre_known_value():
    assert assoc_laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)


def test_assoc_laguerre_rejects_bad_upper_index():
    with pytest.raises(ValueError):
        assoc_laguerre(2, -3, 1.0)


def test_laguerre_kernel_large_argument_is_finite():
    vals = laguerre_kernel(300, 5, np.array([0.0, 50.0, 400.0, 900.0]))
    assert np.all(np.isfinite(vals))
    assert np.max(np.abs(vals)) <= 1.0 + 1e-12


def test_displacement_reference_element():
    # frozen from the dense matrix-exponential oracle
    assert displacement_element(2, 1, 0.5) == pytest.approx(0.5460171011694801, abs=1e-12)


def test_displacement_reference_element_against_oracle():
    d = oracle_displacement(0.5, 60).matrix
    assert displacement_element(2, 1, 0.5) == pytest.approx(d[2, 1], abs=1e-12)


def test_displacement_zero_is_identity():
    for n in range(5):
        for m in range(5):
            assert displacement_element(n, m, 0.0) == (1.0 if n == m else 0.0)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5, 4.0, 6.0, 8.0, -3.0])
def test_displacement_matches_oracle(alpha, dense_d):
    d = dense_d(alpha)
    lib = np.array([[displacement_element(n, m, alpha) for m in range(41)] for n in range(41)])
    assert np.max(np.abs(lib - d[:41, :41])) < 1e-8


def test_displacement_column_is_coherent_state():
    alpha = 2.2
    n = np.arange(40)
    expected = np.exp(-alpha**2 / 2) * alpha**n / np.sqrt([float(math.factorial(int(j))) for j in n])
    assert np.allclose(displacement_column(0, alpha, 39), expected, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.0, 8.0), m=st.integers(0, 4))
def test_displacement_column_unitarity(alpha, m):
    col = displacement_column(m, alpha, int(alpha**2 + 10 * alpha + m + 40))
    assert abs(np.sum(col**2) - 1.0) < 1e-8


def test_sdn_rejects_complex_or_bad_values():
    with pytest.raises((TypeError, ValueError)):
        SdnParams(1 + 1j, 0.0, 0)
    with pytest.raises(ValueError):
        SdnParams(1.0, 0.0, -1)
    with pytest.raises(ValueError):
        SdnParams(float("nan"), 0.0, 0)


def test_sdn_normalization_reference_value():
    # 2 + 2 e^{-2 alpha^2} L_0(4 alpha^2) at alpha = 1, eps = 1
    assert sdn_normalization(SdnParams(1.0, 1.0, 0)) ** -2 == pytest.approx(2 + 2 * math.exp(-2), abs=1e-14)


def test_sdn_odd_cat_at_origin_is_invalid():
    with pytest.raises(ValueError):
        sdn_normalization(SdnParams(0.0, -1.0, 0))


def test_coherent_state_coefficients():
    f = build_sdn_state(SdnParams(3.0, 0.0, 0))
    n = np.arange(f.cutoff + 1)
    expected = np.exp(-4.5) * 3.0**n / np.sqrt([float(math.factorial(int(j))) for j in n])
    assert np.max(np.abs(f.coeffs - expected)) < 1e-10


def test_fock_state_from_zero_displacement():
    f = build_sdn_state(SdnParams(0.0, 0.0, 3))
    assert f.coeffs[3] == pytest.approx(1.0)
    assert mean_photon(f) == pytest.approx(3.0)


def test_fock_constructor():
    f = FieldState.fock(5)
    assert mean_photon(f) == 5.0
    assert photon_distribution(f)[5] == 1.0


def test_mean_photon_coherent():
    assert mean_photon(build_sdn_state(SdnParams(7.0, 0.0, 0))) == pytest.approx(49.0, abs=1e-9)


def test_mean_photon_even_cat():
    # even cat: nbar = alpha^2 tanh(alpha^2); also a direct sum over the oracle column
    f = build_sdn_state(SdnParams(2.0, 1.0, 0))
    assert mean_photon(f) == pytest.approx(4.0 * math.tanh(4.0), abs=1e-10)
    d_plus = oracle_displacement(2.0, 120).matrix[:, 0]
    d_minus = oracle_displacement(-2.0, 120).matrix[:, 0]
    v = d_plus + d_minus
    v /= np.linalg.norm(v)
    assert mean_photon(f) == pytest.approx(float(np.arange(120) @ v**2), abs=1e-10)


def test_coeffs_are_read_only():
    f = build_sdn_state(SdnParams(1.0, 0.0, 0))
    with pytest.raises(ValueError):
        f.coeffs[0] = 0.0


def test_cutoff_error_on_truncation():
    with pytest.raises(CutoffError):
        build_sdn_state(SdnParams(7.0, 0.0, 0), cutoff=30)


def test_default_cutoff_formula():
    assert default_cutoff(SdnParams(7.0, 0.0, 2), k=3) == math.ceil(49 + 70 + 2 + 6 + 10)


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.0, 8.0), eps=st.sampled_from([-1.0, 0.0, 1.0]), m=st.integers(0, 4))
def test_sdn_normalized(alpha, eps, m):
    p = SdnParams(alpha, eps, m)
    try:
        f = build_sdn_state(p)
    except ValueError:
        # eps = -1 at alpha ~ 0 is the null vector
        assert eps == -1.0 and alpha < 1e-3
        return
    assert abs(np.sum(f.coeffs**2) - 1.0) < 1e-10


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.05, 8.0), eps=st.sampled_from([-1.0, 1.0]), m=st.sampled_from([0, 2, 4]))
def test_sdn_parity(alpha, eps, m):
    f = build_sdn_state(SdnParams(alpha, eps, m))
    vanishing = f.coeffs[1::2] if eps == 1.0 else f.coeffs[0::2]
    assert np.max(np.abs(vanishing)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.05, 8.0), eps=st.floats(-2.0, 2.0), m=st.integers(0, 4))
def test_sdn_normalization_consistency(alpha, eps, m):
    p = SdnParams(alpha, eps, m)
    f = build_sdn_state(p)
    raw = f.coeffs / f.norm_const
    assert abs(1.0 / math.sqrt(np.sum(raw**2)) - f.norm_const) < 1e-10
