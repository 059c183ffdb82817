import math

import mpmath
import pytest

from divisorlab.errors import DomainError, RangeError
from divisorlab.euler import (
    WEIGHT_ERROR_THRESHOLD,
    ZETA2,
    f0,
    f1,
    gamma_fn,
    gaussian_window,
    predict_s_full,
    predict_s_small,
    selberg_exact,
)
from divisorlab.sieve import primes_up_to
from divisorlab.weights import g_eval


def test_f0_at_one_telescopes_to_inverse_zeta2():
    const = f0(1.0)
    assert abs(const.value - 1.0 / ZETA2) < 1e-6
    assert const.value * ZETA2 == pytest.approx(1.0, abs=1e-6)


def test_f0_near_zero_is_one():
    assert abs(f0(1e-9).value - 1.0) < 1e-6


def test_f0_self_consistency_across_truncations():
    a = f0(2.0, 10**6)
    b = f0(2.0, 10**7)
    assert abs(math.log(a.value) - math.log(b.value)) <= a.tail_bound + b.tail_bound


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize("fn", [f0, f1])
def test_truncation_tail_budget(fn, z):
    small = fn(z, 10**4)
    big = fn(z, 10**5)
    gap = abs(math.log(small.value) - math.log(big.value))
    assert gap <= small.tail_bound + big.tail_bound


def test_f0_tail_bound_meets_budget_at_default_truncation():
    assert f0(4.0, 10**6).tail_bound <= 1e-6


def test_f1_identity_with_f0():
    for c in [0.1 * i for i in range(1, 10)] + [1.0]:
        assert abs(f1(c).value - ZETA2 * f0(1.0 + c).value) < 1e-6


def test_f_validation():
    with pytest.raises(DomainError):
        f0(0.0)
    with pytest.raises(DomainError):
        f0(4.5)
    with pytest.raises(DomainError):
        f1(1.0, truncation=50)


def test_f_values_against_slow_oracle():
    # direct float product over the same primes, no log-sum trick
    primes = primes_up_to(10**4)
    for z in (0.5, 2.0):
        direct = 1.0
        for p in map(float, primes):
            direct *= (1.0 + z / p) * (1.0 - 1.0 / p) ** z
        assert f0(z, 10**4).value == pytest.approx(direct, rel=1e-12)


def test_gamma_classical_values():
    assert gamma_fn(1.0) == pytest.approx(1.0, abs=1e-12)
    assert abs(gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-9
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-9)


def test_gamma_against_mpmath():
    mpmath.mp.dps = 30
    for z in [0.05, 0.1, 0.77, 1.5, 3.25, 10.0, 29.5]:
        assert gamma_fn(z) == pytest.approx(float(mpmath.gamma(z)), rel=1e-10)


def test_gamma_recurrence_grid():
    for i in range(1, 31):
        z = 0.1 * i
        resid = abs(gamma_fn(z + 1.0) / (z * gamma_fn(z)) - 1.0)
        assert resid <= 1e-9


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma_fn(0.0)
    with pytest.raises(DomainError):
        gamma_fn(31.0)


def test_gaussian_window_values():
    assert gaussian_window(-10.0, 10.0) == pytest.approx(1.0, abs=1e-7)
    assert gaussian_window(0.0, 0.0) == 0.0
    # independent quadrature oracle
    mpmath.mp.dps = 25
    density = lambda t: mpmath.exp(-t * t / 2) / mpmath.sqrt(2 * mpmath.pi)
    oracle = float(mpmath.quad(density, [-1, 1]))
    assert gaussian_window(-1.0, 1.0) == pytest.approx(oracle, abs=1e-7)
    assert gaussian_window(-1.0, 1.0) == pytest.approx(0.6826895, abs=1e-7)


def test_gaussian_window_rejects_reversed():
    with pytest.raises(DomainError):
        gaussian_window(1.0, -1.0)


def test_predictor_ratio_cancels_algebraically():
    for c in (0.1, 0.3, 0.9):
        for k in (2, 3, 5):
            quotient = predict_s_small(10**6, k, c) / predict_s_full(10**6, c)
            assert quotient == pytest.approx(float(k) ** (-c), rel=1e-14)


def test_predictor_normalized_form_is_x_free():
    c = 0.3
    vals = [predict_s_full(x, c) / (x * math.log(x) ** c) for x in (10, 10**4, 10**7)]
    assert max(vals) - min(vals) < 1e-15 * max(vals)


def test_predictor_consistent_with_shifted_product_route():
    for c in [0.1 * i for i in range(1, 10)]:
        direct = f1(c).value / (c * gamma_fn(c)) / ZETA2
        shifted = f0(1.0 + c).value / gamma_fn(1.0 + c)
        assert direct == pytest.approx(shifted, rel=1e-6)


def test_predictor_domain():
    with pytest.raises(DomainError):
        predict_s_full(100, 0.0)
    with pytest.raises(DomainError):
        predict_s_full(100, 1.0)
    with pytest.raises(DomainError):
        predict_s_small(100, 1, 0.3)
    with pytest.raises(DomainError):
        predict_s_full(2, 0.3)


def test_selberg_exact_examples(tables_small):
    assert selberg_exact(10, 2.0, False, tables_small) == 17.0
    assert selberg_exact(10, 1.0, False, tables_small) == 7.0
    expected = 1 + 2 / 3 + 3 / 4 + 5 / 6 + 1 / 2 + 7 / 8 + (2 / 3) * (5 / 6)
    assert selberg_exact(10, 1.0, True, tables_small) == pytest.approx(expected, rel=1e-15)


def test_selberg_exact_matches_direct_sum(tables_small):
    x = 10**4
    for z in (2.0, 3.0):
        direct = sum(
            int(z) ** int(tables_small.omega[n])
            for n in range(1, x + 1)
            if tables_small.mu[n] != 0
        )
        assert selberg_exact(x, z, False, tables_small) == float(direct)
    direct_w = math.fsum(
        2.0 ** int(tables_small.omega[n]) * g_eval(n, tables_small)
        for n in range(1, 2001)
        if tables_small.mu[n] != 0
    )
    assert selberg_exact(2000, 2.0, True, tables_small) == pytest.approx(
        direct_w, rel=1e-13
    )


def test_selberg_exact_validation(tables_small):
    with pytest.raises(DomainError):
        selberg_exact(10, 0.0, False, tables_small)
    with pytest.raises(RangeError):
        selberg_exact(10**5, 1.0, False, tables_small)


def test_weight_threshold_constant():
    # solving 2^(2/3)*c - 1 < c for c gives the bound 1/(2^(2/3) - 1)
    assert abs(WEIGHT_ERROR_THRESHOLD - 1.0 / (2.0 ** (2 / 3) - 1.0)) == 0.0
    assert abs(WEIGHT_ERROR_THRESHOLD - 1.70241) < 1e-5
