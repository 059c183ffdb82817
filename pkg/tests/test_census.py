import numpy as np
import pytest

from divisorlab.census import (
    CensusRecord,
    _count_small_parts_py,
    census,
    census_sample,
    census_sample_synthetic,
    small_part_identity,
)
from divisorlab.divisor_sums import integer_kth_root
from divisorlab.errors import DomainError, InsufficientPopulationError, RangeError
from divisorlab.sieve import factor_squarefree


def test_census_pair_example(tables_small):
    rec = census(6, 2, tables_small)
    assert (rec.tau_k, rec.g_k, rec.ratio) == (4, 4, 1.0)
    assert rec.enumerated == 4


def test_census_30_cubed_example(tables_small):
    rec = census(30, 3, tables_small)
    assert rec.tau_k == 27
    assert rec.g_k == 48
    assert rec.ratio == pytest.approx(48 / 27)


def test_census_unit(tables_small):
    for k in (2, 5):
        rec = census(1, k, tables_small)
        assert rec.tau_k == 1 and rec.g_k == k and rec.omega_n == 0


def test_census_matches_python_twin(tables_small):
    for n in (2, 6, 30, 210, 2310, 9699):
        if tables_small.mu[n] == 0:
            continue
        for k in (2, 3, 4):
            rec = census(n, k, tables_small)
            primes = factor_squarefree(n, tables_small)
            r = integer_kth_root(n, k)
            assert rec.g_k == _count_small_parts_py(primes, k, r)


def test_census_matches_closed_form_identity(tables_small):
    for n in (2, 15, 30, 105, 2310):
        for k in (2, 3, 5):
            assert census(n, k, tables_small).g_k == small_part_identity(
                n, k, tables_small
            )


def test_slot_relabeling_invariance(tables_small):
    # reversing the prime order permutes enumeration order but not the census
    for n in (30, 210, 2310):
        primes = factor_squarefree(n, tables_small)
        r = integer_kth_root(n, 3)
        assert _count_small_parts_py(primes, 3, r) == _count_small_parts_py(
            primes[::-1], 3, r
        )


def test_complementary_count_nonnegative(tables_small):
    for n in (2, 6, 30, 210):
        for k in (2, 3, 4):
            rec = census(n, k, tables_small)
            assert k * rec.tau_k - rec.g_k >= 0


def test_pairing_makes_g2_equal_tau(tables_small):
    sq = np.flatnonzero(tables_small.mu[: 1001] != 0)
    for n in sq[1:]:  # skip n = 1
        rec = census(int(n), 2, tables_small)
        assert rec.g_k == rec.tau_k


def test_trivial_bounds(tables_small):
    for n in (2, 6, 30, 210, 4199):
        for k in (2, 3, 4):
            rec = census(n, k, tables_small)
            assert rec.tau_k <= rec.g_k <= (k - 1) * rec.tau_k or k == 2


def test_census_k_guard(tables_small):
    with pytest.raises(DomainError):
        census(30, 1, tables_small)
    with pytest.raises(DomainError):
        census(30, 17, tables_small)


def test_census_budget_exceeded(tables_medium):
    n = 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23  # omega = 9
    with pytest.raises(RangeError, match="budget"):
        census(n, 10, tables_medium)  # 10**9 states


def test_census_rejects_non_squarefree(tables_small):
    with pytest.raises(DomainError):
        census(12, 2, tables_small)


def test_sample_deterministic(tables_small):
    recs1, summ1 = census_sample(3, 3, 10, 42, tables_small)
    recs2, summ2 = census_sample(3, 3, 10, 42, tables_small)
    assert [r.n for r in recs1] == [r.n for r in recs2]
    assert summ1 == summ2
    recs3, _ = census_sample(3, 3, 10, 43, tables_small)
    assert [r.n for r in recs1] != [r.n for r in recs3]


def test_sample_summary_fields(tables_small):
    recs, summ = census_sample(2, 3, 25, 7, tables_small)
    assert summ.count == 25 == len(recs)
    assert summ.min_ratio <= summ.mean_ratio <= summ.max_ratio
    assert summ.half_k_distance == pytest.approx(abs(summ.mean_ratio - 1.5))
    for rec in recs:
        assert rec.omega_n == 2
        assert tables_small.mu[rec.n] != 0


def test_sample_k2_ratios_all_one(tables_small):
    _, summ = census_sample(4, 2, 20, 3, tables_small)
    assert summ.min_ratio == summ.max_ratio == 1.0


def test_sample_rejects_degenerate_omega(tables_small):
    with pytest.raises(InsufficientPopulationError):
        census_sample(0, 3, 5, 1, tables_small)


def test_sample_rejects_empty_population(tables_small):
    # products of 7 distinct primes start at 510510 > 1e4
    with pytest.raises(InsufficientPopulationError):
        census_sample(7, 3, 5, 1, tables_small)


def test_synthetic_sample_reaches_high_omega(tables_small):
    recs, summ = census_sample_synthetic(9, 3, 4, 11, tables_small)
    assert all(rec.omega_n == 9 for rec in recs)
    assert all(rec.tau_k == 3**9 for rec in recs)
    for rec in recs:
        assert rec.tau_k <= rec.g_k <= 2 * rec.tau_k


def test_synthetic_sample_deterministic(tables_small):
    a, _ = census_sample_synthetic(5, 3, 6, 9, tables_small)
    b, _ = census_sample_synthetic(5, 3, 6, 9, tables_small)
    assert [r.n for r in a] == [r.n for r in b]


def test_synthetic_pool_guard(tables_small):
    with pytest.raises(InsufficientPopulationError):
        census_sample_synthetic(19, 3, 2, 1, tables_small, prime_pool=18)
