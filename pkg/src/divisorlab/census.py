"""Exact census of ordered k-fold factorizations of squarefree integers.

For squarefree n, an ordered factorization n = d_1 * ... * d_k is exactly
an assignment of each distinct prime of n to one of k slots, so there are
k**omega(n) of them.  The census walks every assignment and counts, over
all of them, how many slots hold a small part (d_i**k <= n).  The mean
count per factorization is reported against the k/2 heuristic but never
asserted: it is an open question, and the census only produces evidence.
"""

from dataclasses import dataclass

import numpy as np

from .divisor_sums import integer_kth_root
from .errors import DomainError, InsufficientPopulationError, RangeError
from .sieve import SieveTables, factor_squarefree

ENUMERATION_BUDGET = 10**8
_CHUNK = 1 << 20
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CensusRecord:
    n: int
    k: int
    tau_k: int
    g_k: int
    ratio: float
    omega_n: int
    enumerated: int


@dataclass(frozen=True)
class CensusSummary:
    k: int
    omega: int
    count: int
    mean_ratio: float
    min_ratio: float
    max_ratio: float
    half_k_distance: float  # |mean_ratio - k/2|


def census(n: int, k: int, tables: SieveTables) -> CensusRecord:
    """Enumerate all k**omega(n) ordered factorizations of squarefree n.

    Walks the assignments as a mixed-radix counter (vectorized in chunks),
    forming each slot product exactly and testing smallness against the
    integer k-th root of n.

    Raises:
        RangeError: if k**omega(n) exceeds the enumeration budget of 1e8,
            or k > 16, or omega(n) > 25.
    """
    if k < 2 or k > 16:
        raise DomainError(f"k={k} must be in [2, 16]")
    primes = factor_squarefree(n, tables)
    om = len(primes)
    if om > 25:
        raise RangeError(f"omega(n)={om} exceeds the supported 25")
    states = k**om
    if states > ENUMERATION_BUDGET:
        raise RangeError(
            f"k**omega = {k}**{om} = {states} exceeds enumeration budget {ENUMERATION_BUDGET}"
        )
    r = integer_kth_root(n, k)
    if n < _INT64_SAFE:
        g_k = _count_small_parts_chunked(primes, k, r, states)
    else:
        g_k = _count_small_parts_py(primes, k, r)
    return CensusRecord(
        n=n,
        k=k,
        tau_k=states,
        g_k=g_k,
        ratio=g_k / states,
        omega_n=om,
        enumerated=states,
    )


def _count_small_parts_chunked(primes, k, r, states) -> int:
    """Vectorized assignment walk; chunks bound peak memory."""
    parr = np.array(primes, dtype=np.int64)
    om = len(primes)
    radix = np.array([k**i for i in range(om)], dtype=np.int64)
    total = 0
    for lo in range(0, states, _CHUNK):
        hi = min(lo + _CHUNK, states)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = (idx[:, None] // radix[None, :]) % k  # prime i -> slot digit
        for s in range(k):
            prod = np.ones(hi - lo, dtype=np.int64)
            for i in range(om):
                prod *= np.where(digits[:, i] == s, parr[i], 1)
            total += int(np.count_nonzero(prod <= r))
    return total


def _count_small_parts_py(primes, k, r) -> int:
    """Pure-Python twin of the chunked walk (also the cross-check oracle)."""
    slots = [1] * k
    small = sum(1 for s in slots if s <= r)
    total = 0

    def assign(i, small):
        nonlocal total
        if i == len(primes):
            total += small
            return
        p = primes[i]
        for s in range(k):
            old = slots[s]
            new = old * p
            slots[s] = new
            delta = (1 if new <= r else 0) - (1 if old <= r else 0)
            assign(i + 1, small + delta)
            slots[s] = old

    assign(0, small)
    return total


def small_part_identity(n: int, k: int, tables: SieveTables) -> int:
    """Independent closed-form count: k * sum over small divisors d of (k-1)**(omega(n)-omega(d)).

    By slot symmetry the census total is k times the number of assignments
    whose first slot is small; conditioning on the first slot's divisor d
    leaves (k-1)**(omega(n)-omega(d)) ways to place the remaining primes.
    Used in tests as a second route to g_k.
    """
    primes = factor_squarefree(n, tables)
    r = integer_kth_root(n, k)
    divisors = [(1, 0)]
    for p in primes:
        divisors += [(d * p, om + 1) for d, om in divisors]
    om_n = len(primes)
    return k * sum((k - 1) ** (om_n - om) for d, om in divisors if d <= r)


def _population(omega_target: int, tables: SieveTables) -> np.ndarray:
    if omega_target < 1:
        raise InsufficientPopulationError(
            "omega_target=0 selects only n=1, which sits outside the bound regime"
        )
    mask = (tables.mu != 0) & (tables.omega == omega_target)
    mask[0] = False
    return np.flatnonzero(mask)


def census_sample(
    omega_target: int,
    k: int,
    count: int,
    seed: int,
    tables: SieveTables,
) -> tuple[list[CensusRecord], CensusSummary]:
    """Seeded sample of squarefree n <= limit with the given omega, censused.

    Sampling is uniform over the in-table population; if the population is
    smaller than count the draw is with replacement (and without it
    otherwise), so output is a pure function of (seed, count, limit).

    Raises:
        InsufficientPopulationError: if no such n exists in the tables.
    """
    if count < 1:
        raise DomainError(f"count={count} must be >= 1")
    pop = _population(omega_target, tables)
    if len(pop) == 0:
        raise InsufficientPopulationError(
            f"no squarefree n <= {tables.limit} with omega(n) = {omega_target}"
        )
    rng = np.random.default_rng(seed)
    chosen = rng.choice(pop, size=count, replace=len(pop) < count)
    records = [census(int(n), k, tables) for n in chosen]
    return records, _summarize(records, k, omega_target)


def census_sample_synthetic(
    omega_target: int,
    k: int,
    count: int,
    seed: int,
    tables: SieveTables,
    prime_pool: int = 18,
) -> tuple[list[CensusRecord], CensusSummary]:
    """Census of seeded products of omega_target distinct small primes.

    Covers omega ranges whose smallest representative exceeds any feasible
    sieve limit (the 12-prime primorial is already ~7.4e12).  Each n is a
    product of omega_target primes drawn without replacement from the
    first prime_pool primes; the default pool of 18 keeps every product
    within int64 for the vectorized walk.
    """
    if count < 1:
        raise DomainError(f"count={count} must be >= 1")
    if omega_target < 1:
        raise InsufficientPopulationError("omega_target must be >= 1")
    pool = _primes_prefix(prime_pool, tables)
    if omega_target > len(pool):
        raise InsufficientPopulationError(
            f"prime pool of {len(pool)} cannot supply omega = {omega_target}"
        )
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(count):
        chosen = rng.choice(pool, size=omega_target, replace=False)
        n = 1
        for p in chosen:
            n *= int(p)
        records.append(census(n, k, tables))
    return records, _summarize(records, k, omega_target)


def _primes_prefix(count: int, tables: SieveTables) -> np.ndarray:
    primes = tables.primes()
    if len(primes) < count:
        raise RangeError(f"table holds only {len(primes)} primes; {count} requested")
    return primes[:count]


def _summarize(records, k, omega_target) -> CensusSummary:
    ratios = [rec.ratio for rec in records]
    mean = sum(ratios) / len(ratios)
    return CensusSummary(
        k=k,
        omega=omega_target,
        count=len(records),
        mean_ratio=mean,
        min_ratio=min(ratios),
        max_ratio=max(ratios),
        half_k_distance=abs(mean - k / 2.0),
    )
