"""Exact arithmetic tables up to a configurable limit.

Builds, in one vectorized pass over primes, three per-integer tables:
smallest prime factor, the Mobius function, and the count of distinct
prime divisors.  Every aggregate in the package reads these tables; they
are written once and frozen, so sharing them across threads is safe.
"""

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import ConfigurationError, DomainError, RangeError

_LIMIT_MAX = 2**31


@dataclass(frozen=True)
class SieveTables:
    """Immutable factor tables for 1..limit.

    Attributes:
        limit: Largest integer covered (inclusive).
        spf: uint32 array of length limit+1; spf[n] is the smallest prime
            factor of n, with spf[1] = 1 and spf[p] = p for primes.
        mu: int8 array; mu[n] is the Mobius function (0 on non-squarefree n).
        omega: uint8 array; omega[n] counts distinct prime divisors
            (omega(n) <= 15 for n < 2**31, so one byte suffices).
    """

    limit: int
    spf: np.ndarray
    mu: np.ndarray
    omega: np.ndarray

    def is_squarefree(self, n: int) -> bool:
        self._check_range(n)
        return bool(self.mu[n] != 0)

    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending (int64)."""
        idx = np.arange(self.limit + 1, dtype=np.uint32)
        mask = (self.spf == idx) & (idx >= 2)
        return np.flatnonzero(mask).astype(np.int64)

    def _check_range(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise RangeError(f"n={n} outside table range 1..{self.limit}")


def build_sieve(limit: int) -> SieveTables:
    """Build SieveTables for 1..limit.

    The construction is deterministic: plain integer sieving with no
    data races, so identical tables come out for any thread count.

    Raises:
        ConfigurationError: if limit is outside [2, 2**31].
    """
    if not 2 <= limit <= _LIMIT_MAX:
        raise ConfigurationError(f"limit={limit} outside supported range [2, 2**31]")

    spf = np.zeros(limit + 1, dtype=np.uint32)
    root = isqrt(limit)
    for p in range(2, root + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    # Untouched entries are 0, 1 and the primes: each is its own spf.
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest

    idx = np.arange(limit + 1, dtype=np.uint32)
    is_prime = (spf == idx) & (idx >= 2)
    primes = np.flatnonzero(is_prime)

    omega = np.zeros(limit + 1, dtype=np.uint8)
    half = limit // 2
    for p in primes[primes <= half]:
        omega[p::p] += 1
    # Primes above limit/2 have themselves as their only multiple in range.
    omega[primes[primes > half]] = 1

    squarefree = np.ones(limit + 1, dtype=bool)
    squarefree[0] = False
    for p in primes[primes <= root]:
        squarefree[p * p :: p * p] = False

    mu = np.where(omega & 1, -1, 1).astype(np.int8)
    mu[~squarefree] = 0
    mu[0] = 0

    for arr in (spf, mu, omega):
        arr.setflags(write=False)
    return SieveTables(limit=limit, spf=spf, mu=mu, omega=omega)


def distinct_primes(n: int, tables: SieveTables) -> list[int]:
    """Ordered distinct prime factors of n, via repeated spf division."""
    tables._check_range(n)
    primes = []
    m = n
    while m > 1:
        p = int(tables.spf[m])
        primes.append(p)
        while m % p == 0:
            m //= p
    return primes


def factor_squarefree(m: int, tables: SieveTables) -> list[int]:
    """Distinct primes of a squarefree m, allowing m beyond the table limit.

    Beyond the limit, falls back to trial division by sieved primes; that
    covers exactly the m whose prime factors are all <= limit.

    Raises:
        DomainError: if m is not squarefree or cannot be fully factored.
    """
    if m < 1:
        raise DomainError(f"m={m} must be a positive integer")
    if m <= tables.limit:
        if tables.mu[m] == 0:
            raise DomainError(f"m={m} is not squarefree")
        return distinct_primes(m, tables)
    primes = []
    rem = m
    for p in map(int, tables.primes()):
        if p * p > rem:
            break
        if rem % p == 0:
            rem //= p
            if rem % p == 0:
                raise DomainError(f"m={m} is not squarefree")
            primes.append(p)
    if rem > 1:
        if rem > tables.limit * tables.limit or (
            rem <= tables.limit and tables.spf[rem] != rem
        ):
            raise DomainError(
                f"m={m} has a factor beyond the table limit {tables.limit}"
            )
        primes.append(rem)
    return sorted(primes)


def squarefree_mask(x: int, tables: SieveTables) -> np.ndarray:
    """Boolean mask over 1..x (index i <-> integer i+1) of squarefree integers."""
    if not 0 <= x <= tables.limit:
        raise RangeError(f"x={x} outside table range 0..{tables.limit}")
    return tables.mu[1 : x + 1] != 0


def squarefree_coprime_count(x: int, m: int, tables: SieveTables) -> int:
    """Exact count of squarefree n <= x with gcd(n, m) = 1.

    Counts by direct divisibility tests against the distinct primes of m,
    not by a density formula; this is the enumeration oracle that the
    main-term predictions are judged against.
    """
    mprimes = factor_squarefree(m, tables)
    mask = np.array(squarefree_mask(x, tables))
    for p in mprimes:
        if p <= x:
            mask[p - 1 :: p] = False
    return int(np.count_nonzero(mask))


def squarefree_coprime_count_range(
    lo: int, hi: int, mprimes: list[int], tables: SieveTables
) -> int:
    """Count squarefree n in [lo, hi] divisible by none of mprimes.

    Internal building block for divisor-major aggregation; lo/hi inclusive.
    """
    lo = max(lo, 1)
    if hi < lo:
        return 0
    if hi > tables.limit:
        raise RangeError(f"hi={hi} outside table range")
    mask = tables.mu[lo : hi + 1] != 0
    for p in mprimes:
        first = lo + (-lo) % p
        if first <= hi:
            mask[first - lo :: p] = False
    return int(np.count_nonzero(mask))


def omega_class_counts(x: int, tables: SieveTables) -> dict[int, int]:
    """Counts of squarefree n <= x, grouped by number of distinct primes.

    The returned map lets sums of the form  sum z**omega(n) mu^2(n)  be
    evaluated exactly as  sum_j z**j * count_j.
    """
    mask = squarefree_mask(x, tables)
    counts = np.bincount(tables.omega[1 : x + 1][mask])
    return {int(j): int(c) for j, c in enumerate(counts) if c > 0}


def primes_up_to(n: int) -> np.ndarray:
    """Standalone ascending prime list (int64), independent of SieveTables."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    comp = np.zeros(n + 1, dtype=bool)
    for p in range(2, isqrt(n) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    comp[:2] = True
    return np.flatnonzero(~comp).astype(np.int64)
