"""Central divisor-sum aggregates over squarefree integers.

Every aggregate here -- the full divisor sum S_full(x) = sum mu^2(n) sum_{d|n} h(d),
its small-divisor restriction S_small(x,k) (only divisors with d^k <= n),
their ratio, and the prime-split A/B/C/D decomposition -- is computed by
first reducing the (d, n) pairs to exact integer counts per class
(omega(d), override-divisibility flags).  Weights enter only at the final
combine, done in exact rational arithmetic with a single rounding to
float, so independent enumeration routes must agree bit-for-bit and
results cannot depend on thread count.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, fsum

import numpy as np

from .errors import ConfigurationError, DomainError, RangeError
from .sieve import (
    SieveTables,
    distinct_primes,
    primes_up_to,
    squarefree_coprime_count_range,
)
from .weights import PrimeWeight

FULL_METHODS = ("n_major", "d_major", "omega_identity")
SMALL_METHODS = ("n_major", "d_major")

ClassKey = tuple[int, int]  # (distinct primes of d, override-divisibility bits)


@dataclass(frozen=True)
class ClassCounts:
    """Exact (d, n)-pair counts grouped by divisor class.

    classes maps (omega_of_d, flags) -> count, where bit i of flags is set
    exactly when override_primes[i] divides d.  Counts are plain Python
    ints; two routes agree iff their ClassCounts compare equal.
    """

    x: int
    override_primes: tuple[int, ...]
    classes: dict[ClassKey, int]

    def total_pairs(self) -> int:
        return sum(self.classes.values())


@dataclass(frozen=True)
class RatioReport:
    x: int
    k: int
    weight: PrimeWeight
    s_full: float
    s_small: float
    ratio: float
    predicted_limit: float


@dataclass(frozen=True)
class AbcdDecomposition:
    """Split of both aggregates by divisibility by one prime p.

    S_small = h(p)*a + b and S_full = h(p)*c + d hold exactly; the exact
    rational values are kept alongside the rounded floats so identity
    residuals and the (a*v + b)/(c*v + d) prediction can be formed without
    rounding noise.
    """

    x: int
    k: int
    p: int
    weight: PrimeWeight
    a: float
    b: float
    c: float
    d: float
    a_exact: Fraction
    b_exact: Fraction
    c_exact: Fraction
    d_exact: Fraction

    @property
    def ad_minus_bc(self) -> float:
        return float(self.a_exact * self.d_exact - self.b_exact * self.c_exact)

    def predicted_ratio(self, v: float) -> float:
        """Ratio obtained by moving only the weight at p to v, all else frozen."""
        vf = Fraction(v)
        return float((self.a_exact * vf + self.b_exact) / (self.c_exact * vf + self.d_exact))


def integer_kth_root(n: int, k: int) -> int:
    """Largest r with r**k <= n, by exact integer arithmetic."""
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if k < 1:
        raise DomainError(f"k={k} must be >= 1")
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _trial_factor_squarefree(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"n={n} must be positive")
    primes = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                raise DomainError(f"n={n} is not squarefree")
            primes.append(d)
        d += 1 if d == 2 else 2
    if m > 1:
        primes.append(m)
    return primes


def _divisor_triples(primes: list[int], flag_of: dict[int, int]):
    """All divisors of prod(primes) as (value, omega, flags), by doubling."""
    triples = [(1, 0, 0)]
    for p in primes:
        fb = flag_of.get(p, 0)
        triples += [(v * p, om + 1, fl | fb) for v, om, fl in triples]
    return triples


def full_divisor_sum(n: int, w: PrimeWeight) -> float:
    """sum of h(d) over all divisors of squarefree n, by enumeration."""
    primes = _trial_factor_squarefree(n)
    if len(primes) > 25:
        raise RangeError(f"omega(n)={len(primes)} too large to enumerate divisors")
    values = [1.0]
    for p in primes:
        vp = w.value_at(p)
        values += [v * vp for v in values]
    return fsum(values)


def small_divisor_sum(n: int, k: int, w: PrimeWeight) -> float:
    """sum of h(d) over divisors d of squarefree n with d**k <= n."""
    if k < 2:
        raise DomainError(f"k={k} must be >= 2")
    primes = _trial_factor_squarefree(n)
    if len(primes) > 25:
        raise RangeError(f"omega(n)={len(primes)} too large to enumerate divisors")
    r = integer_kth_root(n, k)
    divisors = [(1, 1.0)]
    for p in primes:
        vp = w.value_at(p)
        divisors += [(d * p, v * vp) for d, v in divisors]
    return fsum(v for d, v in divisors if d <= r)


# ---------------------------------------------------------------------------
# class-count construction


def _check_override_primes(ops: tuple[int, ...], tables: SieveTables) -> None:
    if len(ops) > 16:
        raise RangeError("more than 16 override primes is unsupported")
    for p in ops:
        if p > tables.limit:
            raise RangeError(f"override prime {p} beyond table limit {tables.limit}")
        if tables.spf[p] != p:
            raise DomainError(f"override key {p} is not prime")


def _flag_of_map(ops: tuple[int, ...]) -> dict[int, int]:
    return {p: 1 << i for i, p in enumerate(ops)}


def _chunk_bounds(lo: int, hi: int, pieces: int) -> list[tuple[int, int]]:
    """Split the inclusive integer range [lo, hi] into <= pieces blocks."""
    n = hi - lo + 1
    if n <= 0:
        return []
    pieces = max(1, min(pieces, n))
    step = -(-n // pieces)
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]


def _run_chunks(worker, bounds, threads: int):
    """Evaluate worker over chunk bounds, results in chunk order."""
    if threads <= 1 or len(bounds) <= 1:
        return [worker(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, lo, hi) for lo, hi in bounds]
        return [f.result() for f in futures]


def _flags_for_range(lo: int, hi: int, ops: tuple[int, ...]) -> np.ndarray:
    flags = np.zeros(hi - lo + 1, dtype=np.int64)
    for i, q in enumerate(ops):
        first = lo + (-lo) % q
        if first <= hi:
            flags[first - lo :: q] |= 1 << i
    return flags


def _joint_histogram(
    x: int, ops: tuple[int, ...], tables: SieveTables, threads: int
) -> np.ndarray:
    """Counts of squarefree n <= x per (omega(n), flags(n)) joint key."""
    r = len(ops)
    size = 17 << r  # omega(n) <= 15 for n < 2**31, plus slack

    def worker(lo, hi):
        mask = tables.mu[lo : hi + 1] != 0
        key = tables.omega[lo : hi + 1].astype(np.int64) << r
        if r:
            key |= _flags_for_range(lo, hi, ops)
        return np.bincount(key[mask], minlength=size)

    parts = _run_chunks(worker, _chunk_bounds(1, x, threads), threads)
    total = np.zeros(size, dtype=np.int64)
    for part in parts:
        total += part
    return total


def _submasks(f: int):
    s = f
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & f


def full_class_counts(
    x: int,
    override_primes: tuple[int, ...],
    tables: SieveTables,
    method: str = "omega_identity",
    threads: int = 1,
) -> ClassCounts:
    """Pair counts for the unrestricted divisor sum, by the chosen route.

    n_major enumerates the divisors of each squarefree n directly;
    d_major walks divisors d and counts their squarefree coprime cofactors;
    omega_identity bins n by (omega, flags) and spreads each bin over
    divisor classes with binomial coefficients (for an empty override set
    this is exactly the statement that a squarefree n with omega(n) = i
    has C(i, j) divisors with j prime factors).
    """
    if not 1 <= x <= tables.limit:
        raise RangeError(f"x={x} outside table range 1..{tables.limit}")
    ops = tuple(sorted(override_primes))
    _check_override_primes(ops, tables)
    if method == "n_major":
        classes = _full_n_major(x, ops, tables, threads)
    elif method == "d_major":
        classes = _full_d_major(x, ops, tables, threads)
    elif method == "omega_identity":
        classes = _full_omega_identity(x, ops, tables, threads)
    else:
        raise ConfigurationError(f"unknown method {method!r}; expected one of {FULL_METHODS}")
    return ClassCounts(x=x, override_primes=ops, classes=dict(classes))


def _full_n_major(x, ops, tables, threads) -> Counter:
    flag_of = _flag_of_map(ops)
    mu = tables.mu

    def worker(lo, hi):
        out: Counter = Counter()
        for n in range(lo, hi + 1):
            if mu[n] == 0:
                continue
            for _, om, fl in _divisor_triples(distinct_primes(n, tables), flag_of):
                out[(om, fl)] += 1
        return out

    return _merge_counters(_run_chunks(worker, _chunk_bounds(1, x, threads), threads))


def _full_d_major(x, ops, tables, threads) -> Counter:
    flag_of = _flag_of_map(ops)
    mu = tables.mu

    def worker(lo, hi):
        out: Counter = Counter()
        for d in range(lo, hi + 1):
            if mu[d] == 0:
                continue
            primes = distinct_primes(d, tables)
            cnt = squarefree_coprime_count_range(1, x // d, primes, tables)
            if cnt:
                fl = 0
                for p in primes:
                    fl |= flag_of.get(p, 0)
                out[(len(primes), fl)] += cnt
        return out

    return _merge_counters(_run_chunks(worker, _chunk_bounds(1, x, threads), threads))


def _full_omega_identity(x, ops, tables, threads) -> Counter:
    r = len(ops)
    hist = _joint_histogram(x, ops, tables, threads)
    classes: Counter = Counter()
    for key in np.flatnonzero(hist):
        count = int(hist[key])
        i, f_n = int(key) >> r, int(key) & ((1 << r) - 1)
        free = i - f_n.bit_count()
        for s in _submasks(f_n):
            base_om = s.bit_count()
            for j in range(free + 1):
                classes[(base_om + j, s)] += comb(free, j) * count
    return classes


def small_class_counts(
    x: int,
    k: int,
    override_primes: tuple[int, ...],
    tables: SieveTables,
    method: str = "d_major",
    threads: int = 1,
) -> ClassCounts:
    """Pair counts restricted to small divisors (d**k <= n)."""
    if not 1 <= x <= tables.limit:
        raise RangeError(f"x={x} outside table range 1..{tables.limit}")
    if k < 2:
        raise DomainError(f"k={k} must be >= 2")
    ops = tuple(sorted(override_primes))
    _check_override_primes(ops, tables)
    if method == "n_major":
        classes = _small_n_major(x, k, ops, tables, threads)
    elif method == "d_major":
        classes = _small_d_major(x, k, ops, tables, threads)
    else:
        raise ConfigurationError(f"unknown method {method!r}; expected one of {SMALL_METHODS}")
    return ClassCounts(x=x, override_primes=ops, classes=dict(classes))


def _small_n_major(x, k, ops, tables, threads) -> Counter:
    flag_of = _flag_of_map(ops)
    mu = tables.mu

    def worker(lo, hi):
        out: Counter = Counter()
        for n in range(lo, hi + 1):
            if mu[n] == 0:
                continue
            r_n = integer_kth_root(n, k)
            for val, om, fl in _divisor_triples(distinct_primes(n, tables), flag_of):
                if val <= r_n:
                    out[(om, fl)] += 1
        return out

    return _merge_counters(_run_chunks(worker, _chunk_bounds(1, x, threads), threads))


def _small_d_major(x, k, ops, tables, threads) -> Counter:
    flag_of = _flag_of_map(ops)
    mu = tables.mu
    rmax = integer_kth_root(x, k)

    def worker(lo, hi):
        out: Counter = Counter()
        for d in range(lo, hi + 1):
            if mu[d] == 0:
                continue
            primes = distinct_primes(d, tables)
            # n = d*m with d**k <= n <= x, i.e. m in [d**(k-1), x//d]
            cnt = squarefree_coprime_count_range(d ** (k - 1), x // d, primes, tables)
            if cnt:
                fl = 0
                for p in primes:
                    fl |= flag_of.get(p, 0)
                out[(len(primes), fl)] += cnt
        return out

    return _merge_counters(_run_chunks(worker, _chunk_bounds(1, rmax, threads), threads))


def _merge_counters(parts) -> Counter:
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total


# ---------------------------------------------------------------------------
# weighting


def weighted_total(counts: ClassCounts, w: PrimeWeight) -> Fraction:
    """Exact rational value of the weighted aggregate.

    Weights are taken at their exact binary-float values, so algebraic
    identities between aggregates hold with no rounding at all.
    """
    missing = set(w.overrides) - set(counts.override_primes)
    if missing:
        raise DomainError(
            f"counts were built without override primes {sorted(missing)}"
        )
    base = Fraction(w.base_c)
    ov = [Fraction(w.value_at(p)) for p in counts.override_primes]
    total = Fraction(0)
    for (om, fl), count in counts.classes.items():
        free = om - fl.bit_count()
        val = base**free if free else Fraction(1)
        for i, vf in enumerate(ov):
            if fl >> i & 1:
                val *= vf
        total += count * val
    return total


def weighted_total_float(counts: ClassCounts, w: PrimeWeight) -> float:
    return float(weighted_total(counts, w))


# ---------------------------------------------------------------------------
# public aggregates


def s_full(
    x: int,
    w: PrimeWeight,
    tables: SieveTables,
    method: str = "omega_identity",
    threads: int = 1,
) -> float:
    """Full averaged divisor sum  sum_{n<=x} mu^2(n) sum_{d|n} h(d)."""
    counts = full_class_counts(x, w.override_primes(), tables, method, threads)
    return weighted_total_float(counts, w)


def s_small(
    x: int,
    k: int,
    w: PrimeWeight,
    tables: SieveTables,
    method: str = "d_major",
    threads: int = 1,
) -> float:
    """Small-divisor averaged sum  sum_{n<=x} mu^2(n) sum_{d|n, d^k<=n} h(d)."""
    counts = small_class_counts(x, k, w.override_primes(), tables, method, threads)
    return weighted_total_float(counts, w)


def ratio(
    x: int,
    k: int,
    w: PrimeWeight,
    tables: SieveTables,
    threads: int = 1,
) -> RatioReport:
    """Small-to-full ratio with the constant-weight limit k**(-c) attached."""
    ops = w.override_primes()
    full_exact = weighted_total(
        full_class_counts(x, ops, tables, "omega_identity", threads), w
    )
    small_exact = weighted_total(
        small_class_counts(x, k, ops, tables, "d_major", threads), w
    )
    return RatioReport(
        x=x,
        k=k,
        weight=w,
        s_full=float(full_exact),
        s_small=float(small_exact),
        ratio=float(small_exact / full_exact),
        predicted_limit=float(k) ** (-w.base_c),
    )


def h_series(x: int, w: PrimeWeight, p: int, tables: SieveTables) -> float:
    """Partial sum over squarefree j <= x, p not dividing j, of g(j)h(j)/j.

    Accumulated by exact compensated summation in ascending j order.
    """
    terms = _series_terms(x, w, p, tables)
    return fsum(terms[np.flatnonzero(terms)])


def h_series_cumulative(x: int, w: PrimeWeight, p: int, tables: SieveTables) -> np.ndarray:
    """Array H[0..x] of partial sums of the series above (H[0] = 0).

    Same term order and compensation as h_series, so H[x] == h_series(x).
    """
    terms = _series_terms(x, w, p, tables)
    idx = np.flatnonzero(terms)
    running = np.zeros(len(idx))
    s = 0.0
    comp = 0.0
    for i, v in enumerate(terms[idx]):
        # Neumaier update: track the rounding error of each addition.
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        running[i] = s + comp
    out = np.zeros(x + 1)
    out[idx] = running
    np.maximum.accumulate(out, out=out)  # terms are >= 0, so H is nondecreasing
    return out


def _series_terms(x: int, w: PrimeWeight, p: int, tables: SieveTables) -> np.ndarray:
    if not 1 <= x <= tables.limit:
        raise RangeError(f"x={x} outside table range 1..{tables.limit}")
    if p > tables.limit or tables.spf[p] != p:
        raise DomainError(f"p={p} is not a prime in the table")
    mask = np.array(tables.mu[: x + 1] != 0)
    mask[0] = False
    if p <= x:
        mask[p::p] = False
    ops = w.override_primes()
    exponent = tables.omega[: x + 1].astype(np.int64)
    hv_adjust = np.ones(x + 1)
    for q in ops:
        if q <= x:
            exponent[q::q] -= 1
            hv_adjust[q::q] *= w.overrides[q]
    hv = np.power(float(w.base_c), exponent) * hv_adjust
    gv = np.ones(x + 1)
    for q in map(int, primes_up_to(x)):
        gv[q::q] *= q / (q + 1.0)
    j = np.arange(x + 1, dtype=np.float64)
    j[0] = 1.0
    terms = np.where(mask, hv * gv / j, 0.0)
    return terms


def abcd(
    x: int,
    k: int,
    w: PrimeWeight,
    p: int,
    tables: SieveTables,
    method: str = "auto",
    threads: int = 1,
) -> AbcdDecomposition:
    """Exact prime-split of both aggregates at p.

    Writing every divisor d as either p*m (p | d) or d (p not dividing d)
    splits S_small into h(p)*a + b and S_full into h(p)*c + d, where the
    four pieces are themselves class-counted double sums that do not
    involve the weight at p.  Identities hold exactly by construction of
    the counts; see compose_decomposition for the integer-level statement.
    """
    a_cc, b_cc, c_cc, d_cc = abcd_class_counts(x, k, p, w.override_primes(), tables, method, threads)
    a_e = weighted_total(a_cc, w)
    b_e = weighted_total(b_cc, w)
    c_e = weighted_total(c_cc, w)
    d_e = weighted_total(d_cc, w)
    return AbcdDecomposition(
        x=x, k=k, p=p, weight=w,
        a=float(a_e), b=float(b_e), c=float(c_e), d=float(d_e),
        a_exact=a_e, b_exact=b_e, c_exact=c_e, d_exact=d_e,
    )


def abcd_class_counts(
    x: int,
    k: int,
    p: int,
    override_primes: tuple[int, ...],
    tables: SieveTables,
    method: str = "auto",
    threads: int = 1,
):
    """Class counts (a, b, c, d) for the prime-split at p.

    All four are keyed over override_primes plus p; since their outer
    variables are never divisible by p, the p bit is always clear in their
    own keys.  method "auto" walks divisors for the small pieces (their
    range is x**(1/k)) and bins n for the large ones; "d_major" and
    "n_major" force a single route for all four, for cross-checking.
    """
    if not 1 <= x <= tables.limit:
        raise RangeError(f"x={x} outside table range 1..{tables.limit}")
    if k < 2:
        raise DomainError(f"k={k} must be >= 2")
    if p > tables.limit:
        raise RangeError(f"p={p} beyond table limit {tables.limit}")
    if tables.spf[p] != p:
        raise DomainError(f"p={p} is not prime")
    ops = tuple(sorted(set(override_primes) | {p}))
    _check_override_primes(ops, tables)
    pbit = 1 << ops.index(p)

    if method == "auto":
        small_cls = _small_d_major(x, k, ops, tables, threads)
        a_cls, b_cls = _split_at_prime(small_cls, pbit)
        c_cls, d_cls = _cd_via_histogram(x, ops, pbit, tables, threads)
    elif method == "d_major":
        small_cls = _small_d_major(x, k, ops, tables, threads)
        a_cls, b_cls = _split_at_prime(small_cls, pbit)
        full_cls = _full_d_major(x, ops, tables, threads)
        c_cls, d_cls = _split_at_prime(full_cls, pbit)
    elif method == "n_major":
        small_cls = _small_n_major(x, k, ops, tables, threads)
        a_cls, b_cls = _split_at_prime(small_cls, pbit)
        full_cls = _full_n_major(x, ops, tables, threads)
        c_cls, d_cls = _split_at_prime(full_cls, pbit)
    else:
        raise ConfigurationError(
            f"unknown method {method!r}; expected one of ('auto', 'd_major', 'n_major')"
        )

    mk = lambda cls: ClassCounts(x=x, override_primes=ops, classes=dict(cls))
    return mk(a_cls), mk(b_cls), mk(c_cls), mk(d_cls)


def _split_at_prime(classes: Counter, pbit: int) -> tuple[Counter, Counter]:
    """Split (omega, flags) classes by the p bit; p-classes shift down by one prime."""
    with_p: Counter = Counter()
    without_p: Counter = Counter()
    for (om, fl), count in classes.items():
        if fl & pbit:
            with_p[(om - 1, fl & ~pbit)] += count
        else:
            without_p[(om, fl)] += count
    return with_p, without_p


def _cd_via_histogram(x, ops, pbit, tables, threads) -> tuple[Counter, Counter]:
    """c and d pieces from the joint (omega, flags) histogram of n.

    For each bin of n, divisors avoiding p are subsets of the remaining
    primes; bins where p | n additionally feed the c piece (their divisor
    set is that of n/p).
    """
    r = len(ops)
    hist = _joint_histogram(x, ops, tables, threads)
    c_cls: Counter = Counter()
    d_cls: Counter = Counter()
    for key in np.flatnonzero(hist):
        count = int(hist[key])
        i, f_n = int(key) >> r, int(key) & ((1 << r) - 1)
        has_p = bool(f_n & pbit)
        f_avail = f_n & ~pbit
        free = i - f_n.bit_count()
        for s in _submasks(f_avail):
            base_om = s.bit_count()
            for j in range(free + 1):
                add = comb(free, j) * count
                d_cls[(base_om + j, s)] += add
                if has_p:
                    c_cls[(base_om + j, s)] += add
    return c_cls, d_cls


def compose_decomposition(
    part_with_p: ClassCounts, part_without_p: ClassCounts, p: int
) -> ClassCounts:
    """Reassemble a split: shift the p-part up by p and add the rest.

    The result must equal the undecomposed ClassCounts exactly; tests and
    the CLI use this as the integer-level identity check.
    """
    ops = part_with_p.override_primes
    if p not in ops or part_without_p.override_primes != ops:
        raise DomainError("decomposition parts must share an override set containing p")
    pbit = 1 << ops.index(p)
    classes: Counter = Counter()
    for (om, fl), count in part_with_p.classes.items():
        classes[(om + 1, fl | pbit)] += count
    for (om, fl), count in part_without_p.classes.items():
        classes[(om, fl)] += count
    return ClassCounts(x=part_with_p.x, override_primes=ops, classes=dict(classes))
