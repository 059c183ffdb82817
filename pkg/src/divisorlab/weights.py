"""Multiplicative prime weights and companion multiplicative quantities.

A weight assigns a base constant to every prime, with finitely many
per-prime overrides; it is only ever evaluated on squarefree integers,
where its value is the product of its values at the distinct primes.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, RangeError
from .sieve import SieveTables, distinct_primes, factor_squarefree, primes_up_to


@dataclass(frozen=True)
class PrimeWeight:
    """Multiplicative weight: base_c at every prime except finitely many overrides.

    In strict mode (the default) all values must stay strictly below
    1/(k_context - 1), the regime where the averaged small-divisor
    comparison is meaningful; non-strict mode lifts the cap so the
    breakdown region can be explored.
    """

    base_c: float
    overrides: dict[int, float] = field(default_factory=dict)
    k_context: int = 2
    strict_mode: bool = True

    def __post_init__(self):
        if self.k_context < 2:
            raise DomainError(f"k_context={self.k_context} must be >= 2")
        if self.base_c < 0:
            raise DomainError(f"base_c={self.base_c} must be >= 0")
        for p, v in self.overrides.items():
            if p < 2:
                raise DomainError(f"override key {p} is not a prime")
            if v < 0:
                raise DomainError(f"override value {v} at p={p} must be >= 0")
        if self.strict_mode:
            cap = 1.0 / (self.k_context - 1)
            bad = [v for v in (self.base_c, *self.overrides.values()) if v >= cap]
            if bad:
                raise DomainError(
                    f"strict mode requires every value < 1/(k-1) = {cap}; got {bad}"
                )

    def value_at(self, p: int) -> float:
        return self.overrides.get(p, self.base_c)

    def override_primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.overrides))

    def with_override(self, p: int, v: float) -> "PrimeWeight":
        ov = dict(self.overrides)
        ov[p] = v
        return PrimeWeight(self.base_c, ov, self.k_context, self.strict_mode)


def h_eval(n: int, w: PrimeWeight, tables: SieveTables) -> float:
    """Weight of a squarefree n: product of per-prime values; h_eval(1) = 1."""
    if n > tables.limit:
        primes = factor_squarefree(n, tables)
    else:
        if tables.mu[n] == 0:
            raise DomainError(f"n={n} is not squarefree")
        primes = distinct_primes(n, tables)
    out = 1.0
    for p in primes:
        out *= w.value_at(p)
    return out


def h_eval_exact(n: int, w: PrimeWeight, tables: SieveTables) -> Fraction:
    """Exact-rational twin of h_eval (Fraction of the binary float values)."""
    primes = factor_squarefree(n, tables)
    out = Fraction(1)
    for p in primes:
        out *= Fraction(w.value_at(p))
    return out


def g_eval(m: int, tables: SieveTables) -> float:
    """Product of p/(p+1) over the distinct primes of squarefree m; g(1) = 1."""
    out = 1.0
    for p in factor_squarefree(m, tables):
        out *= p / (p + 1)
    return out


def tau_k_squarefree(n: int, k: int, tables: SieveTables) -> int:
    """Number of ordered k-tuples of positives with product n (n squarefree).

    For squarefree n each distinct prime independently lands in one of the
    k slots, so the count is k**omega(n).

    Raises:
        RangeError: if k**omega(n) exceeds 64 bits.
    """
    if k < 2:
        raise DomainError(f"k={k} must be >= 2")
    om = len(factor_squarefree(n, tables))
    value = k**om
    if value >= 2**63:
        raise RangeError(f"k**omega = {k}**{om} does not fit in 64 bits")
    return value


def e_of_m(m: int, tables: SieveTables) -> float:
    """Exact divisor sum of 1/sqrt(d) over the divisors of squarefree m.

    Enumerates all 2**omega(m) divisors and adds compensated; bounded by
    2 * tau(m)**(2/3) for every squarefree m.
    """
    primes = factor_squarefree(m, tables)
    if len(primes) > 25:
        raise RangeError(f"omega(m)={len(primes)} too large for divisor enumeration")
    divisors = [1]
    for p in primes:
        divisors += [d * p for d in divisors]
    return math.fsum(1.0 / math.sqrt(d) for d in divisors)


def e_table(upper: int, tables: SieveTables) -> np.ndarray:
    """Vectorized table of e_of_m for all m = 0..upper (junk at non-squarefree m).

    Uses the multiplicative product form prod (1 + 1/sqrt(p)); agrees with
    the divisor-sum enumeration because the summand is multiplicative.
    """
    if upper > tables.limit:
        raise RangeError(f"upper={upper} beyond table limit")
    out = np.ones(upper + 1)
    for p in map(int, primes_up_to(upper)):
        out[p::p] *= 1.0 + 1.0 / math.sqrt(p)
    return out
