#!/usr/bin/env python3
"""Build the factor tables and look at what lives inside them.

Everything else in divisorlab reads these three arrays: smallest prime
factor, the Mobius function, and the distinct-prime count.  This script
builds them at 10^6, checks the classical squarefree density 6/pi^2
against the exact count, and prints how squarefree integers distribute
over omega classes.
"""

import math

from divisorlab import build_sieve, omega_class_counts, squarefree_coprime_count

LIMIT = 10**6

tables = build_sieve(LIMIT)
print(f"tables built up to {LIMIT:,}")
print(f"  spf[30] = {tables.spf[30]}, mu[30] = {tables.mu[30]}, omega[30] = {tables.omega[30]}")

print("\nexact squarefree counts vs (6/pi^2) x:")
for x in (10**3, 10**4, 10**5, 10**6):
    q = squarefree_coprime_count(x, 1, tables)
    density = 6 / math.pi**2 * x
    print(f"  x = {x:>9,}: count = {q:>7,}   (6/pi^2)x = {density:>11.1f}   gap = {q - density:+.1f}")

print("\nsquarefree n <= 1e6 per omega class (distinct prime divisors):")
for om, count in sorted(omega_class_counts(LIMIT, tables).items()):
    bar = "#" * max(1, count * 60 // 300000)
    print(f"  omega = {om}: {count:>7,}  {bar}")

print("\ncoprimality restriction: squarefree n <= 1e6 coprime to 30:")
q30 = squarefree_coprime_count(LIMIT, 30, tables)
g30 = (2 / 3) * (3 / 4) * (5 / 6)
print(f"  exact {q30:,} vs g(30)*(6/pi^2)*x = {g30 * 6 / math.pi**2 * LIMIT:,.1f}")
