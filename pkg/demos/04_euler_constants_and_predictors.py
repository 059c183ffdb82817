#!/usr/bin/env python3
"""The product constants behind every main term, and how well they predict.

f0 and f1 are Euler products that normalize sums of z^omega(n) over
squarefree n.  This script evaluates them with explicit tail budgets,
verifies f1(c) = (pi^2/6) f0(1+c) numerically, and then divides exact
sums by their predictions to watch the quotient drift toward 1.
"""

from divisorlab import ZETA2, build_sieve, f0, f1, selberg_trend

print("truncated Euler products with tail budgets:")
for z in (0.5, 1.0, 2.0):
    c0 = f0(z)
    c1 = f1(z)
    print(f"  z = {z}: f0 = {c0.value:.8f} (tail <= {c0.tail_bound:.1e}), "
          f"f1 = {c1.value:.8f} (tail <= {c1.tail_bound:.1e})")

print(f"\nf0(1) * zeta(2) = {f0(1.0).value * ZETA2:.9f}  (telescopes to 1)")

print("\nshift identity f1(c) = (pi^2/6) f0(1+c):")
for c in (0.1, 0.3, 0.5, 0.7, 0.9):
    lhs = f1(c).value
    rhs = ZETA2 * f0(1 + c).value
    print(f"  c = {c}: {lhs:.9f} vs {rhs:.9f}  (diff {lhs - rhs:+.2e})")

tables = build_sieve(10**6)
print("\nexact sum of z^omega(n) mu^2(n) over its predictor, z = 2:")
rep = selberg_trend(2.0, False, [10**3, 10**4, 10**5, 10**6], tables)
for x, obs in zip(rep.grid, rep.observed):
    print(f"  x = {x:>9,}: {obs:.5f}")
print(f"  ({rep.notes})")
