#!/usr/bin/env python3
"""How much of an averaged divisor sum do the small divisors carry?

For a multiplicative weight equal to c at every prime, sum h(d) over all
divisors of each squarefree n <= x, and separately over only the small
divisors (d^k <= n).  The small share tends to k^-c, so the full sum
exceeds the small one by a bounded factor -- at most 2 + o(1) over the
admissible (k, c) range, since k^c <= 2 whenever c < 1/(k-1) and k >= 2.

Both aggregates are exact: integer pair counts per divisor class,
weighted in rational arithmetic, rounded once.
"""

from divisorlab import PrimeWeight, build_sieve, ratio, ratio_convergence

K = 3
C = 0.3
GRID = [10**3, 10**4, 10**5, 10**6]

tables = build_sieve(GRID[-1])
target = K**-C
print(f"k = {K}, c = {C}: predicted limiting share {K}^-{C} = {target:.6f}\n")

w = PrimeWeight(C, k_context=K)
print(f"{'x':>9}  {'s_full':>14}  {'s_small':>14}  {'ratio':>9}  {'full/small':>10}")
for x in GRID:
    rep = ratio(x, K, w, tables)
    print(f"{x:>9,}  {rep.s_full:>14.2f}  {rep.s_small:>14.2f}"
          f"  {rep.ratio:>9.6f}  {rep.s_full / rep.s_small:>10.6f}")

rep = ratio_convergence(K, C, GRID, tables)
print(f"\ntrend verdict: {rep.verdict}")
print(f"  {rep.notes}")
print("\nnote: at desk scale the ratio crosses the limit and re-approaches it")
print("from below, so the drift clause can fail even while every value stays")
print("well inside the 15% terminal window.")
