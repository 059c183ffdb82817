#!/usr/bin/env python3
"""Raising the weight at a single prime lowers the small-divisor share.

Fixing every other prime at c and moving only h(p), the ratio becomes a
Mobius quotient (A v + B) / (C v + D) in v = h(p), with A, B, C, D exact
double sums split by divisibility by p.  It decreases in v exactly when
AD - BC < 0.  The scan below recomputes the full ratio at each v and
confirms it matches the quotient to machine precision.
"""

from divisorlab import PrimeWeight, abcd, build_sieve, monotonicity_scan

X = 10**5
K = 3
C = 0.3
V_GRID = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]

tables = build_sieve(X)

for p in (2, 5, 13):
    dec = abcd(X, K, PrimeWeight(C, k_context=K), p, tables)
    rep = monotonicity_scan(X, K, C, p, V_GRID, tables)
    print(f"p = {p}: A = {dec.a:.2f}, B = {dec.b:.2f}, C = {dec.c:.2f}, "
          f"D = {dec.d:.2f}, AD-BC = {dec.ad_minus_bc:.4g}")
    row = "   ".join(f"{v:.1f} -> {r:.6f}" for v, r in zip(rep.grid, rep.observed))
    print(f"  ratio by h({p}): {row}")
    print(f"  verdict: {rep.verdict} "
          f"(max deviation from quotient {rep.extra['max_rel_deviation']:.1e})\n")
