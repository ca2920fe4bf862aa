"""Minimal sub-action and the finite-horizon approach to beta on a period-2 orbit."""

from fractions import Fraction

from weakkam import finite_horizon_bound, graph_from_edges, max_cycle_mean, minimal_subaction

# 0 -> 1 pays 10, 1 -> 0 pays nothing; every orbit alternates
g = graph_from_edges({(0, 1): Fraction(10), (1, 0): Fraction(0)})
beta = max_cycle_mean(g)
u_A = minimal_subaction(g, beta)
print("beta =", beta)
print("u_A  =", {v[0]: str(x) for v, x in u_A.u.items()})  # landing on 1 right after the payout

# (1/k) sup S_k A decreases towards beta with O(1/k) error
for k in range(1, 11):
    fh = finite_horizon_bound(g, k)
    print(f"k={k:2d}  sup S_k A / k = {str(fh):>5}   gap = {fh - beta}")
