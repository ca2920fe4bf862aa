"""Fast max-plus routines against exhaustive enumeration on seeded random graphs."""

import time

from weakkam.maxplus import finite_horizon_bound, max_cycle_mean, minimal_subaction
from weakkam.oracle import (
    brute_beta,
    brute_finite_horizon,
    brute_minimal_subaction,
    generate_instance,
)

start = time.perf_counter()
mismatches, skipped = 0, 0
for seed in range(1, 51):
    g, skips = generate_instance(seed)
    skipped += skips
    beta = max_cycle_mean(g)
    same = beta == brute_beta(g)
    same &= minimal_subaction(g, beta).u == brute_minimal_subaction(g, beta, 2 * len(g.vertices))
    same &= all(finite_horizon_bound(g, k) == brute_finite_horizon(g, k) for k in range(1, 7))
    mismatches += not same
    if seed <= 5:
        print(f"seed {seed}: {len(g.vertices)} vertices, {len(g.edges)} edges, beta = {beta}")
print(f"50 instances, {mismatches} mismatches, {skipped} empty draws skipped, "
      f"{time.perf_counter() - start:.2f}s")
