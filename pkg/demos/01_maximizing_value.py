"""Maximizing value, calibrated sub-action and the critical set on a 3-symbol shift."""

from fractions import Fraction

from weakkam import (
    MarkovGraph,
    Potential,
    calibrated_subaction,
    check_certificate,
    compute_primitivity,
    critical_structure,
    defects,
    max_cycle_mean,
    maximizing_set,
    summarize,
    weighted_graph,
)

# transitions 0->1, 1->0, 1->2, 2->2, 2->0 with a weight on every allowed pair
weights = {(0, 1): 2, (1, 0): 4, (1, 2): 0, (2, 2): 5, (2, 0): 0}
g = MarkovGraph((0, 1, 2), frozenset(weights))
A = Potential(2, {w: Fraction(v) for w, v in weights.items()})
wg = weighted_graph(g, A)

beta = max_cycle_mean(wg)
print("beta =", beta)  # the loop at 2 beats the 2-cycle (mean 3) and the 3-cycle (mean 2/3)

u = calibrated_subaction(wg)
print("calibrated u =", {v[0]: str(x) for v, x in u.u.items()})
for e, d in sorted(defects(wg, u).items()):
    print(f"  defect {e[0]}->{e[1]}: {d}")  # all <= 0, one zero in-edge per vertex

cs = critical_structure(wg, u)
print("tight edges   :", cs.tight_edges)
print("critical edges:", cs.critical_edges)

for cls in maximizing_set(wg, cs):
    print("maximizing measure", cls.measure.to_json(), "integral", cls.integral)

# the oscillation of u is controlled by variation plus K0 times the spread of A
cert = compute_primitivity(g, [0, 1, 2])
s = summarize(A, cert)
print(f"osc(u) = {u.osc} <= {s.primitive_bound(cert.K0)}  (K0 = {cert.K0})")
print("certificate:", check_certificate(wg, u).verdict)
