"""Countable alphabet: a coercive potential pins maximizing measures to a finite truncation."""

from fractions import Fraction

from weakkam import (
    CountableModel,
    MarkovGraph,
    Potential,
    TailBound,
    calibrated_subaction,
    compute_I_hat,
    compute_primitivity,
    level_graph,
    plateau_scan,
    support_bound_check,
)
from weakkam.truncation import explicit_summary

# full shift on the naturals, A(x) = -|x_0 - 2|; symbols 0..10 are tabulated,
# past them the tail bound tau(i) = 2 - i stands in for the potential
i_max = 10
g = MarkovGraph.full(range(i_max + 1))
A = Potential(1, {(i,): Fraction(-abs(i - 2)) for i in range(i_max + 1)})
model = CountableModel(g, A, i_max, TailBound.affine(-1, 2), sup_A=Fraction(0), var_total=Fraction(0))

cert = compute_primitivity(model.essential, [2])
summary = explicit_summary(model, cert)
I_hat = compute_I_hat(model, summary, cert)
print(f"F = {cert.F}, K0 = {cert.K0}, I_hat = {I_hat}")

rep = plateau_scan(model, cert, I_hat, window=4)
for I, b in sorted(rep.beta_by_I.items()):
    print(f"  beta on symbols 0..{I}: {b}")
print("plateau:", rep.plateau_ok, " critical edges:", rep.omega.critical_edges)

top = level_graph(model, i_max)
for eta in (Fraction(1, 2), Fraction(3), Fraction(12)):
    I = support_bound_check(model, calibrated_subaction(top), eta, top)
    print(f"  every edge leaving a symbol > {I} has defect below -{eta}")
