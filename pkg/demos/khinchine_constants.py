#!/usr/bin/env python3
"""The optimal Khinchine constants A_p and where their two formulas meet."""

from bhbounds import khinchine_A, khinchine_A2r, khinchine_B
from bhbounds.khinchine import gamma_branch, haagerup_crossover, power_branch

print("=" * 64)
print("  Optimal lower Khinchine constants A_p on (0, 2]")
print("=" * 64)

p0 = haagerup_crossover()
print(
    f"""
A_p is the best constant with A_p ||a||_2 <= (E |sum a_n r_n|^p)^(1/p)
for Rademacher signs r_n.  Two closed forms compete:

    power-of-two:   2^(1/2 - 1/p)
    gamma formula:  sqrt(2) (Gamma((p+1)/2)/sqrt(pi))^(1/p)

The optimal constant is the power-of-two expression up to the crossover
p0 = {p0:.12f} and the gamma expression beyond it.
"""
)

print(f"{'p':>6} {'power-of-two':>14} {'gamma':>14} {'optimal':>10}  branch")
for p in (0.5, 1.0, 4 / 3, 1.5, 1.8, p0, 1.86, 26 / 14, 1.95, 2.0):
    c = khinchine_A(p)
    print(
        f"{p:>6.4f} {power_branch(p):>14.10f} {gamma_branch(p):>14.10f} "
        f"{c.value:>10.6f}  {c.branch.value}"
    )

print()
print("B_p = 1 for every p <= 2, so the upper half of the inequality is free:")
for p in (1.0, 4 / 3, 2.0):
    print(f"  B_{p:.4g} = {khinchine_B(p)}")

print()
print("A_{2,r} = 1/A_r transfers an L^r chaos moment up to L^2:")
for r in (1.0, 4 / 3, 1.5, 26 / 14, 2.0):
    print(f"  A_2,{r:.4f} = {khinchine_A2r(r):.10f}")

print()
print("The value at r = 26/14 = 1.857... is the one that drives the first")
print("Gamma-branch step of the recurrences (it is ~1/0.9736).")
