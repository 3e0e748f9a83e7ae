#!/usr/bin/env python3
"""Run every verification suite once and show the aggregated reports."""

import numpy as np

from bhbounds import (
    check_blei,
    check_khinchine,
    check_multiple_summing,
    check_rademacher_tensor,
    run_bh_trials,
    run_blei_suite,
    run_kcc_suite,
    run_khinchine_suite,
    run_tensor_suite,
)

print("=" * 64)
print("  Exact-enumeration verification of the supporting inequalities")
print("=" * 64)

print(
    """
Each suite draws random instances and checks its inequality with the
probabilistic side computed exactly (all 2^N sign patterns enumerated),
so a failure would be a genuine counterexample, not sampling noise.
"""
)

print("Single instances first:")
res = check_khinchine(np.array([1.0, 1.0]) / np.sqrt(2.0), 4 / 3)
print(f"  two-sided moment check at p=4/3:  lhs={res['lhs']:.10f}  mid={res['mid']:.10f}")
print("    (equality on the left: (1,1)/sqrt(2) is the extremal vector)")

res = check_blei([[1.0, 2.0], [3.0, 4.0]], q=2.0, s1=4 / 3, s2=1.5)
print(f"  mixed-norm matrix bound:          lhs={res['lhs']:.6f} <= rhs={res['rhs']:.6f}")

res = check_rademacher_tensor(np.array([[1.0, 1.0], [1.0, -1.0]]), r=4 / 3)
print(f"  chaos-moment tensor bound:        lhs={res['lhs']:.6f} <= rhs={res['rhs']:.6f}")

print()
print("Now the randomized suites (seed 0 everywhere):")
reports = [
    run_khinchine_suite(count=100, seed=0),
    run_kcc_suite(count=100, seed=0),
    run_blei_suite(count=1000, seed=0),
    run_tensor_suite(count=200, seed=0),
    run_bh_trials(2, 2, 10_000, seed=0),
    run_bh_trials(3, 3, 1_000, seed=0),
    check_multiple_summing(2, 2, 3, 1_000, seed=0),
]
print(f"{'suite':>10} {'trials':>7} {'failures':>9} {'worst margin':>14} {'max ratio':>11}")
for rep in reports:
    print(
        f"{rep.suite:>10} {rep.trials:>7} {rep.failures:>9} "
        f"{rep.worst_margin:>14.6e} {rep.max_ratio:>11.8f}"
    )

print()
print("The m=2 trials hit max ratio sqrt(2) = 1.41421356...: random sign")
print("matrices stumble onto the extremal example, and never go past it.")
