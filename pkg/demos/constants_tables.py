#!/usr/bin/env python3
"""Walk through the constant schemes: table, closed forms, asymptotics."""

import math

from bhbounds import SchemeId, asymptotic_ratio, closed_form_new, constant, table

print("=" * 64)
print("  Constant schemes for m-linear forms on the sup-norm cube")
print("=" * 64)

print(
    """
Three bounds on the smallest constant C_m with

    (sum |T(e_i1, ..., e_im)|^(2m/(m+1)))^((m+1)/2m)  <=  C_m ||T||

for every real m-linear form T:

  classic   2^((m-1)/2)
  cor52     one-step recurrence through Khinchine constants
  new       two-step recurrence, the sharpest of the three
"""
)

tab = table(3, 14)
print(f"{'m':>3} {'new':>8} {'cor52':>8} {'classic':>8}")
for m, row in tab.rows:
    print(f"{m:>3} " + " ".join(f"{c.value:>8.3f}" for c in row))

print()
print("Exact exponents while the recurrence stays on the power-of-two branch:")
for m in range(2, 15):
    c = constant(SchemeId.NEW_REAL, m)
    closed = closed_form_new(m)
    tag = "even" if m % 2 == 0 else "odd"
    print(
        f"  m={m:>2} ({tag:>4}): recurrence 2^({c.exact_exponent}), "
        f"closed form 2^({closed.exact_exponent})"
    )

print()
print("Past m = 14 the Gamma branch takes over and values go float-only:")
for m in (15, 16, 20):
    c = constant(SchemeId.NEW_REAL, m)
    print(f"  m={m:>2}: {c.value:.6f}  (exact exponent: {c.exact_exponent})")

print()
print("Two-step growth ratios C_m / C_(m-2)^((m-2)/m) and their limits:")
print(f"{'m':>7} {'new':>10} {'cor52':>10} {'classic':>10}")
for m in (10, 100, 1000, 10000):
    print(
        f"{m:>7} "
        f"{asymptotic_ratio(SchemeId.NEW_REAL, m):>10.6f} "
        f"{asymptotic_ratio(SchemeId.COR52_REAL, m):>10.6f} "
        f"{asymptotic_ratio(SchemeId.CLASSIC, m):>10.6f}"
    )
print(f"{'limit':>7} {math.sqrt(2):>10.6f} {2.0:>10.6f} {4.0:>10.6f}")
print()
print("The new scheme grows like sqrt(2) per two steps; the others like 2 and 4.")
