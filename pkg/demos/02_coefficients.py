"""The coefficient families behind the integral-geometric formulas.

Prints a d-coefficient table, shows the classical s=0 collapse, and checks the
recombination identities between the specialised families numerically.
"""

import math

from tensorgeo import alpha, cor38_coeff, d_coeff, iota, kappa_coeff, lambda_coeff

n, j, k, s, l = 3, 1, 2, 2, 0
print(f"d-coefficients for n={n}, j={j}, k={k}, s={s}, l={l}:")
print("  i  m  value")
for m in range(s // 2 + 1):
    for i in range(m + 1):
        print(f"  {i}  {m}  {d_coeff(n, j, k, s, l, i, m):.10f}")

print("\nAt s=0 the single coefficient collapses to the classical one:")
for (n, j, k) in [(2, 0, 1), (3, 1, 2), (4, 1, 3)]:
    print(f"  d(n={n},j={j},k={k},s=0) = {d_coeff(n, j, k, 0, 0, 0, 0):.10f}"
          f"   alpha = {alpha(n, j, k):.10f}")

print("\nkappa is a fixed recombination of d-coefficients (l=0 and l=1 slots):")
n, k, s = 3, 2, 2
for m in range(s // 2 + 1):
    d01 = lambda mm: d_coeff(n, k - 1, k, s, 0, 1, mm) if mm <= s // 2 else 0.0
    combo = (d_coeff(n, k - 1, k, s, 0, 0, m) + 2 * math.pi / (n - 1)
             * (d01(m) - 2 * math.pi * (s - 2 * m) * d01(m + 1)))
    print(f"  m={m}: kappa = {kappa_coeff(n, k, s, m):.10f}, combo = {combo:.10f}")

print("\nlambda rewrites the iota family in metric-free measures:")
for m in range(s // 2 + 2):
    print(f"  m={m}: lambda = {lambda_coeff(n, k, s, m):.10f}"
          f"   iota(m) = {iota(n, k, s, m) if m <= s // 2 else 0.0:.10f}")

print("\nSingle surviving term at k=1:")
for (n, s) in [(2, 2), (3, 2), (3, 4)]:
    print(f"  n={n}, s={s}: cor-coefficient = {cor38_coeff(n, s):.10f}"
          f" = kappa(n,1,s,{s // 2}) = {kappa_coeff(n, 1, s, s // 2):.10f}")
