"""Monte-Carlo verification of the Crofton-type section formulas.

Integrates a tensorial curvature measure of P cap E over random k-flats E and
compares against the closed-form right-hand side, coordinate by coordinate.
"""

from tensorgeo import crofton_verify, cube, simplex

print("Classical case: lines meeting the unit square (k=1, j=0).")
rep = crofton_verify(cube(2), k=1, j=0, samples=200000, seed=1)
print(f"  LHS = {rep.lhs.value():.6f}  RHS = {rep.rhs.value():.6f} (= 4/pi)")
print(f"  3*stderr = {3 * rep.stderr.value():.2e}, passed = {rep.passed}")

print("\nTensor case: lines against the square with normal power s=2 (j=1).")
rep = crofton_verify(cube(2), k=1, j=1, s=2, samples=100000, seed=2)
for row in rep.coordinate_rows():
    print(f"  index={row['index']}: LHS {row['lhs']:+.6f}  RHS {row['rhs']:+.6f}"
          f"  (3*stderr {row['allowed']:.1e})")
print(f"  passed = {rep.passed}")

print("\nPlane sections of the 3-cube (k=2, j=1, s=2): three-term right side.")
rep = crofton_verify(cube(3), k=2, j=1, s=2, samples=50000, seed=3)
print(f"  max excess over allowance = {rep.max_excess:.2f}, passed = {rep.passed}")

print("\nGeneric path on a triangle with an odd normal power (s=1).")
rep = crofton_verify(simplex(2), k=1, j=1, s=1, samples=20000, seed=4)
print(f"  max excess = {rep.max_excess:.2f}, passed = {rep.passed}")
