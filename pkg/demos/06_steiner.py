"""Steiner formula: parallel volumes as polynomials in intrinsic volumes.

Estimates the volume of the eps-neighborhood of a polytope by Monte-Carlo and
compares against the exact polynomial  sum_q kappa_{n-q} V_q(P) eps^{n-q}.
"""

from tensorgeo import cube, simplex, steiner_check

for (name, P) in [("unit square", cube(2)), ("unit cube", cube(3)),
                  ("triangle", simplex(2))]:
    rep = steiner_check(P, [0.25, 0.5, 1.0], samples=300000, seed=1)
    print(f"{name} (n={P.dim}):")
    for eps, mc, exact, rel in zip(rep.eps, rep.mc_volume, rep.steiner_volume,
                                   rep.rel_error):
        print(f"  eps={eps:4.2f}: MC volume {mc:9.5f}  polynomial {exact:9.5f}"
              f"  rel err {rel:.2%}")
