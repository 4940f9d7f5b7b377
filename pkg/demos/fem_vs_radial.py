"""P1 finite elements on polygons approaching the unit disc.

The three refinement levels decrease monotonically (conforming elements
give upper bounds); Richardson extrapolation with order 2 removes most of
the remaining discretisation error.  What is left is the polygon-versus-disc
geometry error, which shrinks with the number of sides.
"""

from robineig import BallSpec, ball_eigenvalue, regular_polygon, solve

alpha = -1.0
exact = ball_eigenvalue(BallSpec(2, 1.0), alpha).lam
print(f"disc: lambda = {exact:.8f}")
for m in (8, 16, 32, 64):
    res = solve(regular_polygon(m, circumradius=1.0), alpha, levels=4)
    levels = ", ".join(f"{v:.6f}" for v in res.lambda_h)
    print(f"m={m:3d}  levels [{levels}]  extrapolated {res.lambda_extrapolated:.6f}  "
          f"order {res.observed_order:.2f}  diff {res.lambda_extrapolated - exact:+.2e}")
