"""Annuli against discs.

Against the disc of equal area an annulus can have the lower eigenvalue
when alpha is strongly negative (a thin shell has twice the boundary).
Against the disc of equal perimeter the ordering always goes one way:
annulus <= outer disc <= disc with the combined perimeter.
"""

from robineig import AnnulusSpec, BallSpec, annulus_eigenvalue, ball_eigenvalue

for R_in, alpha in ((0.5, -1.0), (0.9, -10.0), (0.001, -1.0)):
    spec = AnnulusSpec(2, 1.0, R_in)
    a = annulus_eigenvalue(spec, alpha).lam
    outer = ball_eigenvalue(BallSpec(2, 1.0), alpha).lam
    same_area = ball_eigenvalue(spec.equal_area_ball(), alpha).lam
    same_perim = ball_eigenvalue(spec.equal_perimeter_ball(), alpha).lam
    print(f"R_in={R_in:<6} alpha={alpha:<6} annulus {a:12.6f}  outer disc {outer:12.6f}  "
          f"equal-area disc {same_area:12.6f}  equal-perimeter disc {same_perim:12.6f}")
