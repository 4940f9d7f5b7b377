"""The transplanted test function w = phi(R* - d(x)) on a polygon.

phi is the eigenfunction of the disc with the same perimeter.  Along the
way from the disc to the polygon the boundary term is unchanged, while the
Dirichlet energy and the L2 mass both decrease; the Rayleigh quotient of w
therefore lies below the disc eigenvalue.
"""

from robineig import build_test, disc_terms, functional_terms, perimeter_comparison, random_convex_polygon

alpha = -1.0
poly = random_convex_polygon(12, seed=2)
t = build_test(poly, alpha)
mine, disc = functional_terms(t), disc_terms(t)
print(f"R* = {t.R_star:.6f}, inradius = {t.inradius:.6f}")
print(f"{'':12} {'polygon':>14} {'disc':>14}")
for name in ("dirichlet", "boundary", "l2"):
    print(f"{name:12} {getattr(mine, name):14.8f} {getattr(disc, name):14.8f}")
print(f"{'rayleigh':12} {mine.rayleigh:14.8f} {disc.rayleigh:14.8f}  (disc eigenvalue {t.star.lam:.8f})")

cmp = perimeter_comparison(t, samples=8)
print("level t, perimeter of {w < t} on the polygon and of {v < t} on the disc")
for level, p_poly, p_disc in cmp:
    print(f"  {level:.6f}  {p_poly:.6f}  {p_disc:.6f}")
