"""Inner parallel bodies of a convex polygon.

Eroding a convex polygon by s moves every edge inward; the perimeter drops
linearly with slope -2 sum tan(eps_i / 2) until an edge vanishes, then the
slope changes.  The slope is never gentler than the disc's -2 pi.
"""

import math

from robineig import inner_parallel, parallel_profile, random_convex_polygon

poly = random_convex_polygon(12, seed=4)
prof = parallel_profile(poly)
print(f"{len(poly)} vertices, perimeter {poly.perimeter:.6f}, area {poly.area:.6f}, inradius {prof.inradius:.6f}")
print(f"{'from':>10} {'to':>10} {'P(start)':>12} {'slope':>12} {'edges':>6}")
for j, (a, b) in enumerate(prof.intervals()):
    print(f"{a:10.6f} {b:10.6f} {prof.perim[j]:12.6f} {prof.slopes[j]:12.6f} {prof.edge_counts[j]:>6}")
print(f"all slopes <= -2 pi = {-2 * math.pi:.6f}:", bool((prof.slopes <= -2 * math.pi).all()))

# the analytic profile against direct half-plane clipping
for s in (0.1, 0.3, 0.5):
    s *= prof.inradius
    body = inner_parallel(poly, s)
    print(f"s={s:.4f}  profile P={prof.perimeter(s):.12f}  clipped P={body.perimeter:.12f}")
