"""First Robin eigenvalue of a ball as a function of radius and alpha.

The eigenfunction is r^-beta I_beta(k r) and lambda = -k^2, where k solves
k I_{beta+1}(kR) + alpha I_beta(kR) = 0.  Small balls behave like the
constant function (lambda ~ alpha n / R), large balls like a half-space
(lambda -> -alpha^2).
"""

import numpy as np

from robineig import BallSpec, ball_eigenvalue

alpha = -1.0
print(f"alpha = {alpha}")
print(f"{'n':>2} {'R':>8} {'k':>12} {'lambda':>14} {'alpha n/R':>12}")
for n in (2, 3):
    for R in np.geomspace(0.05, 50.0, 7):
        eig = ball_eigenvalue(BallSpec(n, R), alpha)
        print(f"{n:>2} {R:8.3f} {eig.k:12.8f} {eig.lam:14.8f} {eig.proposition_bound:12.4f}")

# radius monotonicity: a bigger ball has a larger (less negative) eigenvalue
lams = [ball_eigenvalue(BallSpec(2, R), alpha).lam for R in (0.5, 1.0, 2.0)]
print("lambda(B_0.5) < lambda(B_1) < lambda(B_2):", lams[0] < lams[1] < lams[2])
