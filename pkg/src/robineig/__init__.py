"""First Robin eigenvalue with negative boundary parameter.

Radial solutions on balls and spherical shells from modified Bessel
functions, inner parallel bodies of convex polygons, the distance-function
transplant of the disc eigenfunction, and a P1 finite element solver used to
check the comparison ``lambda(alpha, Omega) <= lambda(alpha, disc of equal
perimeter)`` on convex polygons.
"""

from .dearrange import (
    DearrangedTest,
    FunctionalTerms,
    TheoremReport,
    build_test,
    disc_terms,
    functional_terms,
    integrate_profile_ode,
    perimeter_comparison,
    verify_chain,
    volume_comparison,
)
from .fem import SpectrumResult, assemble, inertia, smallest_eigenvalue, solve, triangulate
from .geometry import (
    ConvexPolygon,
    ParallelProfile,
    ball_of_same_perimeter,
    inner_parallel,
    inradius,
    parallel_profile,
    rectangle,
    regular_polygon,
)
from .radial import (
    AnnulusSpec,
    BallSpec,
    RootNotFoundError,
    annulus_eigenvalue,
    ball_eigenvalue,
    eigenfunction_phi,
    phi_inverse,
)
from .shapes import parse_shape, random_convex_polygon, random_corpus
from .specialfn import DomainError, besseli, besselk, gammafn

__version__ = "0.1.0"
