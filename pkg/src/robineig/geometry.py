"""Planar convex polygons and their inner parallel bodies.

A convex polygon is stored as a counterclockwise ``(m, 2)`` vertex array. Edge
``i`` runs from vertex ``i`` to vertex ``i + 1`` and lies on the line
``a_i . x = b_i`` with outward unit normal ``a_i``. The inner parallel body at
depth ``s`` is the intersection of the shifted half-planes
``a_i . x <= b_i - s``.

Between combinatorial events the eroded polygon keeps the same edge set, its
perimeter is affine in ``s`` with slope ``-2 sum tan(eps_i / 2)`` (``eps_i``
the exterior angles) and its area is the matching quadratic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .radial import BallSpec
from .specialfn import DomainError

__all__ = [
    "ConvexPolygon",
    "ParallelProfile",
    "perimeter",
    "area",
    "inner_parallel",
    "inradius",
    "parallel_profile",
    "outer_offset_perimeter",
    "ball_of_same_perimeter",
    "distance_to_boundary",
    "regular_polygon",
    "rectangle",
]


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _shoelace(v):
    # translate first: tiny polygons far from the origin cancel otherwise
    v = v - v[0]
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices.

    Raises :class:`DomainError` for fewer than three vertices, repeated
    vertices, clockwise or nonconvex order, and collinear triples.
    """

    def __init__(self, vertices, *, _trusted=False):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DomainError(f"vertices must have shape (m, 2), got {v.shape}")
        if not _trusted:
            _validate(v)
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self):
        return len(self._v)

    def __repr__(self):
        return f"ConvexPolygon({self._v.tolist()!r})"

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self._v, -1, axis=0) - self._v

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.hypot(*self.edges.T)

    @property
    def normals(self) -> np.ndarray:
        """Outward unit normals, one per edge."""
        e = self.edges
        n = np.column_stack([e[:, 1], -e[:, 0]])
        return n / np.hypot(*n.T)[:, None]

    @property
    def offsets(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.normals, self._v)

    @property
    def exterior_angles(self) -> np.ndarray:
        """Turning angle at each vertex (between edge i-1 and edge i)."""
        e = self.edges
        prev = np.roll(e, 1, axis=0)
        return np.arctan2(_cross(prev, e), np.einsum("ij,ij->i", prev, e))

    @property
    def perimeter(self) -> float:
        return float(self.edge_lengths.sum())

    @property
    def area(self) -> float:
        return _shoelace(self._v)

    @property
    def diameter(self) -> float:
        d = self._v[:, None, :] - self._v[None, :, :]
        return float(np.sqrt((d**2).sum(-1)).max())

    @property
    def centroid(self) -> np.ndarray:
        v, w = self._v, np.roll(self._v, -1, axis=0)
        c = _cross(v, w)
        a = 0.5 * c.sum()
        return ((v + w) * c[:, None]).sum(0) / (6.0 * a)

    def fingerprint(self) -> str:
        import hashlib

        text = ";".join(f"{x:.12e},{y:.12e}" for x, y in self._v)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def transformed(self, rotation: float = 0.0, shift=(0.0, 0.0)) -> "ConvexPolygon":
        c, s = math.cos(rotation), math.sin(rotation)
        rot = np.array([[c, -s], [s, c]])
        return ConvexPolygon(self._v @ rot.T + np.asarray(shift, dtype=float))

    def scaled(self, factor: float) -> "ConvexPolygon":
        return ConvexPolygon(self._v * factor)

    @classmethod
    def hull(cls, points) -> "ConvexPolygon":
        """Convex hull of arbitrary points, collinear points dropped."""
        from scipy.spatial import ConvexHull

        pts = np.asarray(points, dtype=float)
        h = ConvexHull(pts)
        # qhull returns 2-d hull vertices in counterclockwise order
        return cls(_drop_degenerate(pts[h.vertices]))


def _validate(v):
    m = len(v)
    if m < 3:
        raise DomainError(f"a polygon needs at least 3 vertices, got {m}")
    if not np.all(np.isfinite(v)):
        raise DomainError("vertices must be finite")
    diam = np.sqrt(((v[:, None, :] - v[None, :, :]) ** 2).sum(-1)).max()
    if diam == 0:
        raise DomainError("degenerate polygon")
    e = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(*e.T)
    if lengths.min() <= 1e-12 * diam:
        raise DomainError("repeated vertices")
    prev = np.roll(e, 1, axis=0)
    prev_len = np.roll(lengths, 1)
    cr = _cross(prev, e)
    if np.any(cr <= 1e-13 * prev_len * lengths):
        bad = int(np.argmin(cr / (prev_len * lengths)))
        raise DomainError(f"polygon is not strictly convex counterclockwise at vertex {bad}")
    # total turning of 2 pi rules out self-overlapping star shapes
    turn = np.arctan2(cr, np.einsum("ij,ij->i", prev, e)).sum()
    if abs(turn - 2 * math.pi) > 1e-6:
        raise DomainError("vertices wind more than once; polygon is not convex")


def _drop_degenerate(v, tol=1e-12):
    """Remove repeated and collinear vertices from a convex cycle."""
    v = np.asarray(v, dtype=float)
    if len(v) == 0:
        return v
    diam = max(np.ptp(v[:, 0]), np.ptp(v[:, 1]), 1e-300)
    changed = True
    while changed and len(v) >= 3:
        changed = False
        e = np.roll(v, -1, axis=0) - v
        keep = np.hypot(*e.T) > tol * diam
        if not keep.all():
            v = v[keep]
            changed = True
            continue
        prev = np.roll(e, 1, axis=0)
        cr = _cross(prev, e)
        keep = cr > tol * diam * diam
        if not keep.all():
            # drop one vertex at a time so neighbours are re-evaluated
            i = int(np.argmin(cr))
            v = np.delete(v, i, axis=0)
            changed = True
    return v


def perimeter(poly: ConvexPolygon) -> float:
    return poly.perimeter


def area(poly: ConvexPolygon) -> float:
    return poly.area


def _clip(v, a, b):
    """Sutherland-Hodgman clip of a convex cycle against a.x <= b."""
    if len(v) == 0:
        return v
    d = v @ a - b
    out = []
    m = len(v)
    for i in range(m):
        j = (i + 1) % m
        di, dj = d[i], d[j]
        if di <= 0:
            out.append(v[i])
        if (di < 0 < dj) or (dj < 0 < di):
            t = di / (di - dj)
            out.append(v[i] + t * (v[j] - v[i]))
    return np.array(out) if out else np.empty((0, 2))


def inner_parallel(poly: ConvexPolygon, s: float) -> ConvexPolygon | None:
    """Points of ``poly`` farther than ``s`` from its boundary.

    Returns ``None`` (empty) once the set has no interior, i.e. for
    ``s >= inradius(poly)``.
    """
    s = float(s)
    if s < 0 or not math.isfinite(s):
        raise DomainError(f"erosion depth must be finite and >= 0, got {s!r}")
    if s == 0:
        return poly
    v = poly.vertices
    for a, b in zip(poly.normals, poly.offsets):
        v = _clip(v, a, b - s)
        if len(v) < 3:
            return None
    diam = poly.diameter
    v = _drop_degenerate(v)
    if len(v) < 3:
        return None
    e = np.roll(v, -1, axis=0) - v
    if np.hypot(*e.T).min() <= 1e-15 * diam or _shoelace(v) <= 0:
        return None
    return ConvexPolygon(v, _trusted=True)


def inradius(poly: ConvexPolygon, rtol: float = 1e-12) -> float:
    """Largest erosion depth with nonempty interior, by bisection.

    Starts from the bracket ``A/P <= r <= 2A/P`` valid for planar convex sets.
    """
    A, P = poly.area, poly.perimeter
    lo, hi = A / P * (1 - 1e-9), 2 * A / P * (1 + 1e-9)
    if inner_parallel(poly, lo) is None:
        lo = 0.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if inner_parallel(poly, mid) is None:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def distance_to_boundary(poly: ConvexPolygon, points) -> np.ndarray:
    """Signed distance to the boundary, positive inside (exact for convex sets)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return (poly.offsets[None, :] - pts @ poly.normals.T).min(axis=1)


@dataclass(frozen=True)
class ParallelProfile:
    """Piecewise perimeter and area of the inner parallel bodies.

    On ``[breakpoints[j], breakpoints[j+1]]``::

        P(s) = perim[j] + slopes[j] * (s - s_j)
        A(s) = areas[j] - perim[j] * (s - s_j) - slopes[j] * (s - s_j)**2 / 2
    """

    breakpoints: np.ndarray
    perim: np.ndarray
    slopes: np.ndarray
    areas: np.ndarray
    edge_counts: tuple[int, ...]

    @property
    def inradius(self) -> float:
        return float(self.breakpoints[-1])

    @property
    def n_intervals(self) -> int:
        return len(self.slopes)

    def _locate(self, s):
        s = np.asarray(s, dtype=float)
        j = np.searchsorted(self.breakpoints, s, side="right") - 1
        return s, np.clip(j, 0, self.n_intervals - 1)

    def perimeter(self, s):
        s, j = self._locate(s)
        ds = s - self.breakpoints[j]
        out = self.perim[j] + self.slopes[j] * ds
        return np.where(s > self.inradius, 0.0, out) if out.ndim else (0.0 if s > self.inradius else float(out))

    def area(self, s):
        s, j = self._locate(s)
        ds = s - self.breakpoints[j]
        out = self.areas[j] - self.perim[j] * ds - 0.5 * self.slopes[j] * ds * ds
        return np.where(s > self.inradius, 0.0, out) if out.ndim else (0.0 if s > self.inradius else float(out))

    def slope(self, s):
        s, j = self._locate(s)
        out = self.slopes[j]
        return out if out.ndim else float(out)

    def intervals(self):
        return list(zip(self.breakpoints[:-1], self.breakpoints[1:]))


def _line_vertices(normals, offsets, s):
    """Vertex k = intersection of line k-1 and line k at depth s."""
    a0, b0 = np.roll(normals, 1, axis=0), np.roll(offsets, 1) - s
    a1, b1 = normals, offsets - s
    det = _cross(a0, a1)
    x = (b0 * a1[:, 1] - b1 * a0[:, 1]) / det
    y = (a0[:, 0] * b1 - a1[:, 0] * b0) / det
    return np.column_stack([x, y])


def parallel_profile(poly: ConvexPolygon) -> ParallelProfile:
    """Exact event-driven perimeter/area profile of ``s -> poly_s``.

    Each surviving edge shortens at rate ``tan(eps_k/2) + tan(eps_{k+1}/2)``;
    the next event is the first edge to reach zero length. Edges vanishing
    within ``1e-10 r`` of each other are merged into one event. The sweep stops
    when fewer than three lines remain or consecutive lines no longer close up.
    """
    normals = poly.normals.copy()
    offsets = poly.offsets.copy()
    dirs = poly.edges / poly.edge_lengths[:, None]
    merge_tol = 1e-10 * 2 * poly.area / poly.perimeter
    s = 0.0
    bps, perims, slopes, areas, counts = [0.0], [], [], [], []
    for _ in range(len(poly) + 1):
        verts = _line_vertices(normals, offsets, s)
        nxt = np.roll(verts, -1, axis=0)
        lengths = np.hypot(*(nxt - verts).T)
        prev_dir = np.roll(dirs, 1, axis=0)
        eps = np.arctan2(_cross(prev_dir, dirs), np.einsum("ij,ij->i", prev_dir, dirs))
        half = np.tan(0.5 * eps)
        rates = half + np.roll(half, -1)
        times = lengths / rates
        dt = float(times.min())
        perims.append(float(lengths.sum()))
        slopes.append(float(-2.0 * half.sum()))
        areas.append(_shoelace(verts))
        counts.append(len(normals))
        s += dt
        bps.append(s)
        keep = times > dt + merge_tol
        if keep.sum() < 3:
            break
        normals, offsets, dirs = normals[keep], offsets[keep], dirs[keep]
        turn = _cross(np.roll(dirs, 1, axis=0), dirs)
        if np.any(turn <= 0):
            break
    else:  # pragma: no cover - each event removes at least one edge
        raise RuntimeError("parallel profile did not terminate")
    return ParallelProfile(
        breakpoints=np.array(bps),
        perim=np.array(perims),
        slopes=np.array(slopes),
        areas=np.array(areas),
        edge_counts=tuple(counts),
    )


def outer_offset_perimeter(poly: ConvexPolygon, rho: float) -> float:
    """Perimeter of ``poly + rho B``: translated edges plus one circular arc per corner."""
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho!r}")
    return poly.perimeter + rho * float(poly.exterior_angles.sum())


def ball_of_same_perimeter(poly: ConvexPolygon) -> BallSpec:
    return BallSpec(2, poly.perimeter / (2 * math.pi))


def regular_polygon(m: int, *, circumradius: float | None = None, perimeter: float | None = None) -> ConvexPolygon:
    """Regular m-gon centred at the origin, one vertex on the positive x-axis."""
    if m < 3:
        raise DomainError(f"need m >= 3, got {m}")
    if perimeter is not None:
        circumradius = perimeter / (2 * m * math.sin(math.pi / m))
    elif circumradius is None:
        circumradius = 1.0
    th = 2 * math.pi * np.arange(m) / m
    return ConvexPolygon(circumradius * np.column_stack([np.cos(th), np.sin(th)]))


def rectangle(a: float, b: float) -> ConvexPolygon:
    return ConvexPolygon([[0.0, 0.0], [a, 0.0], [a, b], [0.0, b]])
