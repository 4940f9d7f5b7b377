"""Shape corpora: regular polygons, rectangles, seeded random hulls, files.

Random polygons are convex hulls of points drawn uniformly in the unit disc.
The generator is xorshift64* seeded through splitmix64 so a corpus can be
regenerated bit-for-bit from its seed by any implementation:

* ``state = splitmix64(seed)`` (replaced by the golden-ratio constant if 0)
* ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27``; output ``x * 0x2545F4914F6CDD1D``
* uniform double ``(out >> 11) * 2**-53``
* a point is ``sqrt(u1) * (cos 2 pi u2, sin 2 pi u2)``

Polygon ``i`` of a corpus with seed ``s`` uses seed ``s + i``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import ConvexPolygon, _cross, rectangle, regular_polygon
from .specialfn import DomainError

__all__ = [
    "XorShift64Star",
    "splitmix64",
    "random_convex_polygon",
    "random_corpus",
    "ShapeSpec",
    "parse_shape",
    "load_polygon",
    "save_polygon",
]

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + GOLDEN) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(int(seed) & MASK) or GOLDEN

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def disc_point(self) -> tuple[float, float]:
        r = math.sqrt(self.uniform())
        th = 2.0 * math.pi * self.uniform()
        return r * math.cos(th), r * math.sin(th)


def _acceptable(poly: ConvexPolygon, min_vertices=4, min_sin=1e-6) -> bool:
    if len(poly) < min_vertices:
        return False
    e = poly.edges
    lens = poly.edge_lengths
    prev = np.roll(e, 1, axis=0)
    sines = _cross(prev, e) / (np.roll(lens, 1) * lens)
    return bool(sines.min() > min_sin and lens.min() > 1e-6 * poly.diameter)


def random_convex_polygon(n_points: int, seed: int, max_tries: int = 1000) -> ConvexPolygon:
    """Hull of ``n_points`` uniform points in the unit disc.

    Hulls with fewer than four vertices or a near-collinear corner are
    rejected and a fresh batch is drawn from the same stream.
    """
    if n_points < 4:
        raise DomainError(f"need at least 4 points, got {n_points}")
    rng = XorShift64Star(seed)
    for _ in range(max_tries):
        pts = np.array([rng.disc_point() for _ in range(n_points)])
        try:
            poly = ConvexPolygon.hull(pts)
        except (DomainError, ValueError):
            continue
        if _acceptable(poly):
            return poly
    raise RuntimeError(f"no acceptable hull after {max_tries} draws (seed {seed})")


def random_corpus(count: int, n_points: int = 12, seed: int = 0) -> list[ConvexPolygon]:
    return [random_convex_polygon(n_points, seed + i) for i in range(count)]


def load_polygon(path, hull_repair: bool = False) -> ConvexPolygon:
    """Read a JSON array of ``[x, y]`` pairs (or ``{"vertices": [...]}``)."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data["vertices"]
    pts = np.asarray(data, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DomainError(f"{path}: expected an array of [x, y] pairs")
    if hull_repair:
        return ConvexPolygon.hull(pts)
    return ConvexPolygon(pts)


def save_polygon(poly: ConvexPolygon, path, **extra) -> None:
    verts = poly.vertices.tolist()
    payload = {"vertices": verts, **extra} if extra else verts
    Path(path).write_text(json.dumps(payload, indent=1))


@dataclass(frozen=True)
class ShapeSpec:
    """Parsed ``kind:params`` shape description."""

    kind: str
    params: tuple
    perimeter: float | None = None
    seed: int = 0
    hull_repair: bool = False

    def build(self, count: int = 1) -> list[tuple[str, str, ConvexPolygon]]:
        """List of ``(shape_id, m_or_file, polygon)``."""
        if self.kind == "regular":
            out = []
            for m in self.params:
                if self.perimeter is not None:
                    poly = regular_polygon(m, perimeter=self.perimeter)
                else:
                    poly = regular_polygon(m)
                out.append((f"regular-{m}", str(m), poly))
            return out
        if self.kind == "rectangle":
            a, b = self.params
            poly = rectangle(a, b)
            if self.perimeter is not None:
                poly = poly.scaled(self.perimeter / poly.perimeter)
            return [(f"rectangle-{a:g}x{b:g}", f"{a:g}x{b:g}", poly)]
        if self.kind == "random":
            (n,) = self.params
            return [
                (f"random-{self.seed + i}", str(n), random_convex_polygon(n, self.seed + i)) for i in range(count)
            ]
        if self.kind == "file":
            (path,) = self.params
            poly = load_polygon(path, self.hull_repair)
            return [(Path(path).stem, str(path), poly)]
        raise DomainError(f"unknown shape kind {self.kind!r}")


def parse_shape(text: str, perimeter: float | None = None, seed: int = 0, hull_repair: bool = False) -> ShapeSpec:
    """Parse ``regular:8[,16,...]``, ``rectangle:AxB``, ``random:N`` or ``file:PATH``."""
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise DomainError(f"shape must look like kind:params, got {text!r}")
    try:
        if kind == "regular":
            params = tuple(int(m) for m in rest.split(","))
            if any(m < 3 for m in params):
                raise DomainError("regular polygons need m >= 3")
        elif kind == "rectangle":
            a, b = (float(v) for v in rest.lower().replace(",", "x").split("x"))
            if not (a > 0 and b > 0):
                raise DomainError("rectangle sides must be positive")
            params = (a, b)
        elif kind == "random":
            params = (int(rest),)
            if params[0] < 4:
                raise DomainError("random hulls need at least 4 points")
        elif kind == "file":
            params = (rest,)
        else:
            raise DomainError(f"unknown shape kind {kind!r}")
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad shape parameters in {text!r}") from exc
    if perimeter is not None and not perimeter > 0:
        raise DomainError("perimeter must be positive")
    return ShapeSpec(kind, params, perimeter, seed, hull_repair)
