"""Planar primitives: triangle normal form, circumcenters, Apollonius loci,
regular polygons.

Plane points are plain Python ``complex`` numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import BadCount, BadSide, CoincidentPoints, DegenerateTriangle, NonpositiveRatio

PlanePoint = complex

DEGENERACY_RTOL = 1e-12
MEMBERSHIP_ATOL = 1e-12


class Triangle(NamedTuple):
    a: complex
    b: complex
    c: complex


@dataclass(frozen=True)
class RigidMotion:
    """z -> rotation * (z - origin), then complex conjugation if ``reflected``."""

    origin: complex
    rotation: complex
    reflected: bool

    @property
    def angle(self) -> float:
        return cmath.phase(self.rotation)

    def apply(self, z: complex) -> complex:
        w = self.rotation * (z - self.origin)
        return w.conjugate() if self.reflected else w

    def invert(self, w: complex) -> complex:
        if self.reflected:
            w = w.conjugate()
        return w / self.rotation + self.origin


@dataclass(frozen=True)
class NormalTriangle:
    """Triangle moved to vertices 0, r, apex.

    ``order[k]`` is the index (into the original triangle) of the vertex
    that landed on the k-th of (0, r, apex).
    """

    r: float
    apex: complex
    motion: RigidMotion
    order: tuple[int, int, int]

    @property
    def vertices(self) -> tuple[complex, complex, complex]:
        return 0j, complex(self.r), self.apex


class ApexRegion(str, Enum):
    IN_D1 = "InD1"
    IN_D2 = "InD2"


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        if not self.radius >= 0:
            raise ValueError("disc radius must be nonnegative")


@dataclass(frozen=True)
class HalfPlane:
    """{z : Re(conj(normal) * z) <= offset}."""

    normal: complex
    offset: float

    def __post_init__(self) -> None:
        if self.normal == 0:
            raise ValueError("half-plane normal must be nonzero")


@dataclass(frozen=True)
class Apollonius:
    """Sublevel set {z : |z - p1| <= k |z - p2|}."""

    p1: complex
    p2: complex
    k: float

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise NonpositiveRatio(f"ratio must be positive, got {self.k}")
        if self.p1 == self.p2:
            raise CoincidentPoints("Apollonius foci coincide")


Region = Union[Disc, HalfPlane, Apollonius]


def _twice_area(a: complex, b: complex, c: complex) -> float:
    return abs(((b - a).conjugate() * (c - a)).imag)


def is_degenerate(a: complex, b: complex, c: complex) -> bool:
    longest = max(abs(b - a), abs(c - b), abs(a - c))
    if longest == 0:
        return True
    # rescale first so tiny or huge coordinates cannot under/overflow
    return _twice_area(0j, (b - a) / longest, (c - a) / longest) < DEGENERACY_RTOL


def normalize(t: Sequence[complex]) -> NormalTriangle:
    """Rigidly move ``t`` so its largest side is [0, r] and the third vertex
    lies in the upper half plane with real part at most r/2."""
    pts = [complex(p) for p in t]
    if is_degenerate(*pts):
        raise DegenerateTriangle(f"collinear or coincident vertices {pts}")
    # side k is opposite vertex k; ties broken by lexicographic vertex order
    sides = sorted(
        ((abs(pts[(k + 1) % 3] - pts[(k + 2) % 3]), k) for k in range(3)),
        key=lambda s: (-s[0], s[1]),
    )
    apex_idx = sides[0][1]
    p, q = sorted(((apex_idx + 1) % 3, (apex_idx + 2) % 3))
    # the endpoint nearer the apex goes to 0 so that Re(apex) <= r/2
    if abs(pts[apex_idx] - pts[p]) > abs(pts[apex_idx] - pts[q]):
        p, q = q, p
    base = pts[q] - pts[p]
    r = abs(base)
    rotation = base.conjugate() / r
    apex = rotation * (pts[apex_idx] - pts[p])
    reflected = apex.imag < 0
    motion = RigidMotion(origin=pts[p], rotation=rotation, reflected=reflected)
    return NormalTriangle(r=r, apex=motion.apply(pts[apex_idx]), motion=motion,
                          order=(p, q, apex_idx))


def circumcenter(nt: NormalTriangle) -> complex:
    # evaluated in units of the base length to avoid underflow
    x, y = nt.apex.real / nt.r, nt.apex.imag / nt.r
    return 0.5 * nt.r * complex(1.0, x * (x - 1.0) / y + y)


def largest_angle(nt: NormalTriangle) -> float:
    """Angle at the apex, opposite the base."""
    # the quotient of the two edge vectors is scale free
    return abs(cmath.phase((nt.r - nt.apex) / -nt.apex))


def circumradius(nt: NormalTriangle) -> float:
    return nt.r / (2 * math.sin(largest_angle(nt)))


def classify_apex(nt: NormalTriangle) -> ApexRegion:
    half = nt.r / 2
    if abs(nt.apex - half) <= half * (1 + DEGENERACY_RTOL):
        return ApexRegion.IN_D1
    return ApexRegion.IN_D2


def apollonius_locus(p1: complex, p2: complex, k: float) -> Disc | HalfPlane:
    """Boundary of {|z - p1| = k |z - p2|}.

    For k = 1 the perpendicular bisector, returned as the half plane of
    points nearer p1.  Otherwise the circle, returned as a Disc whose
    boundary is the locus.
    """
    p1, p2 = complex(p1), complex(p2)
    if not k > 0:
        raise NonpositiveRatio(f"ratio must be positive, got {k}", k=k)
    if p1 == p2:
        raise CoincidentPoints("Apollonius foci coincide")
    if k == 1:
        return HalfPlane(normal=p2 - p1, offset=(abs(p2) ** 2 - abs(p1) ** 2) / 2)
    k2 = k * k
    center = (k2 * p2 - p1) / (k2 - 1)
    radius = k * abs(p1 - p2) / abs(k2 - 1)
    return Disc(center=center, radius=radius)


def region_membership(region: Region, z: complex) -> bool:
    """Closed membership (inside or on the boundary)."""
    z = complex(z)
    if isinstance(region, Disc):
        return abs(z - region.center) <= region.radius + MEMBERSHIP_ATOL
    if isinstance(region, HalfPlane):
        n = region.normal
        return (n.conjugate() * z).real <= region.offset + MEMBERSHIP_ATOL * abs(n)
    if isinstance(region, Apollonius):
        return abs(z - region.p1) <= region.k * abs(z - region.p2) + MEMBERSHIP_ATOL
    raise TypeError(f"not a region: {region!r}")


def sample_boundary(region: Disc | HalfPlane, count: int = 64, span: float = 1.0) -> np.ndarray:
    """Points on the circle, or on the line within ``span`` of its foot point."""
    if isinstance(region, Disc):
        t = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
        return region.center + region.radius * np.exp(1j * t)
    n = region.normal
    foot = region.offset * n / abs(n) ** 2
    direction = 1j * n / abs(n)
    return foot + np.linspace(-span, span, count) * direction


def regular_polygon(n: int, a: float) -> list[complex]:
    """Vertices of the regular n-gon with side ``a`` centered at 0."""
    if not (isinstance(n, (int, np.integer)) and n >= 3):
        raise BadCount(f"polygon needs n >= 3, got {n}")
    if not a > 0:
        raise BadSide(f"side length must be positive, got {a}")
    radius = regular_polygon_radius(n, a)
    return [radius * cmath.exp(2j * math.pi * k / n) for k in range(n)]


def regular_polygon_radius(n: int, a: float) -> float:
    return a / (2 * math.sin(math.pi / n))


def regular_polygon_diameter(n: int, a: float) -> float:
    """Largest vertex-to-vertex distance."""
    if n % 2:
        return a / (2 * math.sin(math.pi / (2 * n)))
    return a / math.sin(math.pi / n)
