"""Poincare disk model primitives.

Points are complex numbers z with |z| < 1.  Geodesics are diameters or
circular arcs meeting the unit circle at right angles.  The model is
conformal, so angles (and in particular unit tangent directions at a point
translated to the origin) agree with their Euclidean counterparts.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DegenerateDirectionError,
    InvalidGeodesicError,
    InvalidPointError,
)

# Orthogonality slack accepted when validating arc descriptors.
_GEODESIC_TOL = 1e-9


def as_disk_point(p):
    """Coerce a complex number or an (x, y) pair to a point of the open disk."""
    if isinstance(p, complex):
        z = p
    elif isinstance(p, (int, float)):
        z = complex(p)
    else:
        x, y = p
        z = complex(float(x), float(y))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidPointError("disk point must be finite")
    if abs(z) >= 1.0:
        raise InvalidPointError(f"disk point must satisfy |z| < 1, got |z| = {abs(z)!r}")
    return z


def to_xy(z):
    return (z.real, z.imag)


def hyp_dist(a, b):
    """Hyperbolic distance between two disk points."""
    a = as_disk_point(a)
    b = as_disk_point(b)
    d2 = abs(a - b) ** 2
    denom = (1.0 - abs(a) ** 2) * (1.0 - abs(b) ** 2)
    return math.acosh(1.0 + 2.0 * d2 / denom)


def radial_dist(r):
    """Hyperbolic distance from the origin to a point at Euclidean radius r."""
    return math.log((1.0 + r) / (1.0 - r))


def euclid_radius(d):
    """Euclidean radius of the point at hyperbolic distance d from the origin."""
    return math.tanh(d / 2.0)


def mobius_translate(center, z):
    """The disk automorphism sending center to the origin, applied to z."""
    c = as_disk_point(center)
    z = as_disk_point(z)
    return (z - c) / (1.0 - c.conjugate() * z)


def mobius_untranslate(center, w):
    """Inverse of mobius_translate(center, .)."""
    c = as_disk_point(center)
    w = as_disk_point(w)
    return (w + c) / (1.0 + c.conjugate() * w)


def hyp_log_dir(base, target, dedup_tol=1e-9):
    """Unit initial direction (as a complex number in the chart at base
    translated to the origin) of the geodesic from base to target."""
    w = mobius_translate(base, target)
    r = abs(w)
    if r <= dedup_tol:
        raise DegenerateDirectionError("cannot take a direction between coincident points")
    return w / r


def hyp_midpoint(a, b):
    """Hyperbolic midpoint of the geodesic segment from a to b."""
    w = mobius_translate(a, b)
    r = abs(w)
    if r == 0.0:
        return as_disk_point(a)
    # tanh(artanh(r)/2) without transcendental round trips
    rm = r / (1.0 + math.sqrt(1.0 - r * r))
    return mobius_untranslate(a, (rm / r) * w)


def half_turn(center, z):
    """Rotate z by pi about a disk point."""
    return mobius_untranslate(center, -mobius_translate(center, z))


def rotate_about(center, angle, z):
    """Rotate z about a disk point by the given angle."""
    return mobius_untranslate(center, cmath.exp(1j * angle) * mobius_translate(center, z))


@dataclass(frozen=True)
class Geodesic:
    """Descriptor of a full geodesic: a diameter with a unit direction, or an
    arc of the Euclidean circle |z - center| = radius orthogonal to the unit
    circle (|center|^2 = 1 + radius^2)."""

    kind: str  # "diameter" or "arc"
    direction: complex = 0j  # diameter only, unit modulus
    center: complex = 0j  # arc only, |center| > 1
    radius: float = 0.0  # arc only

    def validate(self):
        if self.kind == "diameter":
            if abs(abs(self.direction) - 1.0) > _GEODESIC_TOL:
                raise InvalidGeodesicError("diameter direction must be a unit complex number")
        elif self.kind == "arc":
            if self.radius <= 0.0:
                raise InvalidGeodesicError("arc radius must be positive")
            if abs(abs(self.center) ** 2 - (1.0 + self.radius**2)) > _GEODESIC_TOL * (1.0 + self.radius**2):
                raise InvalidGeodesicError("arc must meet the unit circle at a right angle")
        else:
            raise InvalidGeodesicError(f"unknown geodesic kind {self.kind!r}")
        return self


def geodesic_through(a, b, dedup_tol=1e-9):
    """The unique geodesic through two distinct disk points."""
    a = as_disk_point(a)
    b = as_disk_point(b)
    if abs(a - b) <= dedup_tol:
        raise DegenerateDirectionError("two distinct points are required to span a geodesic")
    cross = a.real * b.imag - a.imag * b.real
    # Collinear with the origin: the geodesic is a diameter.
    if abs(cross) <= 1e-13 * max(abs(a) * abs(b), abs(a - b)):
        return Geodesic(kind="diameter", direction=(b - a) / abs(b - a))
    # Solve for the center of the circle through a, b orthogonal to the unit
    # circle: 2 c . p = |p|^2 + 1 for p in {a, b}.
    ra = abs(a) ** 2 + 1.0
    rb = abs(b) ** 2 + 1.0
    det = 2.0 * cross
    cx = (ra * b.imag - rb * a.imag) / det
    cy = (rb * a.real - ra * b.real) / det
    c = complex(cx, cy)
    r = math.sqrt(abs(c) ** 2 - 1.0)
    return Geodesic(kind="arc", center=c, radius=r)


def reflect_geodesic(g, z):
    """Reflect a disk point across a geodesic given by its descriptor."""
    g.validate()
    z = as_disk_point(z)
    if g.kind == "diameter":
        u = g.direction / abs(g.direction)
        return u * u * z.conjugate()
    d = z - g.center
    if d == 0:
        raise InvalidPointError("cannot invert the center of the reflection circle")
    return g.center + (g.radius**2) / d.conjugate()


def reflect_through(a, b, z):
    """Reflect z across the geodesic through a and b.

    Conjugates the reflection to a diameter through the origin, which stays
    numerically stable even when the geodesic is nearly a diameter.
    """
    a = as_disk_point(a)
    w = mobius_translate(a, z)
    u = hyp_log_dir(a, b)
    return mobius_untranslate(a, u * u * w.conjugate())


def segment_dist_to_origin(a, b):
    """Hyperbolic distance from the origin to the geodesic segment [a, b].

    Exact (up to roundoff): hyperbolic distance from the origin is monotone in
    Euclidean radius, so the nearest point of a circular arc is either the
    point of the full circle facing the origin (when it lies on the arc) or an
    endpoint.
    """
    a = as_disk_point(a)
    b = as_disk_point(b)
    end = min(radial_dist(abs(a)), radial_dist(abs(b)))
    if abs(a - b) <= 1e-15:
        return end
    g = geodesic_through(a, b)
    if g.kind == "diameter":
        # The origin lies on the carrier line; distance is zero iff the origin
        # sits between the endpoints along the diameter.
        ta = (a / g.direction).real
        tb = (b / g.direction).real
        if min(ta, tb) <= 0.0 <= max(ta, tb):
            return 0.0
        return end
    foot = g.center - g.radius * (g.center / abs(g.center))
    # Is the facing point inside the arc spanned by a and b?
    pa = cmath.phase((a - g.center) / (foot - g.center))
    pb = cmath.phase((b - g.center) / (foot - g.center))
    if min(pa, pb) <= 0.0 <= max(pa, pb):
        return radial_dist(abs(g.center) - g.radius)
    return end
