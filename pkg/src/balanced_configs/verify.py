"""Balance verdicts, neighbor counts, and minimal-distance checks.

The balance definitions quantify over every distance d >= 0; verification
necessarily truncates to distance classes within a disclosed cutoff, recorded
in the report.  For planar periodic configurations only motif representatives
are checked (translation invariance is exact by construction); for finite
windows and hyperbolic patches, verification is restricted to base points
whose whole neighborhood up to the cutoff is known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .configs import (
    FinitePointSet,
    PatchConfig,
    PeriodicConfig,
    _hyp_dist_many,
    _pairwise_min,
    distance_classes,
    min_distance,
    points_within,
)
from .errors import AmbiguousClassError, InsufficientPatchError, NoPairsError
from .geometry import DEFAULT_TOL, Tolerance, as_vec


@dataclass(frozen=True)
class VerifyParams:
    """Cutoff and tolerances for a verification run.

    max_radius is measured in units of the configuration's minimal distance
    for planar and spherical input, and in absolute hyperbolic length for
    patches (where the relevant bound is the certified patch completeness).
    """

    max_radius: float = 6.0
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        if not (self.max_radius > 0.0):
            raise ValueError("max_radius must be positive")


@dataclass(frozen=True)
class ClassCheck:
    """Residual of one distance class at one base point."""

    base: tuple
    distance: float
    size: int
    residual: tuple
    residual_norm: float
    passed: bool


@dataclass
class BalanceReport:
    """Aggregated verdict over all verified base points and classes."""

    checks: list
    cutoff: float
    verified_points: int
    residual_tol: float
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ch.passed for ch in self.checks)

    @property
    def worst_residual(self):
        return max((ch.residual_norm for ch in self.checks), default=0.0)

    @property
    def failing(self):
        return [(ch.base, ch.distance) for ch in self.checks if not ch.passed]

    def summary(self):
        return {
            "passed": self.passed,
            "verified_points": self.verified_points,
            "classes_checked": len(self.checks),
            "cutoff": self.cutoff,
            "residual_tol": self.residual_tol,
            "worst_residual": self.worst_residual,
            "failing": [
                {"base": list(base), "distance": dist} for base, dist in self.failing
            ],
            "notes": list(self.notes),
        }


def _collinear_direction(pts, rel_tol=1e-9):
    """Unit direction if the points are collinear, else None."""
    centered = pts - pts.mean(axis=0)
    scale = float(np.abs(centered).max())
    if scale == 0.0:
        return None
    _, sing, vt = np.linalg.svd(centered, full_matrices=False)
    if len(sing) > 1 and sing[1] > rel_tol * scale:
        return None
    return vt[0]


def _windowed_plane_bases(pts, cutoff, tol):
    """Indices of points whose cutoff-ball lies inside the window spanned by
    the set: an interval along the carrier line for collinear input, the
    bounding box otherwise."""
    slack = tol.class_tol
    direction = _collinear_direction(pts)
    if direction is not None:
        t = (pts - pts.mean(axis=0)) @ direction
        lo, hi = float(t.min()), float(t.max())
        keep = (t >= lo + cutoff - slack) & (t <= hi - cutoff + slack)
        return np.nonzero(keep)[0]
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    keep = np.all(pts >= lo + cutoff - slack, axis=1) & np.all(pts <= hi - cutoff + slack, axis=1)
    return np.nonzero(keep)[0]


def verify_plane(c, params=VerifyParams()):
    """Check that, at every verified point, each distance class up to the
    cutoff has displacement vectors summing to zero."""
    tol = params.tol
    if isinstance(c, PeriodicConfig):
        bases = c.cartesian_motif()
        note = "verified motif representatives; translation covers the rest"
    elif isinstance(c, FinitePointSet) and c.space == "plane":
        min_d0 = min_distance(c, tol)
        cutoff0 = params.max_radius * min_d0
        idx = _windowed_plane_bases(c.points, cutoff0, tol)
        bases = c.points[idx]
        note = f"verified {len(bases)} of {c.n} points with a full in-window neighborhood"
    else:
        raise ValueError("verify_plane requires a PeriodicConfig or a planar FinitePointSet")
    min_d = min_distance(c, tol)
    cutoff = params.max_radius * min_d
    checks = []
    for base in bases:
        for cl in distance_classes(c, base, cutoff, tol):
            residual = cl.points.sum(axis=0) - cl.size * base
            norm = float(np.linalg.norm(residual))
            checks.append(
                ClassCheck(
                    base=tuple(base),
                    distance=cl.distance,
                    size=cl.size,
                    residual=tuple(residual),
                    residual_norm=norm,
                    passed=norm <= tol.residual_tol,
                )
            )
    return BalanceReport(
        checks=checks,
        cutoff=cutoff,
        verified_points=len(bases),
        residual_tol=tol.residual_tol,
        notes=[note],
    )


def verify_sphere(c, params=VerifyParams(), mode="scalar_multiple"):
    """Check spherical balance at every point, in either formulation.

    scalar_multiple: each class sum must be a scalar multiple of the base
    vector, measured by the cross-product norm |sum x base|.
    tangent_projection: the class sum of tangent-plane projections must
    vanish.  The two residuals are mathematically identical in norm.
    """
    if not (isinstance(c, FinitePointSet) and c.space == "sphere"):
        raise ValueError("verify_sphere requires a FinitePointSet on the sphere")
    if mode not in ("scalar_multiple", "tangent_projection"):
        raise ValueError(f"unknown mode {mode!r}")
    tol = params.tol
    min_d = min_distance(c, tol)
    cutoff = params.max_radius * min_d
    checks = []
    for base in c.points:
        for cl in distance_classes(c, base, cutoff, tol):
            total = cl.points.sum(axis=0)
            if mode == "scalar_multiple":
                residual = np.cross(total, base)
            else:
                residual = total - (total @ base) * base
            norm = float(np.linalg.norm(residual))
            checks.append(
                ClassCheck(
                    base=tuple(base),
                    distance=cl.distance,
                    size=cl.size,
                    residual=tuple(residual),
                    residual_norm=norm,
                    passed=norm <= tol.residual_tol,
                )
            )
    return BalanceReport(
        checks=checks,
        cutoff=cutoff,
        verified_points=c.n,
        residual_tol=tol.residual_tol,
        notes=[f"mode: {mode}"],
    )


def _unit_tangent_sums(base, pts):
    """Sum of unit initial directions from base to each of pts, computed by
    translating base to the origin (where geodesics are diameters)."""
    b = complex(base[0], base[1])
    z = pts[:, 0] + 1j * pts[:, 1]
    w = (z - b) / (1.0 - np.conjugate(b) * z)
    mags = np.abs(w)
    units = w / mags
    return complex(units.sum())


def _hyp_dist_block(bases, pts):
    """Hyperbolic distance matrix (len(bases) x len(pts)) on the disk."""
    a = bases[:, 0] + 1j * bases[:, 1]
    z = pts[:, 0] + 1j * pts[:, 1]
    num = np.abs(z[None, :] - a[:, None])
    den = np.abs(1.0 - np.conjugate(a)[:, None] * z[None, :])
    return 2.0 * np.arctanh(num / den)


def verify_hyperbolic(c, params=VerifyParams()):
    """Check hyperbolic balance at every base point whose certified
    neighborhood covers the cutoff (max_radius, in hyperbolic length).

    Per class, the residual is the sum of unit tangent vectors at the base
    point pointing along the geodesics to the class members.  Distances are
    scanned in blocks of base points so large patches stay fast.
    """
    if not isinstance(c, PatchConfig):
        raise ValueError("verify_hyperbolic requires a PatchConfig")
    if c.n < 2:
        raise InsufficientPatchError("patch holds fewer than two points")
    tol = params.tol
    cutoff = params.max_radius
    vr = c.patch_radius - c.center_dists()
    base_idx = np.nonzero(vr >= cutoff - 1e-12)[0]
    if len(base_idx) == 0:
        raise InsufficientPatchError(
            f"no point has verifiable_radius >= {cutoff}; patch_radius is {c.patch_radius}"
        )
    block = max(1, int(2_000_000 // max(c.n, 1)))
    checks = []
    for s in range(0, len(base_idx), block):
        chunk = base_idx[s : s + block]
        dmat = _hyp_dist_block(c.points[chunk], c.points)
        for row, i in enumerate(chunk):
            base = c.points[i]
            d = dmat[row]
            keep = np.nonzero((d <= cutoff + tol.class_tol) & (d > tol.dedup_tol))[0]
            order = np.argsort(d[keep], kind="stable")
            keep, dists = keep[order], d[keep][order]
            breaks = np.nonzero(np.diff(dists) > tol.class_tol)[0]
            starts = np.concatenate([[0], breaks + 1])
            ends = np.concatenate([breaks + 1, [len(dists)]])
            prev_mean = None
            for cs, ce in zip(starts, ends):
                if cs == ce:
                    continue
                mean = float(dists[cs:ce].mean())
                if prev_mean is not None and mean - prev_mean <= 2.0 * tol.class_tol:
                    raise AmbiguousClassError(
                        f"distance classes at {prev_mean!r} and {mean!r} are too close to separate"
                    )
                prev_mean = mean
                members = c.points[keep[cs:ce]]
                total = _unit_tangent_sums(base, members)
                norm = abs(total)
                checks.append(
                    ClassCheck(
                        base=tuple(base),
                        distance=mean,
                        size=len(members),
                        residual=(total.real, total.imag),
                        residual_norm=norm,
                        passed=norm <= tol.residual_tol,
                    )
                )
    return BalanceReport(
        checks=checks,
        cutoff=cutoff,
        verified_points=len(base_idx),
        residual_tol=tol.residual_tol,
        notes=[f"certified patch radius {c.patch_radius}"],
    )


def _base_points_for(c, params):
    tol = params.tol
    if isinstance(c, PeriodicConfig):
        return c.cartesian_motif()
    if isinstance(c, FinitePointSet):
        if c.space == "plane":
            min_d = min_distance(c, tol)
            idx = _windowed_plane_bases(c.points, params.max_radius * min_d, tol)
            return c.points[idx]
        return c.points
    if isinstance(c, PatchConfig):
        min_d = min_distance(c, tol)
        vr = c.patch_radius - c.center_dists()
        return c.points[vr >= min_d + tol.class_tol]
    raise TypeError(f"unsupported configuration type {type(c)!r}")


def max_neighbor_count(c, params=VerifyParams()):
    """Largest number of minimal-distance neighbors over the verified points."""
    tol = params.tol
    min_d = min_distance(c, tol)
    best = 0
    for base in _base_points_for(c, params):
        nbrs = points_within(c, base, min_d, tol)
        best = max(best, len(nbrs))
    return best


def check_min_distance_property(c, window=None, tol=DEFAULT_TOL):
    """Minimal distance over a window and whether an explicit pair attains it.

    window, when given, is a radius: points beyond it (from the centroid for
    finite sets, from the disk center for patches) are excluded.  The result
    is flagged window-dependent whenever the window actually excluded points,
    since a different window could then report a different value.
    """
    if isinstance(c, PeriodicConfig):
        d = min_distance(c, tol)
        return {"min_d": d, "attained": True, "pair": None, "window_dependent": False}
    if isinstance(c, FinitePointSet):
        pts, space = c.points, c.space
        center = pts.mean(axis=0)
        if space == "sphere":
            center /= np.linalg.norm(center) if np.linalg.norm(center) > 0 else 1.0
    elif isinstance(c, PatchConfig):
        pts, space = c.points, "disk"
        center = np.zeros(2)
    else:
        raise TypeError(f"unsupported configuration type {type(c)!r}")
    excluded = False
    if window is not None:
        if space == "disk":
            keep = _hyp_dist_many((0.0, 0.0), pts) <= window
        else:
            keep = np.linalg.norm(pts - center, axis=1) <= window
        excluded = bool((~keep).any())
        pts = pts[keep]
    if len(pts) < 2:
        raise NoPairsError("at least two points are required in the window")
    d, (i, j) = _pairwise_min(space, pts)
    return {
        "min_d": d,
        "attained": True,
        "pair": (tuple(pts[i]), tuple(pts[j])),
        "window_dependent": excluded,
    }
