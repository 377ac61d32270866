"""Point configuration containers and exact lattice/point-set queries.

Three containers cover every surface handled by the package:

* ``PeriodicConfig``  - a rank-2 planar lattice with a finite motif given in
  fractional coordinates of the basis,
* ``FinitePointSet``  - an explicit finite set tagged with its space
  ("plane", "sphere" or "disk"),
* ``PatchConfig``     - a finite window of an infinite hyperbolic tiling
  together with the radius up to which the window is certified complete.

All containers are treated as immutable after construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import hyperbolic
from .errors import AmbiguousClassError, InvalidPointError, NoPairsError
from .geometry import DEFAULT_TOL, Tolerance, as_vec

_SPACES = ("plane", "sphere", "disk")


def _hyp_dist_many(base, pts):
    """Vectorized hyperbolic distance from one disk point to an (n, 2) array."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    b = np.asarray(base, dtype=float).reshape(2)
    d2 = np.sum((pts - b) ** 2, axis=1)
    denom = (1.0 - b @ b) * (1.0 - np.sum(pts * pts, axis=1))
    return np.arccosh(1.0 + 2.0 * d2 / denom)


def _dist_many(space, base, pts):
    pts = np.asarray(pts, dtype=float)
    if len(pts) == 0:
        return np.zeros(0)
    if space == "disk":
        return _hyp_dist_many(base, pts)
    return np.linalg.norm(pts - np.asarray(base, dtype=float), axis=1)


@dataclass(eq=False)
class PeriodicConfig:
    """Lattice basis (rows v1, v2) plus motif points in fractional coordinates."""

    basis: np.ndarray
    motif: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        self.basis = np.asarray(self.basis, dtype=float)
        if self.basis.shape != (2, 2) or not np.all(np.isfinite(self.basis)):
            raise InvalidPointError("basis must be a finite 2x2 matrix with rows v1, v2")
        scale2 = max(float(np.sum(self.basis[0] ** 2)), float(np.sum(self.basis[1] ** 2)))
        if scale2 == 0.0 or abs(np.linalg.det(self.basis)) <= 1e-12 * scale2:
            raise InvalidPointError("basis vectors must be linearly independent")
        motif = np.asarray(self.motif, dtype=float)
        if motif.ndim != 2 or motif.shape[1] != 2 or motif.shape[0] == 0:
            raise InvalidPointError("motif must be a nonempty (k, 2) array")
        if not np.all(np.isfinite(motif)):
            raise InvalidPointError("motif coordinates must be finite")
        motif = np.mod(motif, 1.0)
        motif[motif >= 1.0] -= 1.0  # np.mod rounds tiny negatives up to exactly 1.0
        self.motif = motif
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != len(self.motif):
                raise InvalidPointError("labels must align with the motif")
        self._check_motif_distinct()

    def _check_motif_distinct(self, tol=DEFAULT_TOL):
        cart = self.cartesian_motif()
        shifts = _shift_grid() @ self.basis
        for i in range(len(cart)):
            diff = cart[i + 1 :] - cart[i]
            if len(diff) == 0:
                continue
            d = np.linalg.norm(diff[:, None, :] + shifts[None, :, :], axis=2)
            if np.any(d <= tol.dedup_tol):
                raise InvalidPointError("motif points must be pairwise distinct modulo the lattice")

    @property
    def k(self):
        return len(self.motif)

    def cartesian_motif(self):
        return self.motif @ self.basis

    def transformed(self, rotation=0.0, translation=(0.0, 0.0), scale=1.0):
        """Apply a direct similarity (rotation, then scaling, then translation)."""
        if scale <= 0.0:
            raise ValueError("scale must be positive")
        ca, sa = math.cos(rotation), math.sin(rotation)
        rot = np.array([[ca, sa], [-sa, ca]])  # row-vector convention
        new_basis = scale * (self.basis @ rot)
        cart = scale * (self.cartesian_motif() @ rot) + as_vec(translation, 2)
        new_motif = cart @ np.linalg.inv(new_basis)
        return PeriodicConfig(new_basis, new_motif, labels=self.labels)

    def supercell(self, na, nb):
        """Replicate the motif over an na x nb block of cells."""
        if na < 1 or nb < 1:
            raise ValueError("supercell factors must be >= 1")
        new_basis = np.array([self.basis[0] * na, self.basis[1] * nb])
        pieces = []
        labels = []
        for i in range(na):
            for j in range(nb):
                pieces.append((self.motif + np.array([i, j])) / np.array([na, nb]))
                if self.labels is not None:
                    labels.extend(self.labels)
        return PeriodicConfig(
            new_basis,
            np.vstack(pieces),
            labels=tuple(labels) if self.labels is not None else None,
        )


@dataclass(eq=False)
class FinitePointSet:
    """An explicit finite configuration in one of the three spaces."""

    space: str
    points: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        if self.space not in _SPACES:
            raise InvalidPointError(f"space must be one of {_SPACES}, got {self.space!r}")
        dim = 3 if self.space == "sphere" else 2
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != dim:
            raise InvalidPointError(f"points must be an (n, {dim}) array for space {self.space!r}")
        if not np.all(np.isfinite(pts)):
            raise InvalidPointError("point coordinates must be finite")
        if self.space == "sphere":
            norms = np.linalg.norm(pts, axis=1)
            bad = np.nonzero(np.abs(norms - 1.0) > 1e-9)[0]
            if len(bad):
                raise InvalidPointError(f"sphere points must have unit norm (first offender: index {bad[0]})")
        if self.space == "disk":
            r = np.linalg.norm(pts, axis=1)
            bad = np.nonzero(r >= 1.0)[0]
            if len(bad):
                raise InvalidPointError(f"disk points must satisfy |z| < 1 (first offender: index {bad[0]})")
        self.points = pts
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != len(pts):
                raise InvalidPointError("labels must align with the points")

    @property
    def n(self):
        return len(self.points)


@dataclass(eq=False)
class PatchConfig:
    """A hyperbolic tiling window, complete out to hyp distance patch_radius."""

    points: np.ndarray
    patch_radius: float
    labels: tuple | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(pts)):
            raise InvalidPointError("point coordinates must be finite")
        if len(pts) and np.any(np.linalg.norm(pts, axis=1) >= 1.0):
            raise InvalidPointError("patch points must lie in the open unit disk")
        if not (math.isfinite(self.patch_radius) and self.patch_radius >= 0.0):
            raise InvalidPointError("patch_radius must be a nonnegative finite number")
        self.points = pts
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != len(pts):
                raise InvalidPointError("labels must align with the points")

    @property
    def n(self):
        return len(self.points)

    def center_dists(self):
        return _hyp_dist_many((0.0, 0.0), self.points) if self.n else np.zeros(0)

    def verifiable_radius(self, p):
        """Radius around p (hyperbolic) within which the patch is certified complete."""
        d = hyperbolic.hyp_dist(0j, complex(p[0], p[1]))
        return max(self.patch_radius - d, 0.0)


@dataclass(frozen=True)
class DistanceClass:
    """One cluster of equal (within tolerance) distances from a base point."""

    distance: float
    points: np.ndarray

    @property
    def size(self):
        return len(self.points)


def _shift_grid():
    g = np.array([[i, j] for i in (-1, 0, 1) for j in (-1, 0, 1)], dtype=float)
    return g


def _lagrange_reduce(basis):
    """Shortest-vector basis of a 2d lattice (|v1| <= |v2|, |v1.v2| <= |v1|^2 / 2)."""
    v1 = basis[0].astype(float).copy()
    v2 = basis[1].astype(float).copy()
    if v1 @ v1 > v2 @ v2:
        v1, v2 = v2, v1
    while True:
        mu = round(float(v1 @ v2) / float(v1 @ v1))
        v2 = v2 - mu * v1
        if v2 @ v2 >= v1 @ v1:
            break
        v1, v2 = v2, v1
    if v1 @ v2 < 0:
        v2 = -v2
    return np.array([v1, v2])


def canonical_basis(c):
    """Equivalent PeriodicConfig over the Lagrange-reduced basis.

    The reduced basis satisfies |v1| <= |v2| and 0 <= v1.v2 <= |v1|^2 / 2, so
    the angle between the vectors lies in [60, 90] degrees.
    """
    red = _lagrange_reduce(c.basis)
    cart = c.cartesian_motif()
    frac = cart @ np.linalg.inv(red)
    return PeriodicConfig(red, np.mod(frac, 1.0), labels=c.labels)


def _translate_box(basis, delta, radius, pad=1):
    """Integer (a, b) pairs with |delta + a v1 + b v2| possibly <= radius."""
    inv = np.linalg.inv(basis)
    center = -np.asarray(delta) @ inv
    spans = radius * np.linalg.norm(inv, axis=0) + pad
    a = np.arange(math.ceil(center[0] - spans[0]), math.floor(center[0] + spans[0]) + 1)
    b = np.arange(math.ceil(center[1] - spans[1]), math.floor(center[1] + spans[1]) + 1)
    aa, bb = np.meshgrid(a, b, indexing="ij")
    return np.column_stack([aa.ravel(), bb.ravel()]).astype(float)


def min_distance(c, tol=DEFAULT_TOL):
    """Minimal pairwise distance of the configuration.

    For periodic configurations the scan runs over the reduced basis, where a
    window of +-2 cells around the rounded target certainly contains the
    lattice vector closest to any motif difference.
    """
    if isinstance(c, PeriodicConfig):
        red = canonical_basis(c)
        cart = red.cartesian_motif()
        best = math.inf
        for i in range(red.k):
            for j in range(red.k):
                delta = cart[j] - cart[i]
                trans = _translate_box(red.basis, delta, 0.0, pad=2)
                vecs = delta + trans @ red.basis
                norms = np.linalg.norm(vecs, axis=1)
                norms = norms[norms > tol.dedup_tol]
                if len(norms):
                    best = min(best, float(norms.min()))
        return best
    if isinstance(c, FinitePointSet):
        pts = c.points
        space = c.space
    elif isinstance(c, PatchConfig):
        # Restrict to the certified window: fringe points beyond patch_radius
        # carry no completeness guarantee and are excluded from global
        # statistics (unless the window holds fewer than two points).
        mask = c.center_dists() <= c.patch_radius + 1e-12
        pts = c.points[mask] if int(mask.sum()) >= 2 else c.points
        space = "disk"
    else:
        raise TypeError(f"unsupported configuration type {type(c)!r}")
    if len(pts) < 2:
        raise NoPairsError("at least two points are required for a minimal distance")
    return _pairwise_min(space, pts)[0]


def _pairwise_min(space, pts):
    """Minimal pairwise distance and the attaining index pair, chunked."""
    n = len(pts)
    best = math.inf
    pair = (0, 1)
    chunk = max(1, 2_000_000 // n)
    cols = np.arange(n)
    for s in range(0, n - 1, chunk):
        e = min(s + chunk, n - 1)
        block = pts[s:e]
        if space == "disk":
            d2 = np.sum((block[:, None, :] - pts[None, :, :]) ** 2, axis=2)
            denom = (1.0 - np.sum(block * block, axis=1))[:, None] * (
                1.0 - np.sum(pts * pts, axis=1)
            )[None, :]
            d = np.arccosh(1.0 + 2.0 * d2 / denom)
        else:
            d = np.linalg.norm(block[:, None, :] - pts[None, :, :], axis=2)
        upper = cols[None, :] > (np.arange(s, e))[:, None]
        d = np.where(upper, d, np.inf)
        flat = int(np.argmin(d))
        i, j = divmod(flat, n)
        if d[i, j] < best:
            best = float(d[i, j])
            pair = (s + i, j)
    return best, pair


def points_within(c, base, radius, tol=DEFAULT_TOL):
    """All configuration points at distance <= radius + class_tol from base,
    excluding base itself.  Returned sorted by (distance, x, y)."""
    cutoff = radius + tol.class_tol
    if isinstance(c, PeriodicConfig):
        base = as_vec(base, 2)
        cart = c.cartesian_motif()
        found = []
        for m in cart:
            delta = m - base
            trans = _translate_box(c.basis, delta, cutoff, pad=1)
            pts = delta + trans @ c.basis
            d = np.linalg.norm(pts, axis=1)
            keep = (d <= cutoff) & (d > tol.dedup_tol)
            found.append(base + pts[keep])
        pts = np.vstack(found) if found else np.zeros((0, 2))
        dists = np.linalg.norm(pts - base, axis=1)
    else:
        if isinstance(c, FinitePointSet):
            pts_all, space = c.points, c.space
        elif isinstance(c, PatchConfig):
            pts_all, space = c.points, "disk"
        else:
            raise TypeError(f"unsupported configuration type {type(c)!r}")
        base = as_vec(base, pts_all.shape[1])
        dists_all = _dist_many(space, base, pts_all)
        keep = (dists_all <= cutoff) & (dists_all > tol.dedup_tol)
        pts, dists = pts_all[keep], dists_all[keep]
    order = np.lexsort(tuple(pts.T[::-1]) + (dists,))
    return pts[order]


def distance_classes(c, base, max_radius, tol=DEFAULT_TOL):
    """Single-linkage clustering of distances from base, ascending.

    Classes whose representatives are closer than 2 * class_tol cannot be
    separated reliably and raise AmbiguousClassError rather than being merged.
    """
    pts = points_within(c, base, max_radius, tol)
    if len(pts) == 0:
        return []
    if isinstance(c, PeriodicConfig) or (isinstance(c, FinitePointSet) and c.space == "plane"):
        dists = np.linalg.norm(pts - as_vec(base, 2), axis=1)
    elif isinstance(c, FinitePointSet) and c.space == "sphere":
        dists = np.linalg.norm(pts - as_vec(base, 3), axis=1)
    else:
        dists = _hyp_dist_many(base, pts)
    order = np.argsort(dists, kind="stable")
    pts, dists = pts[order], dists[order]
    breaks = np.nonzero(np.diff(dists) > tol.class_tol)[0]
    starts = np.concatenate([[0], breaks + 1])
    ends = np.concatenate([breaks + 1, [len(dists)]])
    classes = [
        DistanceClass(distance=float(dists[s:e].mean()), points=pts[s:e]) for s, e in zip(starts, ends)
    ]
    for prev, cur in zip(classes, classes[1:]):
        if cur.distance - prev.distance <= 2.0 * tol.class_tol:
            raise AmbiguousClassError(
                f"distance classes at {prev.distance!r} and {cur.distance!r} are too close to separate"
            )
    return classes


def contains(c, p, tol=DEFAULT_TOL):
    """Membership test for a single point."""
    return bool(contains_many(c, np.asarray(p, dtype=float).reshape(1, -1), tol)[0])


def contains_many(c, pts, tol=DEFAULT_TOL):
    """Vectorized membership test; wraps fractional parts and checks the 3x3
    neighboring translates so points on cell boundaries are matched."""
    pts = np.asarray(pts, dtype=float)
    if isinstance(c, PeriodicConfig):
        frac = np.mod(pts @ np.linalg.inv(c.basis), 1.0)
        best = np.full(len(pts), np.inf)
        shifts = _shift_grid()
        for m in c.motif:
            for s in shifts:
                delta = (frac - m - s) @ c.basis
                d = np.linalg.norm(delta, axis=1)
                best = np.minimum(best, d)
        return best <= tol.dedup_tol
    if isinstance(c, (FinitePointSet, PatchConfig)):
        stored = c.points
        out = np.zeros(len(pts), dtype=bool)
        for i, p in enumerate(pts):
            d = np.linalg.norm(stored - p, axis=1)
            out[i] = bool(len(d)) and float(d.min()) <= tol.dedup_tol
        return out
    raise TypeError(f"unsupported configuration type {type(c)!r}")


def _hnf_rows(rows):
    """Hermite-style upper triangular basis of the integer row span of rows."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    # eliminate the first column down to a single pivot
    while True:
        nz = [r for r in rows if r[0] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[0]))
        small, big = nz[0], nz[1]
        q = big[0] // small[0]
        big[0] -= q * small[0]
        big[1] -= q * small[1]
        rows = [r for r in rows if any(r)]
    pivot0 = next((r for r in rows if r[0] != 0), None)
    seconds = [r[1] for r in rows if r[0] == 0 and r[1] != 0]
    if pivot0 is None or not seconds:
        raise ValueError("rows do not span a rank-2 sublattice")
    g = 0
    for s in seconds:
        g = math.gcd(g, abs(s))
    if pivot0[0] < 0:
        pivot0 = [-pivot0[0], -pivot0[1]]
    pivot0[1] %= g
    return np.array([pivot0, [0, g]], dtype=float)


def _period_denominator(frac, kmax, tol=1e-6):
    for q in range(2, kmax + 1):
        scaled = np.asarray(frac) * q
        if np.max(np.abs(scaled - np.round(scaled))) < tol:
            return q, np.round(scaled).astype(int)
    return None, None


def primitive_periods(c, tol=DEFAULT_TOL):
    """Shrink the motif by absorbing any translation symmetry into the basis.

    Candidate sub-periods are the pairwise motif differences; each one is
    validated by membership checks of every translated motif point.  A valid
    period t extends the lattice to L + Zt, whose basis is recovered through
    an integer Hermite reduction; the motif is then re-reduced and deduplicated
    in the finer lattice.  Iterates until no candidate survives.
    """
    cur = canonical_basis(c)
    while cur.k > 1:
        cart = cur.cartesian_motif()
        diffs = []
        for i in range(cur.k):
            for j in range(cur.k):
                if i == j:
                    continue
                d = np.mod(cur.motif[j] - cur.motif[i], 1.0)
                diffs.append(d)
        seen = set()
        cands = []
        for d in diffs:
            key = tuple(np.round(d * 1e9).astype(int) % int(1e9))
            if key in seen:
                continue
            seen.add(key)
            cands.append(d)
        cands.sort(key=lambda d: float(np.linalg.norm(d @ cur.basis)))
        applied = False
        for dfrac in cands:
            t = dfrac @ cur.basis
            if float(np.linalg.norm(t)) <= tol.dedup_tol:
                continue
            if not np.all(contains_many(cur, cart + t, tol)):
                continue
            q, pvec = _period_denominator(dfrac, cur.k)
            if q is None:
                continue
            rows = [[q, 0], [0, q], list(pvec)]
            hnf = _hnf_rows(rows)
            new_basis = (hnf / q) @ cur.basis
            inv = np.linalg.inv(new_basis)
            frac = np.mod(cart @ inv, 1.0)
            new_motif = _dedup_fracs(frac, new_basis, tol)
            index = abs(np.linalg.det(cur.basis) / np.linalg.det(new_basis))
            if abs(index - round(index)) > 1e-9 or len(new_motif) * round(index) != cur.k:
                continue
            cur = canonical_basis(PeriodicConfig(new_basis, new_motif))
            applied = True
            break
        if not applied:
            break
    return cur


def _dedup_fracs(frac, basis, tol):
    kept = []
    shifts = _shift_grid()
    for f in frac:
        dup = False
        for g in kept:
            delta = (f - g + shifts) @ basis
            if np.min(np.linalg.norm(delta, axis=1)) <= tol.dedup_tol:
                dup = True
                break
        if not dup:
            kept.append(f)
    return np.array(kept)
