"""Constructors for every configuration family, in all three geometries.

Planar families are returned as PeriodicConfig (lattice + motif), finite ones
as FinitePointSet, hyperbolic tilings as PatchConfig windows whose
patch_radius certifies completeness of the window.

The hyperbolic builders expand tiles nearest-frontier-first until the in-radius
of the tile union reaches a depth-proportional target, so the certified radius
grows linearly with depth regardless of the combinatorial branching of the
tiling.
"""
from __future__ import annotations

import cmath
import heapq
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .configs import FinitePointSet, PatchConfig, PeriodicConfig
from .errors import ParameterDomainError
from .geometry import as_vec
from .hyperbolic import (
    euclid_radius,
    half_turn,
    hyp_midpoint,
    reflect_through,
    segment_dist_to_origin,
)

_SQRT3 = math.sqrt(3.0)

# Fraction of the longest seed side that one unit of depth adds to the
# certified patch radius.
_DEPTH_STEP_FRACTION = 2.0 / 3.0

_DEDUP = 1e-9
_HASH_CELL = 1e-6  # spatial-hash cell; far above dedup, far below point gaps


@dataclass(frozen=True)
class SubsetFlags:
    """Selects which derived point sets of a tiling to emit."""

    vertices: bool = False
    edge_midpoints: bool = False
    face_centers: bool = False

    def __post_init__(self):
        if not (self.vertices or self.edge_midpoints or self.face_centers):
            raise ValueError("at least one subset flag must be set")


@dataclass(frozen=True)
class TriangleGroupFlags:
    """Selects which vertex-type orbits of a reflection tiling to emit."""

    p_centers: bool = False
    q_centers: bool = False
    r_centers: bool = False

    def __post_init__(self):
        if not (self.p_centers or self.q_centers or self.r_centers):
            raise ValueError("at least one vertex-type flag must be set")


@dataclass(frozen=True)
class RotationTilingFlags:
    """Selects which point sets of a rotation tiling to emit."""

    vertices: bool = False
    mid_ab: bool = False
    mid_ac: bool = False
    mid_bc: bool = False

    def __post_init__(self):
        if not (self.vertices or self.mid_ab or self.mid_ac or self.mid_bc):
            raise ValueError("at least one flag must be set")


@dataclass(frozen=True)
class TriangleGroupParams:
    p: int
    q: int
    r: int
    depth: int

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 2:
                raise ValueError(f"{name} must be an integer >= 2")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise ValueError("depth must be a nonnegative integer")


@dataclass(frozen=True)
class RotationTilingParams:
    alpha: float
    beta: float
    gamma: float
    m: int
    depth: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 3:
            raise ParameterDomainError("m must be an integer >= 3")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise ValueError("depth must be a nonnegative integer")
        if min(self.alpha, self.beta, self.gamma) <= 0.0:
            raise ParameterDomainError("all three angles must be positive")
        if abs(self.alpha + self.beta + self.gamma - 2.0 * math.pi / self.m) > 1e-12:
            raise ParameterDomainError("angles must sum to 2*pi/m")


# ---------------------------------------------------------------------------
# Planar families


def gen_lattice(v1, v2, flags):
    """Lattice tiling by parallelograms spanned by v1, v2.

    The motif collects, per cell: the vertex at the origin, the two edge
    midpoints v1/2 and v2/2, and the cell center (v1+v2)/2, as selected.
    """
    basis = np.array([as_vec(v1, 2), as_vec(v2, 2)])
    motif = []
    labels = []
    if flags.vertices:
        motif.append((0.0, 0.0))
        labels.append("vertex")
    if flags.edge_midpoints:
        motif += [(0.5, 0.0), (0.0, 0.5)]
        labels += ["edge_midpoint", "edge_midpoint"]
    if flags.face_centers:
        motif.append((0.5, 0.5))
        labels.append("face_center")
    return PeriodicConfig(basis, np.array(motif), labels=tuple(labels))


def gen_triangular(side):
    """Vertices of the edge-to-edge equilateral triangle tiling."""
    if not (side > 0.0):
        raise ValueError("side must be positive")
    basis = np.array([[side, 0.0], [side / 2.0, side * _SQRT3 / 2.0]])
    return PeriodicConfig(basis, np.array([[0.0, 0.0]]), labels=("vertex",))


def gen_hexagonal(side, flags):
    """Regular hexagon tiling with the given side length.

    The period lattice is that of the hexagon centers; each fundamental cell
    carries 2 vertices, 3 edge midpoints, and 1 face center, and the motif
    assembles whichever of those sets are selected.
    """
    if not (side > 0.0):
        raise ValueError("side must be positive")
    s = float(side)
    basis = np.array([[_SQRT3 * s, 0.0], [_SQRT3 * s / 2.0, 1.5 * s]])
    third = 1.0 / 3.0
    motif = []
    labels = []
    if flags.vertices:
        motif += [(third, third), (2 * third, 2 * third)]
        labels += ["vertex", "vertex"]
    if flags.edge_midpoints:
        motif += [(0.5, 0.0), (0.0, 0.5), (0.5, 0.5)]
        labels += ["edge_midpoint"] * 3
    if flags.face_centers:
        motif.append((0.0, 0.0))
        labels.append("face_center")
    return PeriodicConfig(basis, np.array(motif), labels=tuple(labels))


def gen_line(n, spacing):
    """n evenly spaced collinear points on the x-axis, centered at the origin."""
    if not isinstance(n, int) or n < 3:
        raise ValueError("n must be an integer >= 3")
    if not (spacing > 0.0):
        raise ValueError("spacing must be positive")
    xs = (np.arange(n) - (n - 1) / 2.0) * spacing
    pts = np.column_stack([xs, np.zeros(n)])
    return FinitePointSet("plane", pts, labels=("vertex",) * n)


# ---------------------------------------------------------------------------
# Spherical families

_PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _platonic_vertices(kind):
    if kind == "tetrahedron":
        raw = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif kind == "cube":
        raw = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    elif kind == "octahedron":
        raw = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif kind == "icosahedron":
        raw = []
        for s1 in (-1, 1):
            for s2 in (-1, 1):
                raw += [(0, s1, s2 * _PHI), (s1, s2 * _PHI, 0), (s1 * _PHI, 0, s2)]
    elif kind == "dodecahedron":
        raw = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
        inv = 1.0 / _PHI
        for s1 in (-1, 1):
            for s2 in (-1, 1):
                raw += [(0, s1 * inv, s2 * _PHI), (s1 * inv, s2 * _PHI, 0), (s1 * _PHI, 0, s2 * inv)]
    else:
        raise ValueError(f"unknown sphere tiling kind {kind!r}")
    pts = np.array(raw, dtype=float)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


_EDGE_COUNTS = {"tetrahedron": 6, "cube": 12, "octahedron": 12, "dodecahedron": 30, "icosahedron": 30}
_FACE_COUNTS = {"tetrahedron": 4, "cube": 6, "octahedron": 8, "dodecahedron": 12, "icosahedron": 20}


def _platonic_edges(verts):
    d = np.linalg.norm(verts[:, None, :] - verts[None, :, :], axis=2)
    iu = np.triu_indices(len(verts), k=1)
    dmin = d[iu].min()
    pairs = [(i, j) for i, j in zip(*iu) if d[i, j] <= dmin + 1e-9]
    return pairs


def _platonic_faces(verts):
    from scipy.spatial import ConvexHull

    hull = ConvexHull(verts)
    groups = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, 7))
        groups.setdefault(key, set()).update(int(i) for i in simplex)
    centers = []
    for key in sorted(groups):
        face = verts[sorted(groups[key])]
        c = face.mean(axis=0)
        centers.append(c / np.linalg.norm(c))
    return np.array(centers)


def parse_sphere_kind(kind):
    """Split a kind string into (name, n); accepts forms like "ngon(5)"."""
    kind = kind.strip()
    if kind.startswith("ngon"):
        rest = kind[4:].strip()
        if not rest:
            return "ngon", None
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1].strip()
        try:
            return "ngon", int(rest)
        except ValueError:
            raise ValueError(f"malformed ngon kind {kind!r}; expected ngon(n)")
    return kind, None


def gen_sphere(kind, flags, n=None):
    """Vertices / edge midpoints / face centers of a regular spherical tiling.

    kind is one of the five Platonic solids, or "ngon" (equivalently
    "ngon(n)") for the tiling by two regular n-gon hemispheres glued along the
    equator: its vertices are n evenly spaced equatorial points, its edge
    midpoints the same points rotated by pi/n, and its face centers the poles.
    """
    name, parsed_n = parse_sphere_kind(kind) if isinstance(kind, str) else (kind, None)
    if parsed_n is not None:
        n = parsed_n
    pieces = []
    labels = []
    if name == "ngon":
        if n is None or not isinstance(n, int) or n < 2:
            raise ValueError("ngon requires an integer vertex count n >= 2")
        angles = 2.0 * math.pi * np.arange(n) / n
        ring = np.column_stack([np.cos(angles), np.sin(angles), np.zeros(n)])
        if flags.vertices:
            pieces.append(ring)
            labels += ["vertex"] * n
        if flags.edge_midpoints:
            shifted = angles + math.pi / n
            pieces.append(np.column_stack([np.cos(shifted), np.sin(shifted), np.zeros(n)]))
            labels += ["edge_midpoint"] * n
        if flags.face_centers:
            pieces.append(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))
            labels += ["face_center"] * 2
    else:
        verts = _platonic_vertices(name)
        if flags.vertices:
            pieces.append(verts)
            labels += ["vertex"] * len(verts)
        if flags.edge_midpoints:
            pairs = _platonic_edges(verts)
            if len(pairs) != _EDGE_COUNTS[name]:
                raise RuntimeError(f"edge detection for {name} found {len(pairs)} edges")
            mids = np.array([verts[i] + verts[j] for i, j in pairs])
            mids /= np.linalg.norm(mids, axis=1, keepdims=True)
            pieces.append(mids)
            labels += ["edge_midpoint"] * len(mids)
        if flags.face_centers:
            centers = _platonic_faces(verts)
            if len(centers) != _FACE_COUNTS[name]:
                raise RuntimeError(f"face detection for {name} found {len(centers)} faces")
            pieces.append(centers)
            labels += ["face_center"] * len(centers)
    return FinitePointSet("sphere", np.vstack(pieces), labels=tuple(labels))


# ---------------------------------------------------------------------------
# Hyperbolic tilings


class _PointStore:
    """Interning store for disk points with spatial-hash deduplication."""

    __slots__ = ("pos", "grid")

    def __init__(self):
        self.pos = []
        self.grid = {}

    def intern(self, z):
        scale = 1.0 / _HASH_CELL
        kx = round(z.real * scale)
        ky = round(z.imag * scale)
        pos = self.pos
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for i in self.grid.get((kx + dx, ky + dy), ()):
                    if abs(pos[i] - z) <= _DEDUP:
                        return i, False
        idx = len(pos)
        pos.append(z)
        self.grid.setdefault((kx, ky), []).append(idx)
        return idx, True


def _triangle_sides(angle_a, angle_b, angle_c):
    """Side lengths of the hyperbolic triangle with the given angles.

    Returns (a, b, c) with each side opposite the same-named angle, from the
    hyperbolic law of cosines for angles:
    cosh(side opposite C) = (cos A cos B + cos C) / (sin A sin B).
    """
    ca, cb, cc = math.cos(angle_a), math.cos(angle_b), math.cos(angle_c)
    sa, sb, sc = math.sin(angle_a), math.sin(angle_b), math.sin(angle_c)
    side_a = math.acosh(max(1.0, (cb * cc + ca) / (sb * sc)))
    side_b = math.acosh(max(1.0, (ca * cc + cb) / (sa * sc)))
    side_c = math.acosh(max(1.0, (ca * cb + cc) / (sa * sb)))
    return side_a, side_b, side_c


class _Tiling:
    """Internal result of a tiling build: interned points plus tile triples."""

    __slots__ = ("verts", "vtypes", "tiles", "patch_radius", "sides", "mids", "mid_classes")

    def __init__(self, verts, vtypes, tiles, patch_radius, sides, mids=None, mid_classes=None):
        self.verts = verts
        self.vtypes = vtypes
        self.tiles = tiles
        self.patch_radius = patch_radius
        self.sides = sides
        self.mids = mids
        self.mid_classes = mid_classes


@lru_cache(maxsize=None)
def _build_triangle_group(p, q, r, depth):
    angle_p, angle_q, angle_r = math.pi / p, math.pi / q, math.pi / r
    side_a, side_b, side_c = _triangle_sides(angle_p, angle_q, angle_r)
    stop = depth * _DEPTH_STEP_FRACTION * max(side_a, side_b, side_c)

    store = _PointStore()
    vtypes = []
    for z, t in (
        (0j, "p"),
        (complex(euclid_radius(side_c), 0.0), "q"),
        (euclid_radius(side_b) * cmath.exp(1j * angle_p), "r"),
    ):
        store.intern(z)
        vtypes.append(t)
    pos = store.pos

    tiles = {frozenset((0, 1, 2)): (0, 1, 2)}
    # edge key (i, j) with i < j -> [adjacent tile count, opposite vertex]
    edges = {}
    heap = []
    tick = itertools.count()
    for u, v, opp in ((1, 2, 0), (0, 2, 1), (0, 1, 2)):
        edges[(u, v)] = [1, opp]
        heapq.heappush(heap, (segment_dist_to_origin(pos[u], pos[v]), next(tick), u, v))

    patch_radius = 0.0
    while heap:
        dist, _, u, v = heapq.heappop(heap)
        entry = edges[(u, v)]
        if entry[0] >= 2:
            continue
        if dist >= stop:
            patch_radius = dist
            break
        opp = entry[1]
        entry[0] = 2
        nidx, created = store.intern(reflect_through(pos[u], pos[v], pos[opp]))
        if created:
            vtypes.append(vtypes[opp])
        key = frozenset((u, v, nidx))
        if key in tiles:
            continue
        tiles[key] = tuple(sorted((u, v, nidx)))
        for a, b, o in ((u, nidx, v), (v, nidx, u)):
            ek = (a, b) if a < b else (b, a)
            existing = edges.get(ek)
            if existing is None:
                edges[ek] = [1, o]
                heapq.heappush(heap, (segment_dist_to_origin(pos[a], pos[b]), next(tick), ek[0], ek[1]))
            else:
                existing[0] = 2
    return _Tiling(
        verts=list(pos),
        vtypes=tuple(vtypes),
        tiles=tuple(tiles.values()),
        patch_radius=patch_radius,
        sides=(side_a, side_b, side_c),
    )


def gen_hyp_triangle_group(params, flags):
    """Vertex-type orbits of the reflection tiling by triangles with angles
    pi/p, pi/q, pi/r.

    The seed triangle sits with its p-vertex at the disk origin and the edge
    to its q-vertex along the positive x-axis.  Tiles are grown by reflecting
    across frontier edges, always expanding the edge nearest the origin, until
    every frontier edge is at least depth * 2/3 * (longest side) away.  The
    returned patch_radius is the in-radius of the generated tile union: every
    tiling point of a selected type within that distance of the origin is
    present.  Points beyond patch_radius are genuine tiling points but carry
    no completeness guarantee.
    """
    if 1.0 / params.p + 1.0 / params.q + 1.0 / params.r >= 1.0:
        raise ParameterDomainError(
            "triangle group requires 1/p + 1/q + 1/r < 1; "
            f"got ({params.p}, {params.q}, {params.r})"
        )
    tiling = _build_triangle_group(params.p, params.q, params.r, params.depth)
    selected = set()
    if flags.p_centers:
        selected.add("p")
    if flags.q_centers:
        selected.add("q")
    if flags.r_centers:
        selected.add("r")
    pts = []
    labels = []
    for z, t in zip(tiling.verts, tiling.vtypes):
        if t in selected and abs(z) < 1.0 - 1e-15:
            pts.append((z.real, z.imag))
            labels.append(t + "_center")
    return PatchConfig(np.array(pts).reshape(-1, 2), tiling.patch_radius, labels=tuple(labels))


@lru_cache(maxsize=None)
def _build_rotation_tiling(alpha, beta, gamma, m, depth):
    side_a, side_b, side_c = _triangle_sides(alpha, beta, gamma)
    stop = depth * _DEPTH_STEP_FRACTION * max(side_a, side_b, side_c)

    store = _PointStore()
    # seed: alpha-vertex at the origin, beta-vertex on the positive x-axis
    seed = (0j, complex(euclid_radius(side_c), 0.0), euclid_radius(side_b) * cmath.exp(1j * alpha))
    for z in seed:
        store.intern(z)
    pos = store.pos

    mstore = _PointStore()
    mid_classes = []

    def intern_mid(z, cls):
        idx, created = mstore.intern(z)
        if created:
            mid_classes.append(cls)
        elif mid_classes[idx] != cls:
            raise RuntimeError("edge-midpoint class collision in rotation tiling")
        return idx

    # tiles keyed by vertex-index set, value = (alpha-role, beta-role, gamma-role)
    tiles = {frozenset((0, 1, 2)): (0, 1, 2)}
    # edge key -> [count, opposite vertex, midpoint, class, role-ordered pair]
    edges = {}
    heap = []
    tick = itertools.count()

    def add_edge(i_first, i_second, opp, cls):
        ek = (i_first, i_second) if i_first < i_second else (i_second, i_first)
        existing = edges.get(ek)
        if existing is not None:
            if existing[3] != cls:
                raise RuntimeError("inconsistent edge class in rotation tiling")
            existing[0] += 1
            return
        mid = hyp_midpoint(pos[i_first], pos[i_second])
        intern_mid(mid, cls)
        edges[ek] = [1, opp, mid, cls, (i_first, i_second)]
        heapq.heappush(heap, (segment_dist_to_origin(pos[ek[0]], pos[ek[1]]), next(tick), ek[0], ek[1]))

    add_edge(0, 1, 2, "ab")
    add_edge(0, 2, 1, "ac")
    add_edge(1, 2, 0, "bc")

    patch_radius = 0.0
    while heap:
        dist, _, u, v = heapq.heappop(heap)
        entry = edges[(u, v)]
        if entry[0] >= 2:
            continue
        if dist >= stop:
            patch_radius = dist
            break
        _, opp, mid, cls, (first, second) = entry
        nidx, _ = store.intern(half_turn(mid, pos[opp]))
        # a half-turn swaps the popped edge's endpoints and carries the
        # opposite vertex to the new one; roles follow the moved vertices
        if cls == "ab":
            new_tile = (second, first, nidx)
        elif cls == "ac":
            new_tile = (second, nidx, first)
        else:
            new_tile = (nidx, second, first)
        key = frozenset(new_tile)
        prev = tiles.get(key)
        if prev is not None:
            if prev != new_tile:
                raise RuntimeError("inconsistent tile roles in rotation tiling")
            entry[0] = 2
            continue
        tiles[key] = new_tile
        ia, ib, ic = new_tile
        # the popped edge is among these three and gets its second tile here
        add_edge(ia, ib, ic, "ab")
        add_edge(ia, ic, ib, "ac")
        add_edge(ib, ic, ia, "bc")
    return _Tiling(
        verts=list(pos),
        vtypes=None,
        tiles=tuple(tiles.values()),
        patch_radius=patch_radius,
        sides=(side_a, side_b, side_c),
        mids=list(mstore.pos),
        mid_classes=tuple(mid_classes),
    )


def gen_hyp_rotation_tiling(params, flags):
    """Point sets of the tiling generated by half-turns about edge midpoints.

    The seed triangle has angles alpha, beta, gamma summing to 2*pi/m, with
    the alpha-vertex at the origin; around every vertex of the tiling the
    angles follow the pattern alpha, beta, gamma repeated m times.  Expansion
    and the patch_radius guarantee follow the same nearest-frontier scheme as
    the reflection tilings.  mid_xy selects the midpoints of edges joining the
    x-angle and y-angle vertices of each tile.
    """
    tiling = _build_rotation_tiling(params.alpha, params.beta, params.gamma, params.m, params.depth)
    pts = []
    labels = []
    if flags.vertices:
        for z in tiling.verts:
            if abs(z) < 1.0 - 1e-15:
                pts.append((z.real, z.imag))
                labels.append("vertex")
    for cls, wanted in (("ab", flags.mid_ab), ("ac", flags.mid_ac), ("bc", flags.mid_bc)):
        if not wanted:
            continue
        for z, mc in zip(tiling.mids, tiling.mid_classes):
            if mc == cls and abs(z) < 1.0 - 1e-15:
                pts.append((z.real, z.imag))
                labels.append("mid_" + cls)
    return PatchConfig(np.array(pts).reshape(-1, 2), tiling.patch_radius, labels=tuple(labels))
