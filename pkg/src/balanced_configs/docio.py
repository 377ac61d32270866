"""On-disk JSON format for point configurations.

A document names its geometry (``euclidean2``, ``sphere2``, ``hyperbolic2``)
and its kind (``finite``, ``periodic``, ``patch``).  Periodic documents carry
a 2x2 basis (rows are the period vectors) and a motif given in fractional
coordinates relative to that basis; finite and patch documents carry explicit
coordinates.  Patch documents are hyperbolic-only and add the certified
patch radius.  Per-point labels, when present, live in the free-form string
metadata map under ``labels`` as a comma-separated list.

Coordinates are serialized with Python's shortest round-trip float text, so
``parse_config(serialize(doc))`` reproduces ``doc`` exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .configs import FinitePointSet, PatchConfig, PeriodicConfig
from .errors import ValidationError

SPACES = ("euclidean2", "sphere2", "hyperbolic2")
KINDS = ("finite", "periodic", "patch")

_KINDS_BY_SPACE = {
    "euclidean2": ("finite", "periodic"),
    "sphere2": ("finite",),
    "hyperbolic2": ("finite", "patch"),
}
_COORD_DIM = {"euclidean2": 2, "sphere2": 3, "hyperbolic2": 2}
_RUNTIME_SPACE = {"euclidean2": "plane", "sphere2": "sphere", "hyperbolic2": "disk"}
_DOC_SPACE = {v: k for k, v in _RUNTIME_SPACE.items()}

_TOP_LEVEL_FIELDS = {"space", "kind", "basis", "motif", "points", "patch_radius", "metadata"}


@dataclass(frozen=True)
class ConfigDocument:
    space: str
    kind: str
    points: tuple  # coordinate tuples; fractional motif for periodic kind
    basis: tuple | None = None
    patch_radius: float | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def labels(self):
        raw = self.metadata.get("labels")
        if raw is None:
            return None
        return tuple(raw.split(","))


def _require_number(value, fieldname):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{fieldname} must be a number, got {value!r}", field=fieldname)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{fieldname} must be finite, got {value!r}", field=fieldname)
    return value


def _parse_coords(raw, dim, fieldname):
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"{fieldname} must be a non-empty list of points", field=fieldname)
    points = []
    for i, entry in enumerate(raw):
        where = f"{fieldname}[{i}]"
        if not isinstance(entry, list) or len(entry) != dim:
            raise ValidationError(
                f"{where} must be a list of {dim} coordinates", field=where
            )
        points.append(tuple(_require_number(x, where) for x in entry))
    return tuple(points)


def _validate_space_points(space, points, fieldname):
    if space == "sphere2":
        for i, p in enumerate(points):
            norm = math.sqrt(sum(x * x for x in p))
            if abs(norm - 1.0) > 1e-9:
                raise ValidationError(
                    f"{fieldname}[{i}] must be a unit vector (norm off by {abs(norm - 1.0):.3g})",
                    field=f"{fieldname}[{i}]",
                )
    elif space == "hyperbolic2":
        for i, p in enumerate(points):
            if math.hypot(p[0], p[1]) >= 1.0:
                raise ValidationError(
                    f"{fieldname}[{i}] must lie strictly inside the unit disk",
                    field=f"{fieldname}[{i}]",
                )


def parse_config(text):
    """Parse and validate a configuration document from JSON text (or an
    already-decoded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"document is not valid JSON: {exc}", field="document")
    else:
        raw = text
    if not isinstance(raw, dict):
        raise ValidationError("document must be a JSON object", field="document")

    unknown = set(raw) - _TOP_LEVEL_FIELDS
    if unknown:
        name = sorted(unknown)[0]
        raise ValidationError(f"unknown field {name!r}", field=name)

    space = raw.get("space")
    if space is None:
        raise ValidationError("missing required field 'space'", field="space")
    if space not in SPACES:
        raise ValidationError(
            f"unknown space {space!r}; expected one of {', '.join(SPACES)}", field="space"
        )
    kind = raw.get("kind")
    if kind is None:
        raise ValidationError("missing required field 'kind'", field="kind")
    if kind not in KINDS:
        raise ValidationError(
            f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", field="kind"
        )
    if kind not in _KINDS_BY_SPACE[space]:
        raise ValidationError(f"kind {kind!r} is not supported for space {space!r}", field="kind")

    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        raise ValidationError("metadata must be a string-to-string map", field="metadata")

    basis = None
    patch_radius = None
    if kind == "periodic":
        if "points" in raw:
            raise ValidationError(
                "periodic documents use 'motif', not 'points'", field="points"
            )
        raw_basis = raw.get("basis")
        if raw_basis is None:
            raise ValidationError("periodic documents require 'basis'", field="basis")
        basis = _parse_coords(raw_basis, 2, "basis")
        if len(basis) != 2:
            raise ValidationError("basis must have exactly 2 row vectors", field="basis")
        det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
        if abs(det) <= 1e-12:
            raise ValidationError("basis rows must be linearly independent", field="basis")
        if "motif" not in raw:
            raise ValidationError("periodic documents require 'motif'", field="motif")
        points = _parse_coords(raw["motif"], 2, "motif")
    else:
        if "motif" in raw or "basis" in raw:
            bad = "motif" if "motif" in raw else "basis"
            raise ValidationError(
                f"{bad!r} is only valid for periodic documents", field=bad
            )
        if "points" not in raw:
            raise ValidationError(f"{kind} documents require 'points'", field="points")
        points = _parse_coords(raw["points"], _COORD_DIM[space], "points")
        _validate_space_points(space, points, "points")
        if kind == "patch":
            if "patch_radius" not in raw:
                raise ValidationError("patch documents require 'patch_radius'", field="patch_radius")
            patch_radius = _require_number(raw["patch_radius"], "patch_radius")
            if patch_radius < 0.0:
                raise ValidationError("patch_radius must be nonnegative", field="patch_radius")
    if kind != "patch" and "patch_radius" in raw:
        raise ValidationError("'patch_radius' is only valid for patch documents", field="patch_radius")

    labels = metadata.get("labels")
    if labels is not None and len(labels.split(",")) != len(points):
        raise ValidationError(
            "metadata labels must list one label per point", field="metadata"
        )

    return ConfigDocument(
        space=space,
        kind=kind,
        points=points,
        basis=basis,
        patch_radius=patch_radius,
        metadata=dict(metadata),
    )


def serialize(doc):
    """Render a document as deterministic JSON text."""
    out = {"space": doc.space, "kind": doc.kind}
    if doc.kind == "periodic":
        out["basis"] = [list(row) for row in doc.basis]
        out["motif"] = [list(p) for p in doc.points]
    else:
        out["points"] = [list(p) for p in doc.points]
        if doc.kind == "patch":
            out["patch_radius"] = doc.patch_radius
    if doc.metadata:
        out["metadata"] = {k: doc.metadata[k] for k in sorted(doc.metadata)}
    return json.dumps(out, indent=2) + "\n"


def to_runtime(doc):
    """Build the runtime configuration object for a parsed document."""
    labels = doc.labels
    if doc.kind == "periodic":
        return PeriodicConfig(
            np.asarray(doc.basis, dtype=float),
            np.asarray(doc.points, dtype=float),
            labels=labels,
        )
    if doc.kind == "patch":
        return PatchConfig(
            np.asarray(doc.points, dtype=float), doc.patch_radius, labels=labels
        )
    return FinitePointSet(
        _RUNTIME_SPACE[doc.space], np.asarray(doc.points, dtype=float), labels=labels
    )


def document_from(config, metadata=None):
    """Build a document for a runtime configuration object."""
    meta = dict(metadata or {})
    labels = getattr(config, "labels", None)
    if labels is not None and "labels" not in meta:
        meta["labels"] = ",".join(labels)
    if isinstance(config, PeriodicConfig):
        return ConfigDocument(
            space="euclidean2",
            kind="periodic",
            points=tuple(tuple(float(x) for x in p) for p in config.motif),
            basis=tuple(tuple(float(x) for x in row) for row in config.basis),
            metadata=meta,
        )
    if isinstance(config, PatchConfig):
        return ConfigDocument(
            space="hyperbolic2",
            kind="patch",
            points=tuple(tuple(float(x) for x in p) for p in config.points),
            patch_radius=float(config.patch_radius),
            metadata=meta,
        )
    if isinstance(config, FinitePointSet):
        return ConfigDocument(
            space=_DOC_SPACE[config.space],
            kind="finite",
            points=tuple(tuple(float(x) for x in p) for p in config.points),
            metadata=meta,
        )
    raise TypeError(f"unsupported configuration object {type(config).__name__}")
