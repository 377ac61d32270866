"""Balanced point configurations in the plane, on the sphere, and in the
hyperbolic disk: construction, verification, classification, and rendering."""

__version__ = "0.1.0"

from .classify import (
    CLASS_TAGS,
    HEX_VERTICES,
    HEX_WITH_MIDPOINTS,
    HEX_WITH_MIDPOINTS_AND_CENTERS,
    LATTICE,
    LATTICE_WITH_MIDPOINTS,
    LINE,
    TRIANGULAR_LATTICE,
    UNKNOWN,
    ConfigClass,
    GroupBalanceResult,
    SymmetryWitness,
    classify,
    is_group_balanced,
    neighbor_case_signature,
    regenerate,
    rotation_symmetries_about,
)
from .configs import (
    DistanceClass,
    FinitePointSet,
    PatchConfig,
    PeriodicConfig,
    canonical_basis,
    contains,
    contains_many,
    distance_classes,
    min_distance,
    points_within,
    primitive_periods,
)
from .docio import ConfigDocument, document_from, parse_config, serialize, to_runtime
from .errors import (
    AmbiguousClassError,
    InsufficientPatchError,
    InvalidGeodesicError,
    InvalidPointError,
    NoPairsError,
    ParameterDomainError,
    RenderError,
    SceneError,
    ValidationError,
)
from .generators import (
    RotationTilingFlags,
    RotationTilingParams,
    SubsetFlags,
    TriangleGroupFlags,
    TriangleGroupParams,
    gen_hexagonal,
    gen_hyp_rotation_tiling,
    gen_hyp_triangle_group,
    gen_lattice,
    gen_line,
    gen_sphere,
    gen_triangular,
    parse_sphere_kind,
)
from .geometry import DEFAULT_TOL, Tolerance
from .inequalities import (
    CheckResult,
    LemmaCheck,
    check_angle_bound_60_90,
    greedy_bisector_sum,
    run_catalog,
)
from .render import RenderStyle, render_svg
from .verify import (
    BalanceReport,
    ClassCheck,
    VerifyParams,
    check_min_distance_property,
    max_neighbor_count,
    verify_hyperbolic,
    verify_plane,
    verify_sphere,
)

__all__ = [
    "__version__",
    "AmbiguousClassError",
    "BalanceReport",
    "CLASS_TAGS",
    "CheckResult",
    "ClassCheck",
    "ConfigClass",
    "ConfigDocument",
    "DEFAULT_TOL",
    "DistanceClass",
    "FinitePointSet",
    "GroupBalanceResult",
    "HEX_VERTICES",
    "HEX_WITH_MIDPOINTS",
    "HEX_WITH_MIDPOINTS_AND_CENTERS",
    "InsufficientPatchError",
    "InvalidGeodesicError",
    "InvalidPointError",
    "LATTICE",
    "LATTICE_WITH_MIDPOINTS",
    "LINE",
    "LemmaCheck",
    "NoPairsError",
    "ParameterDomainError",
    "PatchConfig",
    "PeriodicConfig",
    "RenderError",
    "RenderStyle",
    "RotationTilingFlags",
    "RotationTilingParams",
    "SceneError",
    "SubsetFlags",
    "SymmetryWitness",
    "TRIANGULAR_LATTICE",
    "Tolerance",
    "TriangleGroupFlags",
    "TriangleGroupParams",
    "UNKNOWN",
    "ValidationError",
    "VerifyParams",
    "canonical_basis",
    "check_angle_bound_60_90",
    "check_min_distance_property",
    "classify",
    "contains",
    "contains_many",
    "distance_classes",
    "document_from",
    "gen_hexagonal",
    "gen_hyp_rotation_tiling",
    "gen_hyp_triangle_group",
    "gen_lattice",
    "gen_line",
    "gen_sphere",
    "gen_triangular",
    "greedy_bisector_sum",
    "is_group_balanced",
    "max_neighbor_count",
    "min_distance",
    "neighbor_case_signature",
    "parse_config",
    "parse_sphere_kind",
    "points_within",
    "primitive_periods",
    "regenerate",
    "render_svg",
    "rotation_symmetries_about",
    "run_catalog",
    "serialize",
    "to_runtime",
    "verify_hyperbolic",
    "verify_plane",
    "verify_sphere",
]
