"""Exception types shared across the package."""


class InvalidPointError(ValueError):
    """A coordinate fails the constraints of its geometry (non-unit sphere vector, point outside the open disk, non-finite component)."""


class InvalidGeodesicError(ValueError):
    """A geodesic descriptor does not describe a geodesic of the disk model."""


class DegenerateDirectionError(ValueError):
    """No direction can be defined because two points coincide (within tolerance)."""


class NoPairsError(ValueError):
    """A pairwise quantity was requested for a configuration with fewer than two points."""


class AmbiguousClassError(Exception):
    """Distance clustering produced classes too close together to separate reliably."""


class InsufficientPatchError(Exception):
    """A hyperbolic patch is too shallow to verify any point at the requested radius."""


class ParameterDomainError(ValueError):
    """Tiling parameters fall outside the hyperbolic regime."""


class SceneError(RuntimeError):
    """A constructed inequality scene failed to satisfy its defining constraints."""


class ValidationError(ValueError):
    """A configuration document failed schema or constraint validation.

    field names the offending document location (for example ``points[2]``).
    """

    def __init__(self, message, field="document"):
        self.field = field
        super().__init__(message)


class RenderError(ValueError):
    """Rendering was requested for an empty or degenerate window."""
