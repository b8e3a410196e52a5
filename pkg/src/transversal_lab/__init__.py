"""Line transversals of convex sections on parallel planes.

Library + CLI for checking transversal feasibility with exact rational
arithmetic, computing minimax (equal-distance) lines, classifying the
signed-permutation codes of half-plane configurations, and constructing
good deformations.
"""

from .errors import (
    AnchorCollision,
    CenterOnPlane,
    ClassMismatch,
    CoincidentPoints,
    Degenerate,
    DuplicateHeights,
    EmptyImage,
    HypothesisViolated,
    InvalidHeight,
    IoError,
    NoConvergence,
    OnSection,
    ParseError,
    TooFewSections,
    TransversalLabError,
    ValidationError,
)
from .geom import (
    HalfPlane,
    HalfPlaneConfig,
    LineParam,
    Section,
    central_project,
    dist_point_polygon,
    genericity_check,
    line_point_at,
)

__all__ = [
    "AnchorCollision",
    "CenterOnPlane",
    "ClassMismatch",
    "CoincidentPoints",
    "Degenerate",
    "DuplicateHeights",
    "EmptyImage",
    "HalfPlane",
    "HalfPlaneConfig",
    "HypothesisViolated",
    "InvalidHeight",
    "IoError",
    "LineParam",
    "NoConvergence",
    "OnSection",
    "ParseError",
    "Section",
    "TooFewSections",
    "TransversalLabError",
    "ValidationError",
    "central_project",
    "dist_point_polygon",
    "genericity_check",
    "line_point_at",
]

__version__ = "0.1.0"
