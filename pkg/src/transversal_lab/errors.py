"""Exception hierarchy shared by all modules."""


class TransversalLabError(Exception):
    """Base class for every library-specific error."""


class CenterOnPlane(TransversalLabError):
    """Projection center lies on the source or target plane."""


class DuplicateHeights(TransversalLabError):
    """Two sections or half-planes share the same height."""


class TooFewSections(TransversalLabError):
    """An operation needs more sections than were supplied."""


class NoConvergence(TransversalLabError):
    """Iteration budget exhausted before the requested tolerance."""


class OnSection(TransversalLabError):
    """A minimax anchor touches its section, so the inward normal is undefined."""


class EmptyImage(TransversalLabError):
    """A set-valued image came out empty, violating the map's hypotheses."""


class Degenerate(TransversalLabError):
    """Half-plane boundaries are parallel (or otherwise degenerate)."""


class AnchorCollision(TransversalLabError):
    """Configuration anchors do not sit on a single non-horizontal line."""


class CoincidentPoints(TransversalLabError):
    """Collinear points passed to a ratio are not pairwise distinct."""


class ClassMismatch(TransversalLabError):
    """A configuration does not realize the requested combinatorial class."""


class HypothesisViolated(TransversalLabError):
    """A theorem hypothesis failed; the message names which one."""


class InvalidHeight(TransversalLabError):
    """A height outside the generator's domain."""


class ParseError(TransversalLabError):
    """Scene file is not syntactically valid."""


class ValidationError(TransversalLabError):
    """Scene file parsed but violates a structural invariant."""


class IoError(TransversalLabError):
    """Wraps an OS-level failure while reading or writing artifacts."""
