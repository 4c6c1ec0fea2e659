"""Exception hierarchy shared by the whole kernel.

Every error that can surface through the CLI carries a stable one-line
``code`` used in terminal output and relied upon by the test suite.
"""


class GmapError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "E_DOMAIN"


class DuplicateNodeError(GmapError):
    """A node with this name already exists in the graph."""


class UnknownNodeError(GmapError):
    """A referenced node (dart) is not present in the graph."""


class UnknownLinkError(GmapError):
    """A referenced link id is not present in the graph."""


class ArityError(GmapError):
    """A link was given an end set that is not of size 1 or 2."""


class DimensionError(GmapError):
    """A dimension lies outside the graph's ambient range 0..n."""


class ConstraintViolationError(GmapError):
    """A query assumed the incidence constraint where it does not hold."""

    code = "E_INCIDENCE"


class UnknownLayerError(GmapError):
    """A referenced embedding layer does not exist."""

    code = "E_EMBED"


class EmbeddingError(GmapError):
    """An embedding layer is malformed (partial values, bad value type)."""

    code = "E_EMBED"


class RelabelingError(GmapError):
    """A relabeling function is malformed or applied out of its domain."""


class SchemeError(GmapError):
    """A graph or rule scheme violates a structural requirement."""


class MatchError(GmapError):
    """A match cannot be completed or is inconsistent with the host."""

    code = "E_MATCH"


class DanglingDartError(GmapError):
    """A dart scheduled for deletion still has links outside the match."""

    code = "E_DANGLING"


class MissingDirectiveError(GmapError):
    """A created dart has no directive for one of the embedding layers."""

    code = "E_EMBED"


class DirectiveError(GmapError):
    """An embedding directive is malformed or cannot be evaluated."""

    code = "E_EMBED"


class PostValidationError(GmapError):
    """Rewriting produced a graph that is not a valid generalized map."""

    code = "E_POSTVALID"

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class MeshError(GmapError):
    """A polygonal mesh violates its structural invariants."""


class MalformedFaceError(MeshError):
    """A face cycle is too short, out of range, or repeats an edge."""


class NonManifoldEdgeError(MeshError):
    """An undirected edge is used by more than two face boundaries."""


class ParseError(GmapError):
    """A text document could not be parsed; carries line/column."""

    code = "E_SYNTAX"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
