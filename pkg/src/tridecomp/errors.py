"""Exception hierarchy shared by every module of the package."""


class GraphError(ValueError):
    """Base class for invalid graph input."""


class LoopEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class SameVertex(GraphError):
    pass


class NotATriangle(GraphError):
    pass


class NotSimple(GraphError):
    pass


class NotPlanar(GraphError):
    """Raised when a plane embedding is required but none exists.

    ``witness`` optionally holds the edge ids of a Kuratowski subgraph.
    """

    def __init__(self, message="graph is not planar", witness=None):
        super().__init__(message)
        self.witness = witness


class NotConnected(GraphError):
    pass


class NotMaximalPlanar(GraphError):
    pass


class KindMismatch(GraphError):
    pass


class TooLarge(GraphError):
    pass


class NotK4Underlying(GraphError):
    pass


class NotK4MinusEUnderlying(GraphError):
    pass


class ConditionUnsatisfied(GraphError):
    pass


class NonHalfGranular(GraphError):
    pass


class UnknownName(KeyError):
    pass


class ParseError(ValueError):
    """Malformed graph or certificate document."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CertificateError(ValueError):
    """A certificate failed verification; the class name is the violation."""

    @property
    def violation(self):
        return type(self).__name__


class InvalidDepletion(CertificateError):
    pass


class InvalidEmbedding(CertificateError):
    pass


class DualNotBipartite(CertificateError):
    pass


class DegreeNotThree(CertificateError):
    pass


class NotAPartition(CertificateError):
    pass


class UnknownTriangle(CertificateError):
    pass


class NegativeWeight(CertificateError):
    pass


class InconsistentCover(CertificateError):
    pass


class GraphMismatch(CertificateError):
    pass
