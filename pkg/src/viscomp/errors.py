"""Exception hierarchy shared by every module."""

from __future__ import annotations


class VisCompError(Exception):
    """Base class for all library errors."""


class InvalidRotation(VisCompError):
    """Adjacency is asymmetric, out of range, or contains a self-loop."""


class MultiEdge(VisCompError):
    """A rotation lists the same neighbor twice."""


class NotPlanarEmbedding(VisCompError):
    """Face traversal violates Euler's formula."""


class NotConnected(VisCompError):
    pass


class NTooSmall(VisCompError):
    pass


class NotTriangulation(VisCompError):
    pass


class Not3Tree(VisCompError):
    pass


class NotMaximalOuterplanar(VisCompError):
    pass


class NotATree(VisCompError):
    pass


class InvariantViolation(VisCompError):
    """Raised when a drawing invariant fails mid-construction (a bug)."""


class GeometryBreakdown(VisCompError):
    """Floating point geometry collapsed below the working precision."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


class DegenerateTriangle(GeometryBreakdown):
    """Three points that should span a triangle are (numerically) collinear."""


class OverlappingEdges(VisCompError):
    """Two edges leave a vertex along the same ray."""


class ParseError(VisCompError):
    pass


class ClassMismatch(VisCompError):
    pass
