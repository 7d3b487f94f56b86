"""Drawing containers shared by the drawers, the verifier and the I/O layer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class GridDrawing:
    """Integer vertex positions plus the edge list."""

    points: dict[int, tuple[int, int]]
    edges: list[tuple[int, int]]
    provenance: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    def extents(self) -> tuple[int, int]:
        xs = [p[0] for p in self.points.values()]
        ys = [p[1] for p in self.points.values()]
        if not xs:
            return 0, 0
        return max(xs) - min(xs), max(ys) - min(ys)

    def translated(self, dx: int, dy: int) -> GridDrawing:
        pts = {v: (x + dx, y + dy) for v, (x, y) in self.points.items()}
        return GridDrawing(pts, list(self.edges), self.provenance, dict(self.meta))

    def normalized(self) -> GridDrawing:
        """Shift so the minimum coordinates are zero."""
        if not self.points:
            return self
        mx = min(p[0] for p in self.points.values())
        my = min(p[1] for p in self.points.values())
        return self.translated(-mx, -my)


@dataclass(frozen=True)
class Segment:
    u: int
    v: int


@dataclass(frozen=True)
class Arc:
    """Circular arc from ``u`` to ``v`` around ``center``.

    ``ccw`` tells the sweep direction when travelling from ``u`` to ``v``.
    Coordinates are whatever number type the drawer used (mpmath or float).
    """

    u: int
    v: int
    center: tuple[Any, Any]
    radius: Any
    ccw: bool


Primitive = Segment | Arc


@dataclass
class ArcDrawing:
    points: dict[int, tuple[Any, Any]]
    edges: dict[tuple[int, int], Primitive]
    provenance: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    def primitive(self, u: int, v: int) -> Primitive:
        return self.edges[(u, v) if (u, v) in self.edges else (v, u)]
