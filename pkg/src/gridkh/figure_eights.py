"""Figure-eight curves, their intersection points with the horizontal segments,
and Bigelow generators.

All coordinates are exact :class:`~fractions.Fraction` values.  The curve of
column ``c`` with puncture rows ``b < t`` is the closed polyline

    waist -> up the left strand -> over the top -> down the right strand
          -> waist -> down the left strand -> under the bottom
          -> up the right strand -> waist

which turns clockwise around the top puncture and counterclockwise around
the bottom one, crossing itself once at the waist.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .grid import GridDiagram

__all__ = [
    "HALF_WIDTH",
    "OVERSHOOT",
    "CORNER",
    "ZPoint",
    "FigureEight",
    "FigureEights",
    "Generator",
    "PointOnPath",
    "build_figure_eights",
    "distinguished_generator",
    "enumerate_generators",
    "winding_number",
]

HALF_WIDTH = Fraction(1, 4)
OVERSHOOT = Fraction(1, 4)
CORNER = Fraction(1, 8)

LEFT, RIGHT = "L", "R"
HIGH, LOW = "high", "low"


class PointOnPath(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ZPoint:
    column: int
    row: int
    side: str
    above_waist: bool

    @property
    def x(self) -> Fraction:
        return self.column - HALF_WIDTH if self.side == LEFT else self.column + HALF_WIDTH

    @property
    def y(self) -> Fraction:
        return Fraction(self.row)

    @property
    def xy(self) -> tuple[Fraction, Fraction]:
        return self.x, self.y

    @property
    def p(self) -> int:
        """1 on upward-oriented strands (left above the waist, right below)."""
        return 1 if (self.side == LEFT) == self.above_waist else 0

    def to_dict(self) -> dict:
        return {"column": self.column, "row": self.row, "side": self.side}


@dataclass(frozen=True, order=True)
class Generator:
    """One ZPoint per column and per row, stored in column order."""

    points: tuple[ZPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    def in_column(self, column: int) -> ZPoint:
        return self.points[column - 1]

    def row_map(self) -> dict[int, ZPoint]:
        return {z.row: z for z in self.points}

    def to_list(self) -> list[dict]:
        return [z.to_dict() for z in self.points]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __str__(self):
        return "{" + ", ".join(f"{z.column}{z.side}{z.row}" for z in self.points) + "}"


@dataclass(frozen=True)
class FigureEight:
    column: int
    bottom_row: int
    top_row: int
    waist_y: Fraction
    polyline: tuple[tuple[Fraction, Fraction], ...]
    zpoints: tuple[ZPoint, ...]
    half_width: Fraction = HALF_WIDTH
    overshoot: Fraction = OVERSHOOT

    # index of the polyline segment carrying each (side, above_waist) strand
    STRAND_SEGMENT = {(LEFT, True): 1, (RIGHT, True): 4, (LEFT, False): 7, (RIGHT, False): 10}

    def locate(self, z: ZPoint) -> tuple[int, Fraction]:
        """(segment index, distance from that segment's start) of a point on the curve."""
        k = self.STRAND_SEGMENT[z.side, z.above_waist]
        start = self.polyline[k]
        return k, abs(z.y - start[1])

    def arc(self, a: ZPoint, b: ZPoint, forward: bool = True) -> list[tuple[Fraction, Fraction]]:
        """Vertices of the arc from ``a`` to ``b`` along (or against) the orientation."""
        poly = self.polyline
        m = len(poly)
        if a == b:
            return [a.xy]
        if not forward:
            return self.arc(b, a, True)[::-1]
        ka, ta = self.locate(a)
        kb, tb = self.locate(b)
        if ka == kb and tb > ta:
            return [a.xy, b.xy]
        out = [a.xy]
        k = (ka + 1) % m
        while True:
            out.append(poly[k])
            if k == kb:
                break
            k = (k + 1) % m
        out.append(b.xy)
        return out


def _figure_eight_polyline(c, b, t, w):
    e, dl, k = HALF_WIDTH, OVERSHOOT, CORNER
    c = Fraction(c)
    return (
        (c, w),
        (c - e, w + k),
        (c - e, t + dl),
        (c, t + dl + k),
        (c + e, t + dl),
        (c + e, w + k),
        (c, w),
        (c - e, w - k),
        (c - e, b - dl),
        (c, b - dl - k),
        (c + e, b - dl),
        (c + e, w - k),
    )


class FigureEights:
    """All figure-eights of a grid together with the point set Z."""

    def __init__(self, grid: GridDiagram, waist: str = HIGH):
        if waist not in (HIGH, LOW):
            raise ValueError(f"waist must be 'high' or 'low', not {waist!r}")
        self.grid = grid
        self.waist = waist
        self.models: dict[int, FigureEight] = {}
        self.by_column: dict[int, list[ZPoint]] = {}
        n = grid.size
        for c in range(1, n + 1):
            b, t = grid.vertical_span(c)
            w = Fraction(2 * t - 1, 2) if waist == HIGH else Fraction(2 * b + 1, 2)
            pts = []
            for r in range(b, t + 1):
                lo, hi = grid.horizontal_span(r)
                above = r > w
                if r in (b, t):
                    side = RIGHT if hi > c else LEFT
                    pts.append(ZPoint(c, r, side, above))
                elif lo < c < hi:
                    pts.append(ZPoint(c, r, LEFT, above))
                    pts.append(ZPoint(c, r, RIGHT, above))
            pts.sort()
            self.models[c] = FigureEight(c, b, t, w, _figure_eight_polyline(c, b, t, w), tuple(pts))
            self.by_column[c] = pts
        self.zpoints = [z for c in range(1, n + 1) for z in self.by_column[c]]
        self._lookup = {(z.column, z.row, z.side): z for z in self.zpoints}

    def point(self, column: int, row: int, side: str) -> ZPoint:
        return self._lookup[column, row, side]

    def points_at(self, column: int, row: int) -> list[ZPoint]:
        return [z for z in self.by_column[column] if z.row == row]

    def is_puncture_row(self, z: ZPoint) -> bool:
        m = self.models[z.column]
        return z.row in (m.bottom_row, m.top_row)

    def generator(self, points) -> Generator:
        """Build a Generator from (column, row, side) triples or ZPoints, checking validity."""
        pts = [p if isinstance(p, ZPoint) else self.point(*p) for p in points]
        n = self.grid.size
        if sorted(z.column for z in pts) != list(range(1, n + 1)) or \
                sorted(z.row for z in pts) != list(range(1, n + 1)):
            raise ValueError("a generator needs exactly one point per row and per column")
        return Generator(tuple(pts))


def build_figure_eights(d: GridDiagram, waist: str = HIGH) -> FigureEights:
    return FigureEights(d, waist)


def distinguished_generator(fe: FigureEights, which: str = "X") -> Generator:
    """The generator of points nearest to the X's (``"X"``) or to the O's (``"O"``)."""
    g = fe.grid
    rows = g.x_rows if which.upper() == "X" else g.o_rows
    pts = []
    for c in range(1, g.size + 1):
        (z,) = fe.points_at(c, rows[c - 1])
        pts.append(z)
    return Generator(tuple(pts))


def enumerate_generators(fe: FigureEights) -> list[Generator]:
    """Every generator, in lexicographic (column, row, side) order."""
    n = fe.grid.size
    out: list[Generator] = []
    used = [False] * (n + 1)
    chosen: list[ZPoint] = []

    def rec(c):
        if c > n:
            out.append(Generator(tuple(chosen)))
            return
        for z in fe.by_column[c]:
            if not used[z.row]:
                used[z.row] = True
                chosen.append(z)
                rec(c + 1)
                chosen.pop()
                used[z.row] = False

    rec(1)
    return out


def _directions():
    yield (2, 1)
    yield (3, 1)
    for k in count(2):
        yield (2 * k + 1, k)


def _on_segment(p, a, b) -> bool:
    (px, py), (ax, ay), (bx, by) = p, a, b
    if (bx - ax) * (py - ay) - (by - ay) * (px - ax):
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def winding_number(path, point) -> int:
    """Winding number of a closed polyline around ``point`` by exact ray casting."""
    pts = [(Fraction(x), Fraction(y)) for x, y in path]
    px, py = Fraction(point[0]), Fraction(point[1])
    m = len(pts)
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(m) if pts[i] != pts[(i + 1) % m]]
    for a, b in segs:
        if _on_segment((px, py), a, b):
            raise PointOnPath(f"{point} lies on the path")
    for dx, dy in _directions():
        total = 0
        ok = True
        for (ax, ay), (bx, by) in segs:
            ex, ey = bx - ax, by - ay
            den = dx * ey - dy * ex
            rx, ry = ax - px, ay - py
            if den == 0:
                if dx * ry - dy * rx == 0:
                    ok = False  # segment runs along the ray's line
                    break
                continue
            s = (rx * ey - ry * ex) / den
            u = (rx * dy - ry * dx) / den
            if s <= 0 or u < 0 or u > 1:
                continue
            if u == 0 or u == 1:
                ok = False  # ray meets a vertex
                break
            total += 1 if den > 0 else -1
        if ok:
            return total
    raise AssertionError("unreachable")
