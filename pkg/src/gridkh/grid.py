"""Grid diagrams and the planar rectangular diagrams they determine.

Columns are indexed 1..n left to right and rows 1..n bottom to top, so the
point (c, r) of the plane is the centre of the cell in column c and row r.
Vertical segments run from the X to the O of a column and always pass over
the horizontal segments, which run from the O to the X of a row.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "GridError",
    "SizeTooSmall",
    "NotAPermutation",
    "PunctureCollision",
    "GridDiagram",
    "Crossing",
    "DiagramData",
    "RectDiagram",
    "parse_grid",
    "crossings",
    "diagram_data",
    "SMOOTHING_PAIRS",
    "coherent_bit",
]


class GridError(ValueError):
    """Invalid grid description."""


class SizeTooSmall(GridError):
    pass


class NotAPermutation(GridError):
    pass


class PunctureCollision(GridError):
    pass


@dataclass(frozen=True)
class GridDiagram:
    size: int
    x_rows: tuple[int, ...]
    o_rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_rows", tuple(int(v) for v in self.x_rows))
        object.__setattr__(self, "o_rows", tuple(int(v) for v in self.o_rows))
        n = self.size
        if n < 2:
            raise SizeTooSmall(f"grid size must be at least 2, got {n}")
        full = set(range(1, n + 1))
        for name, rows in (("X", self.x_rows), ("O", self.o_rows)):
            if len(rows) != n or set(rows) != full:
                raise NotAPermutation(f"{name}={list(rows)} is not a permutation of 1..{n}")
        for c in range(1, n + 1):
            if self.x(c) == self.o(c):
                raise PunctureCollision(f"X and O share the cell ({c}, {self.x(c)})")

    def x(self, column: int) -> int:
        return self.x_rows[column - 1]

    def o(self, column: int) -> int:
        return self.o_rows[column - 1]

    def x_column(self, row: int) -> int:
        return self.x_rows.index(row) + 1

    def o_column(self, row: int) -> int:
        return self.o_rows.index(row) + 1

    def vertical_span(self, column: int) -> tuple[int, int]:
        a, b = self.x(column), self.o(column)
        return (a, b) if a < b else (b, a)

    def horizontal_span(self, row: int) -> tuple[int, int]:
        a, b = self.x_column(row), self.o_column(row)
        return (a, b) if a < b else (b, a)

    def vertical_direction(self, column: int) -> int:
        """+1 if the column's segment points up (X below O)."""
        return 1 if self.x(column) < self.o(column) else -1

    def horizontal_direction(self, row: int) -> int:
        """+1 if the row's segment points right (O left of X)."""
        return 1 if self.o_column(row) < self.x_column(row) else -1

    def punctures(self) -> list[tuple[int, int]]:
        n = self.size
        return [(c, self.x(c)) for c in range(1, n + 1)] + [(c, self.o(c)) for c in range(1, n + 1)]

    # -- transformations used by tests and fixtures --

    def transpose(self) -> GridDiagram:
        """Reflect the grid in the main diagonal."""
        n = self.size
        return GridDiagram(n, [self.x_column(r) for r in range(1, n + 1)],
                           [self.o_column(r) for r in range(1, n + 1)])

    def reflect(self) -> GridDiagram:
        """Reverse the column order (a planar reflection, i.e. the mirror link)."""
        return GridDiagram(self.size, self.x_rows[::-1], self.o_rows[::-1])

    def rotate180(self) -> GridDiagram:
        n = self.size
        return GridDiagram(n, [n + 1 - r for r in self.x_rows[::-1]],
                           [n + 1 - r for r in self.o_rows[::-1]])

    def to_text(self) -> str:
        return "n={}; X={}; O={}".format(
            self.size, ",".join(map(str, self.x_rows)), ",".join(map(str, self.o_rows)))

    def to_json(self) -> str:
        return json.dumps({"size": self.size, "x": list(self.x_rows), "o": list(self.o_rows)})

    def __str__(self) -> str:
        return self.to_text()


_TEXT_RE = re.compile(r"^n=(-?\d+);X=([-\d,]*);O=([-\d,]*);?$")


def _csv(s: str) -> list[int]:
    return [int(v) for v in s.split(",") if v != ""]


def parse_grid(text: str) -> GridDiagram:
    """Parse ``n=<int>; X=<csv>; O=<csv>`` or the JSON form ``{"size", "x", "o"}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            return GridDiagram(int(obj["size"]), obj["x"], obj["o"])
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise GridError(f"bad JSON grid: {exc}") from exc
    m = _TEXT_RE.match(re.sub(r"\s+", "", stripped))
    if m is None:
        raise GridError(f"cannot parse grid description {text!r}")
    return GridDiagram(int(m.group(1)), _csv(m.group(2)), _csv(m.group(3)))


@dataclass(frozen=True, order=True)
class Crossing:
    column: int
    row: int
    sign: int


@dataclass(frozen=True)
class DiagramData:
    crossings: tuple[Crossing, ...]
    n_plus: int
    n_minus: int
    writhe: int
    rot: int
    components: int
    seifert_circles: int


def crossings(d: GridDiagram) -> list[Crossing]:
    """All crossings, sorted by (column, row).

    The sign is +1 when turning the over (vertical) direction a quarter turn
    counterclockwise gives the under (horizontal) direction.
    """
    out = []
    for c in range(1, d.size + 1):
        lo, hi = d.vertical_span(c)
        for r in range(lo + 1, hi):
            a, b = d.horizontal_span(r)
            if a < c < b:
                out.append(Crossing(c, r, -d.vertical_direction(c) * d.horizontal_direction(r)))
    return out


# Half-edge pairings at a crossing.  Bit 0 joins south with west and north
# with east; bit 1 joins south with east and north with west.  With the
# vertical strand over, bit 0 is the A-smoothing.
SMOOTHING_PAIRS = {
    0: {"S": "W", "W": "S", "N": "E", "E": "N"},
    1: {"S": "E", "E": "S", "N": "W", "W": "N"},
}


def coherent_bit(vertical: int, horizontal: int) -> int:
    """The smoothing compatible with strands running straight through a crossing.

    ``vertical`` is +1 for upward, ``horizontal`` +1 for rightward.
    """
    incoming = {"S": vertical > 0, "N": vertical < 0, "W": horizontal > 0, "E": horizontal < 0}
    for bit, pairs in SMOOTHING_PAIRS.items():
        if all(incoming[a] != incoming[b] for a, b in pairs.items()):
            return bit
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Circle:
    """A closed curve of a (partial) resolution, stored in counterclockwise order.

    ``points`` lists the visited nodes; ``forward`` maps every segment on the
    circle to +1 when the counterclockwise traversal runs from its low end to
    its high end (up or right).
    """

    segments: frozenset
    points: tuple
    forward: dict

    def __hash__(self):
        return hash(self.segments)

    def __eq__(self, other):
        return isinstance(other, Circle) and self.segments == other.segments

    @cached_property
    def key(self):
        return min(self.segments)


def signed_area2(points) -> int:
    """Twice the signed area of a closed polygon (positive when counterclockwise)."""
    s = 0
    m = len(points)
    for i in range(m):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % m]
        s += x0 * y1 - x1 * y0
    return s


class RectDiagram:
    """The planar rectangular diagram of a grid, cut into segments at crossings.

    A segment is ``(kind, line, lo, hi)`` with kind ``"v"`` (column ``line``,
    rows lo..hi) or ``"h"`` (row ``line``, columns lo..hi).
    """

    def __init__(self, grid: GridDiagram):
        self.grid = grid
        self.crossings = crossings(grid)
        self.crossing_index = {(x.column, x.row): k for k, x in enumerate(self.crossings)}
        self.n_plus = sum(1 for x in self.crossings if x.sign > 0)
        self.n_minus = len(self.crossings) - self.n_plus
        # node -> {direction: segment}
        self.half_edges: dict[tuple[int, int], dict[str, tuple]] = {}
        self.segments: list[tuple] = []
        self.column_segments: dict[int, list[tuple]] = {}
        self.row_segments: dict[int, list[tuple]] = {}
        n = grid.size
        for c in range(1, n + 1):
            lo, hi = grid.vertical_span(c)
            ys = [lo] + [x.row for x in self.crossings if x.column == c] + [hi]
            segs = []
            for a, b in zip(ys, ys[1:]):
                s = ("v", c, a, b)
                segs.append(s)
                self.half_edges.setdefault((c, a), {})["N"] = s
                self.half_edges.setdefault((c, b), {})["S"] = s
            self.column_segments[c] = segs
        for r in range(1, n + 1):
            lo, hi = grid.horizontal_span(r)
            xs = [lo] + sorted(x.column for x in self.crossings if x.row == r) + [hi]
            segs = []
            for a, b in zip(xs, xs[1:]):
                s = ("h", r, a, b)
                segs.append(s)
                self.half_edges.setdefault((a, r), {})["E"] = s
                self.half_edges.setdefault((b, r), {})["W"] = s
            self.row_segments[r] = segs
        self.segments = sorted(s for segs in self.column_segments.values() for s in segs) + sorted(
            s for segs in self.row_segments.values() for s in segs)

    @staticmethod
    def ends(seg) -> tuple[tuple[int, int], tuple[int, int]]:
        kind, line, lo, hi = seg
        if kind == "v":
            return (line, lo), (line, hi)
        return (lo, line), (hi, line)

    def link_direction(self, seg) -> int:
        """+1 if the link orientation runs along ``seg`` from low to high end."""
        kind, line, _, _ = seg
        if kind == "v":
            return self.grid.vertical_direction(line)
        return self.grid.horizontal_direction(line)

    def trace(self, bits) -> list[Circle]:
        """Trace the circles of the resolution given by one bit per crossing.

        Circles are returned sorted by their smallest segment.
        """
        seen = set()
        circles = []
        for start in self.segments:
            if start in seen:
                continue
            segs = []
            pts = []
            fwd = {}
            seg, from_low = start, True
            while True:
                seen.add(seg)
                segs.append(seg)
                a, b = self.ends(seg)
                node = b if from_low else a
                fwd[seg] = 1 if from_low else -1
                pts.append(a if from_low else b)
                # arriving at `node`; the half-edge we arrive through:
                kind = seg[0]
                if kind == "v":
                    arrive = "S" if from_low else "N"
                else:
                    arrive = "W" if from_low else "E"
                edges = self.half_edges[node]
                if len(edges) == 2:
                    leave = next(k for k in edges if k != arrive)
                else:
                    k = self.crossing_index[node]
                    leave = SMOOTHING_PAIRS[bits[k]][arrive]
                nxt = edges[leave]
                from_low = leave in ("N", "E")
                seg = nxt
                if seg == start and from_low:
                    break
            if signed_area2(pts) < 0:
                pts = pts[::-1]
                fwd = {s: -v for s, v in fwd.items()}
            circles.append(Circle(frozenset(segs), tuple(pts), fwd))
        circles.sort(key=lambda ci: ci.key)
        return circles

    def oriented_bits(self) -> tuple[int, ...]:
        """The orientation-respecting resolution: bit 1 exactly at negative crossings."""
        return tuple(0 if x.sign > 0 else 1 for x in self.crossings)

    def components(self) -> int:
        g = self.grid
        n = g.size
        nxt = {c: g.x_column(g.o(c)) for c in range(1, n + 1)}
        seen = set()
        count = 0
        for c in range(1, n + 1):
            if c in seen:
                continue
            count += 1
            while c not in seen:
                seen.add(c)
                c = nxt[c]
        return count

    def seifert_rot(self) -> tuple[int, int]:
        """(rotation number, number of Seifert circles)."""
        circles = self.trace(self.oriented_bits())
        rot = 0
        for ci in circles:
            seg = next(iter(ci.segments))
            rot += ci.forward[seg] * self.link_direction(seg)
        return rot, len(circles)

    @cached_property
    def data(self) -> DiagramData:
        rot, nseif = self.seifert_rot()
        return DiagramData(
            crossings=tuple(self.crossings),
            n_plus=self.n_plus,
            n_minus=self.n_minus,
            writhe=self.n_plus - self.n_minus,
            rot=rot,
            components=self.components(),
            seifert_circles=nseif,
        )


def diagram_data(d: GridDiagram) -> DiagramData:
    return RectDiagram(d).data
