"""Enhanced Kauffman states of a rectangular diagram and the correspondence
with Bigelow generators.

A state is a resolution bit per crossing plus an orientation (+1
counterclockwise, -1 clockwise) per resulting circle.  Circles are listed in
the order returned by :meth:`RectDiagram.trace`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .figure_eights import HIGH, LEFT, RIGHT, FigureEights, Generator, winding_number
from .grid import GridDiagram, RectDiagram, coherent_bit

__all__ = [
    "NotAdmissible",
    "EnhancedState",
    "StateGradings",
    "StateModel",
    "MARKED_BIT",
]

# Resolution chosen at a crossing carrying a point of the generator, indexed
# by the point's p-value.  Only p matters: moving the waist past a point and
# switching its side together leaves the resolution unchanged.
MARKED_BIT = {1: 0, 0: 1}


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EnhancedState:
    bits: tuple[int, ...]
    orientation: tuple[int, ...]

    @property
    def i_bar(self) -> int:
        return sum(self.bits)

    @property
    def rot(self) -> int:
        return sum(self.orientation)

    def to_dict(self) -> dict:
        return {"resolution": list(self.bits), "orientation": list(self.orientation)}


@dataclass(frozen=True)
class StateGradings:
    i_bar: int
    i: int
    j: int
    rot: int
    R: int


class StateModel:
    """States, admissibility, the maps phi/psi and the state gradings for one grid."""

    def __init__(self, grid: GridDiagram | RectDiagram, waist: str = HIGH, fe: FigureEights | None = None):
        self.rd = grid if isinstance(grid, RectDiagram) else RectDiagram(grid)
        self.grid = self.rd.grid
        self.fe = fe if fe is not None else FigureEights(self.grid, waist)
        self.k = len(self.rd.crossings)
        self.n_plus = self.rd.n_plus
        self.n_minus = self.rd.n_minus
        self.circles = lru_cache(maxsize=None)(self.rd.trace)
        self._inside_cache: dict[tuple, tuple] = {}

    # -- enumeration --

    def resolutions(self):
        """All resolutions, ordered as binary numbers with crossing 0 most significant."""
        return product((0, 1), repeat=self.k)

    def states_of(self, bits) -> list[EnhancedState]:
        m = len(self.circles(bits))
        return [EnhancedState(bits, o) for o in product((1, -1), repeat=m)]

    def enumerate_states(self) -> list[EnhancedState]:
        out = []
        for bits in self.resolutions():
            out.extend(self.states_of(bits))
        return out

    # -- orientations of segments --

    def segment_orientation(self, h: EnhancedState) -> dict:
        """+1 if a segment is oriented up/right in ``h``, -1 otherwise."""
        out = {}
        for ci, sigma in zip(self.circles(h.bits), h.orientation):
            for s, f in ci.forward.items():
                out[s] = f * sigma
        return out

    def state_from_orientation(self, bits, orient: dict) -> EnhancedState:
        sig = []
        for ci in self.circles(bits):
            vals = {orient[s] * f for s, f in ci.forward.items()}
            if len(vals) != 1:
                raise ValueError("segment orientation is not coherent with the resolution")
            sig.append(vals.pop())
        return EnhancedState(tuple(bits), tuple(sig))

    # -- admissibility --

    def is_admissible(self, h: EnhancedState) -> bool:
        """No crossing has both vertical half-edges pointing into it."""
        orient = self.segment_orientation(h)
        for x in self.rd.crossings:
            he = self.rd.half_edges[x.column, x.row]
            if orient[he["S"]] > 0 and orient[he["N"]] < 0:
                return False
        return True

    def _line_switches(self, orient, segs, kind):
        vals = [orient[s] for s in segs]
        sw = [(i, vals[i], vals[i + 1]) for i in range(len(vals) - 1) if vals[i] != vals[i + 1]]
        return vals, sw

    def is_admissible_by_switches(self, h: EnhancedState) -> bool:
        """Vertical lines switch at most once, at a source; horizontal ones at most once, at a sink."""
        orient = self.segment_orientation(h)
        for segs in self.rd.column_segments.values():
            _, sw = self._line_switches(orient, segs, "v")
            if len(sw) > 1 or any(a != -1 for _, a, _ in sw):
                return False
        for segs in self.rd.row_segments.values():
            _, sw = self._line_switches(orient, segs, "h")
            if len(sw) > 1 or any(a != 1 for _, a, _ in sw):
                return False
        return True

    # -- the bijection --

    def generator_orientation(self, g: Generator) -> dict:
        orient = {}
        for c, segs in self.rd.column_segments.items():
            r0 = g.in_column(c).row
            for s in segs:
                orient[s] = -1 if s[3] <= r0 else 1
        rows = g.row_map()
        for r, segs in self.rd.row_segments.items():
            c0 = rows[r].column
            for s in segs:
                orient[s] = -1 if s[2] >= c0 else 1
        return orient

    def phi(self, g: Generator) -> EnhancedState:
        orient = self.generator_orientation(g)
        bits = []
        for x in self.rd.crossings:
            z = g.in_column(x.column)
            if z.row == x.row:
                bits.append(MARKED_BIT[z.p])
            else:
                he = self.rd.half_edges[x.column, x.row]
                bits.append(coherent_bit(orient[he["S"]], orient[he["W"]]))
        return self.state_from_orientation(tuple(bits), orient)

    def psi(self, h: EnhancedState) -> Generator:
        orient = self.segment_orientation(h)
        col_node = {}
        for c, segs in self.rd.column_segments.items():
            vals, sw = self._line_switches(orient, segs, "v")
            if len(sw) > 1 or any(a != -1 for _, a, _ in sw):
                raise NotAdmissible(f"column {c} has a forbidden orientation switch")
            if sw:
                col_node[c] = segs[sw[0][0]][3]
            else:
                col_node[c] = segs[0][2] if vals[0] > 0 else segs[-1][3]
        row_node = {}
        for r, segs in self.rd.row_segments.items():
            vals, sw = self._line_switches(orient, segs, "h")
            if len(sw) > 1 or any(a != 1 for _, a, _ in sw):
                raise NotAdmissible(f"row {r} has a forbidden orientation switch")
            if sw:
                row_node[r] = segs[sw[0][0]][3]
            else:
                row_node[r] = segs[-1][3] if vals[0] > 0 else segs[0][2]
        pts = []
        for c, r in col_node.items():
            if row_node[r] != c:
                raise NotAdmissible(f"column {c} and row {r} disagree on the marked point")
            model = self.fe.models[c]
            if r in (model.bottom_row, model.top_row):
                (z,) = self.fe.points_at(c, r)
            else:
                bit = h.bits[self.rd.crossing_index[c, r]]
                p = next(pv for pv, b in MARKED_BIT.items() if b == bit)
                above = r > model.waist_y
                side = LEFT if (p == 1) == above else RIGHT
                z = self.fe.point(c, r, side)
            pts.append(z)
        return Generator(tuple(pts))

    # -- gradings --

    @property
    def region_points(self) -> list[tuple[Fraction, Fraction]]:
        if not hasattr(self, "_regions"):
            self._regions = region_representatives(self.grid)
        return self._regions

    def _inside(self, bits) -> tuple:
        """For each circle, the tuple of region indices it encloses."""
        got = self._inside_cache.get(bits)
        if got is None:
            got = tuple(
                tuple(k for k, p in enumerate(self.region_points) if winding_number(ci.points, p))
                for ci in self.circles(bits))
            self._inside_cache[bits] = got
        return got

    def R(self, h: EnhancedState) -> int:
        inside = self._inside(h.bits)
        return sum(sigma * len(ins) for sigma, ins in zip(h.orientation, inside))

    def gradings(self, h: EnhancedState) -> StateGradings:
        ib = h.i_bar
        return StateGradings(
            i_bar=ib,
            i=ib - self.n_minus,
            j=h.rot + ib + self.n_plus - 2 * self.n_minus,
            rot=h.rot,
            R=self.R(h),
        )

    def i(self, h: EnhancedState) -> int:
        return h.i_bar - self.n_minus

    def j(self, h: EnhancedState) -> int:
        return h.rot + h.i_bar + self.n_plus - 2 * self.n_minus


def region_representatives(grid: GridDiagram) -> list[tuple[Fraction, Fraction]]:
    """One cell centre per bounded component of the plane minus the diagram.

    Cells are unit squares [i, i+1] x [j, j+1]; the representative of a
    region is its lexicographically least cell centre.
    """
    n = grid.size
    vspan = {c: grid.vertical_span(c) for c in range(1, n + 1)}
    hspan = {r: grid.horizontal_span(r) for r in range(1, n + 1)}

    def v_blocked(x, j):  # edge x, [j, j+1]
        if x not in vspan:
            return False
        lo, hi = vspan[x]
        return lo <= j and j + 1 <= hi

    def h_blocked(y, i):  # edge y, [i, i+1]
        if y not in hspan:
            return False
        lo, hi = hspan[y]
        return lo <= i and i + 1 <= hi

    comp = {}
    label = 0
    for i0 in range(0, n + 1):
        for j0 in range(0, n + 1):
            if (i0, j0) in comp:
                continue
            comp[i0, j0] = label
            queue = deque([(i0, j0)])
            while queue:
                i, j = queue.popleft()
                for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    a, b = i + di, j + dj
                    if not (0 <= a <= n and 0 <= b <= n) or (a, b) in comp:
                        continue
                    if di and v_blocked(max(i, a), j):
                        continue
                    if dj and h_blocked(max(j, b), i):
                        continue
                    comp[a, b] = label
                    queue.append((a, b))
            label += 1
    outer = comp[0, 0]
    reps = {}
    for (i, j), lab in comp.items():
        if lab != outer and (lab not in reps or (i, j) < reps[lab]):
            reps[lab] = (i, j)
    return sorted((Fraction(2 * i + 1, 2), Fraction(2 * j + 1, 2)) for i, j in reps.values())
