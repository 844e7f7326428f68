"""Gradings on Bigelow generators: Pbar, T, Q and the normalised J and P,
plus the auxiliary counts j1, j2, j3, Q_far and Q_loc."""

from __future__ import annotations

from dataclasses import dataclass

from .figure_eights import FigureEights, Generator, distinguished_generator, winding_number
from .states import StateModel

__all__ = [
    "MismatchedDiagrams",
    "GradedGenerator",
    "AuxiliaryGradings",
    "pair_count",
    "loops",
    "grading_Q",
    "Grader",
]


class MismatchedDiagrams(ValueError):
    pass


@dataclass(frozen=True)
class GradedGenerator:
    generator: Generator
    Pbar: int
    T: int
    Q: int
    J: int
    P: int


@dataclass(frozen=True)
class AuxiliaryGradings:
    j1: int
    j2: int
    j3: int
    Q_far: int
    Q_loc: int


def pair_count(A, B) -> tuple[int, int]:
    """Count pairs (a, b) with a < b in both coordinates, and with a1 < b1, a2 > b2."""
    inc = dec = 0
    for a1, a2 in A:
        for b1, b2 in B:
            if a1 < b1:
                if a2 < b2:
                    inc += 1
                elif a2 > b2:
                    dec += 1
    return inc, dec


def loops(fe: FigureEights, g: Generator, base: Generator, forward: bool = True) -> list[list]:
    """Closed curves of the loop from ``g`` along rows to ``base`` and back along figure-eights."""
    if len(g) != fe.grid.size or len(base) != fe.grid.size:
        raise MismatchedDiagrams("generator size does not match the grid")
    base_rows = base.row_map()
    seen = set()
    curves = []
    for start in g:
        if start in seen:
            continue
        path = []
        p = start
        while True:
            seen.add(p)
            q = base_rows[p.row]
            if q.column not in fe.models or fe.point(q.column, q.row, q.side) != q:
                raise MismatchedDiagrams(f"{q} is not a point of this diagram")
            path.append(p.xy)
            path.append(q.xy)
            nxt = g.in_column(q.column)
            path.extend(fe.models[q.column].arc(q, nxt, forward)[1:])
            p = nxt
            if p == start:
                break
        curves.append(path)
    return curves


def grading_Q(fe: FigureEights, g: Generator, base: Generator, forward: bool = True) -> int:
    """Q(g) - Q(base): total winding of the loop curves around all punctures."""
    total = 0
    punctures = fe.grid.punctures()
    for curve in loops(fe, g, base, forward):
        for pt in punctures:
            total += winding_number(curve, pt)
    return total


class Grader:
    """Evaluates every grading of the generators of one diagram."""

    def __init__(self, model: StateModel):
        self.model = model
        self.fe = model.fe
        data = model.rd.data
        self.rot_D = data.rot
        self.writhe = data.writhe
        self.x = distinguished_generator(self.fe, "X")
        self.o = distinguished_generator(self.fe, "O")
        self.T_x = self.T(self.x)
        self.Pbar_x = self.Pbar(self.x)
        self._punctures = self.fe.grid.punctures()

    @staticmethod
    def Pbar(g: Generator) -> int:
        return sum(z.p for z in g)

    @staticmethod
    def T(g: Generator) -> int:
        pts = [z.xy for z in g]
        return pair_count(pts, pts)[0]

    def Q(self, g: Generator, forward: bool = True) -> int:
        return grading_Q(self.fe, g, self.x, forward)

    def J(self, g: Generator) -> int:
        return 2 * (self.T(g) - self.Q(g)) - 2 * self.T_x + self.rot_D + self.writhe

    def P(self, g: Generator) -> int:
        return self.Pbar(g) - self.Pbar_x - self.rot_D - self.writhe

    def graded(self, g: Generator) -> GradedGenerator:
        pbar, t, q = self.Pbar(g), self.T(g), self.Q(g)
        return GradedGenerator(
            generator=g,
            Pbar=pbar,
            T=t,
            Q=q,
            J=2 * (t - q) - 2 * self.T_x + self.rot_D + self.writhe,
            P=pbar - self.Pbar_x - self.rot_D - self.writhe,
        )

    def auxiliary(self, g: Generator) -> AuxiliaryGradings:
        h = self.model.phi(g)
        j2 = j3 = 0
        for x, bit in zip(self.model.rd.crossings, h.bits):
            marked = g.in_column(x.column).row == x.row
            if marked:
                j2 += 2 * bit - 1
            else:
                j3 += 2 * bit - 1
        j1 = 4 * h.rot - 2 * j2
        pts = [z.xy for z in g]
        i1, m1 = pair_count(pts, self._punctures)
        i2, m2 = pair_count(self._punctures, pts)
        q_far = i1 + i2 - m1 - m2
        q_loc = sum(2 * z.p - 1 for z in g)
        return AuxiliaryGradings(j1, j2, j3, q_far, q_loc)
