"""The Khovanov complex on enhanced states, its homology, and the split of
the differential along the R filtration."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .grid import GridDiagram
from .laurent import LaurentPolynomial
from .linalg import SparseMatrix, invariant_factors, rank
from .states import EnhancedState, StateModel

__all__ = [
    "NotAComplex",
    "FiltrationViolation",
    "ChainComplex",
    "FiltrationSplit",
    "build_complex",
    "homology",
    "euler_characteristic",
    "filtration_split",
    "local_differential_types",
    "format_homology",
]


class NotAComplex(ValueError):
    pass


class FiltrationViolation(ValueError):
    pass


@dataclass
class ChainComplex:
    """Free bigraded module with a degree (+1, 0) differential.

    ``d`` is a square sparse matrix on the whole basis; entry (t, s) is the
    coefficient of basis element t in the differential of s.
    """

    ring: str
    basis: list
    i: list[int]
    j: list[int]
    d: SparseMatrix
    R: list[int] | None = None
    labels: list | None = None
    extra: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.basis)

    def degrees(self):
        return sorted(set(zip(self.i, self.j)))

    def indices(self, i=None, j=None) -> list[int]:
        return [k for k in range(len(self.basis))
                if (i is None or self.i[k] == i) and (j is None or self.j[k] == j)]

    def is_complex(self) -> bool:
        return (self.d @ self.d).is_zero()

    def check_gradings(self) -> bool:
        """Every nonzero entry raises i by one and preserves j."""
        return all(self.i[t] == self.i[s] + 1 and self.j[t] == self.j[s]
                   for (t, s) in self.d.entries)

    def matrix(self, i: int, j: int | None = None) -> tuple[SparseMatrix, list[int], list[int]]:
        """The block of d from degree (i, j) to (i + 1, j), with its row and column indices."""
        src = self.indices(i, j)
        tgt = self.indices(i + 1, j)
        return self.d.submatrix(tgt, src), tgt, src


def _touching(rd, circles, node):
    segs = set(rd.half_edges[node].values())
    return [k for k, ci in enumerate(circles) if ci.segments & segs]


def build_complex(d: GridDiagram | StateModel, crossing_order=None) -> ChainComplex:
    """The Khovanov complex over Z.

    Edge signs are ``(-1)**(number of 1-bits at crossings earlier in
    crossing_order)``; the default order is the sorted crossing list.
    """
    model = d if isinstance(d, StateModel) else StateModel(d)
    rd = model.rd
    k = model.k
    order = list(range(k)) if crossing_order is None else list(crossing_order)
    rank_of = {c: pos for pos, c in enumerate(order)}
    states = model.enumerate_states()
    index = {s: n for n, s in enumerate(states)}
    entries = {}
    for s in states:
        bits = s.bits
        circles = model.circles(bits)
        for c in range(k):
            if bits[c]:
                continue
            nbits = bits[:c] + (1,) + bits[c + 1:]
            ncircles = model.circles(nbits)
            sign = -1 if sum(bits[e] for e in range(k) if rank_of[e] < rank_of[c]) % 2 else 1
            node = (rd.crossings[c].column, rd.crossings[c].row)
            old = _touching(rd, circles, node)
            new = _touching(rd, ncircles, node)
            # circles away from the crossing keep their labels
            keep = {}
            new_pos = {ci: n for n, ci in enumerate(ncircles)}
            for n, ci in enumerate(circles):
                if n not in old:
                    keep[new_pos[ci]] = s.orientation[n]
            targets = []
            if len(old) == 2 and len(new) == 1:
                a, b = (s.orientation[n] for n in old)
                if a == 1 and b == 1:
                    targets.append({new[0]: 1})
                elif a * b == -1:
                    targets.append({new[0]: -1})
            elif len(old) == 1 and len(new) == 2:
                a = s.orientation[old[0]]
                if a == 1:
                    targets.append({new[0]: 1, new[1]: -1})
                    targets.append({new[0]: -1, new[1]: 1})
                else:
                    targets.append({new[0]: -1, new[1]: -1})
            else:
                raise AssertionError("a single smoothing change must merge or split")
            for t in targets:
                lab = dict(keep)
                lab.update(t)
                ts = EnhancedState(nbits, tuple(lab[n] for n in range(len(ncircles))))
                key = (index[ts], index[s])
                entries[key] = entries.get(key, 0) + sign
    n = len(states)
    mat = SparseMatrix(n, n, {kk: v for kk, v in entries.items() if v})
    cplx = ChainComplex(
        ring="Z",
        basis=states,
        i=[model.i(s) for s in states],
        j=[model.j(s) for s in states],
        d=mat,
    )
    cplx.extra["model"] = model
    return cplx


def homology(c: ChainComplex, ring: str | None = None) -> dict[tuple[int, int], tuple[int, list[int]]]:
    """Homology per bidegree: ``(i, j) -> (free rank, torsion invariant factors)``.

    Over Q the torsion list is always empty.
    """
    ring = (ring or c.ring).upper()
    if not c.is_complex():
        raise NotAComplex("d composed with d is not zero")
    by_j = defaultdict(set)
    for i, j in zip(c.i, c.j):
        by_j[j].add(i)
    out = {}
    for j, idegs in sorted(by_j.items()):
        ranks = {}
        factors = {}
        for i in sorted(idegs | {i - 1 for i in idegs}):
            m, _, _ = c.matrix(i, j)
            if m.rows == 0 or m.cols == 0 or m.is_zero():
                ranks[i], factors[i] = 0, []
            elif ring == "Z":
                f = invariant_factors(m)
                ranks[i], factors[i] = len(f), f
            else:
                ranks[i], factors[i] = rank(m), []
        for i in sorted(idegs):
            dim = len(c.indices(i, j))
            free = dim - ranks.get(i, 0) - ranks.get(i - 1, 0)
            tors = [f for f in factors.get(i - 1, []) if abs(f) > 1] if ring == "Z" else []
            if free or tors:
                out[i, j] = (free, tors)
    return out


def euler_characteristic(c: ChainComplex) -> LaurentPolynomial:
    return LaurentPolynomial([(j, (-1) ** (i % 2)) for i, j in zip(c.i, c.j)])


def homology_euler(h: dict) -> LaurentPolynomial:
    return LaurentPolynomial([(j, (-1) ** (i % 2) * free) for (i, j), (free, _) in h.items()])


def format_homology(h: dict) -> list[str]:
    lines = []
    for (i, j), (free, tors) in sorted(h.items()):
        parts = []
        if free:
            parts.append("Z" if free == 1 else f"Z^{free}")
        parts.extend(f"Z/{t}" for t in tors)
        lines.append(f"({i}, {j}): " + " + ".join(parts))
    return lines


@dataclass
class FiltrationSplit:
    """Blocks of the differential for the basis split A (admissible) + B (the rest).

    ``b`` is the whole B -> B block; ``b0`` its R-preserving part and
    ``b_lower`` the R-decreasing remainder, so ``b = b0 + b_lower``.
    Matrices use local indices into ``A`` and ``B``.
    """

    A: list[int]
    B: list[int]
    a: SparseMatrix
    b: SparseMatrix
    b0: SparseMatrix
    b_lower: SparseMatrix
    c: SparseMatrix
    d: SparseMatrix
    R: list[int]


def filtration_split(c: ChainComplex, R: list[int] | None = None, admissible=None) -> FiltrationSplit:
    """Split the differential along R and admissibility.

    Raises FiltrationViolation if some entry raises R or an R-preserving
    entry touches an admissible state.
    """
    model: StateModel = c.extra.get("model")
    if R is None:
        R = [model.R(s) for s in c.basis]
    if admissible is None:
        admissible = [model.is_admissible(s) for s in c.basis]
    c.R = list(R)
    A = [k for k in range(len(c.basis)) if admissible[k]]
    B = [k for k in range(len(c.basis)) if not admissible[k]]
    for (t, s) in c.d.entries:
        dr = R[t] - R[s]
        if dr > 0:
            raise FiltrationViolation(f"entry {s} -> {t} raises R by {dr}")
        if dr == 0 and (admissible[t] or admissible[s]):
            raise FiltrationViolation(f"R-preserving entry {s} -> {t} touches an admissible state")
    b = c.d.submatrix(B, B)
    b0 = SparseMatrix(len(B), len(B))
    b0.entries = {(t, s): v for (t, s), v in b.entries.items() if R[B[t]] == R[B[s]]}
    return FiltrationSplit(
        A=A,
        B=B,
        a=c.d.submatrix(A, A),
        b=b,
        b0=b0,
        b_lower=b - b0,
        c=c.d.submatrix(B, A),
        d=c.d.submatrix(A, B),
        R=list(R),
    )


def local_differential_types(c: ChainComplex) -> set:
    """Distinct local pictures of nonzero entries.

    A picture is the orientation of the four half-edges (N, S, E, W) at the
    changed crossing before and after, followed by ``"merge"`` or ``"split"``.
    """
    model: StateModel = c.extra["model"]
    rd = model.rd
    out = set()
    for (t, s) in c.d.entries:
        src, tgt = c.basis[s], c.basis[t]
        k = next(n for n in range(model.k) if src.bits[n] != tgt.bits[n])
        x = rd.crossings[k]
        he = rd.half_edges[x.column, x.row]
        os_, ot = model.segment_orientation(src), model.segment_orientation(tgt)
        kind = "merge" if len(model.circles(tgt.bits)) < len(model.circles(src.bits)) else "split"
        out.add(tuple(os_[he[q]] for q in "NSEW") + tuple(ot[he[q]] for q in "NSEW") + (kind,))
    return out


def to_rational(m: SparseMatrix) -> SparseMatrix:
    out = SparseMatrix(m.rows, m.cols)
    out.entries = {k: Fraction(v) for k, v in m.entries.items()}
    return out
