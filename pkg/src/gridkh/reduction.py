"""Cancelling the inadmissible states: flattened-hypercube homotopies and
homological Gaussian elimination onto the Bigelow generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .figure_eights import HIGH
from .grid import GridDiagram
from .khovanov import ChainComplex, FiltrationSplit, NotAComplex, build_complex, filtration_split
from .linalg import SparseMatrix
from .states import StateModel

__all__ = [
    "BadHomotopy",
    "NotAHypercube",
    "RingMismatch",
    "CubeComponent",
    "Homotopy",
    "ReducedComplex",
    "hypercube_decompose",
    "build_homotopy",
    "perturb_homotopy",
    "gaussian_eliminate",
    "split_complex",
    "elimination_identities",
    "reduce",
    "SINGLE",
    "AVERAGE",
]

SINGLE, AVERAGE = "single", "average"


class BadHomotopy(ValueError):
    pass


class NotAHypercube(ValueError):
    pass


class RingMismatch(ValueError):
    pass


@dataclass
class CubeComponent:
    vertices: list[int]           # local indices into B, sorted
    coords: dict[int, int]        # vertex -> bitmask in {0,1}^m
    m: int


@dataclass
class Homotopy:
    h: SparseMatrix
    mode: str
    ring: str


@dataclass
class ReducedComplex:
    complex: ChainComplex
    generators: list
    split: FiltrationSplit | None = None
    homotopy: Homotopy | None = None
    full: ChainComplex | None = None
    extra: dict = field(default_factory=dict)


def _identity_like(n, ring):
    return SparseMatrix.identity(n, Fraction(1) if ring == "Q" else 1)


def _convert(m: SparseMatrix, ring: str) -> SparseMatrix:
    out = SparseMatrix(m.rows, m.cols)
    out.entries = {k: (Fraction(v) if ring == "Q" else v) for k, v in m.entries.items()}
    return out


def hypercube_decompose(b0: SparseMatrix, degree: list[int] | None = None) -> list[CubeComponent]:
    """Split (B, b0) into connected components and give each cube coordinates.

    ``degree`` is the homological degree of each B element (defaults to the
    direction of the arrows).  Raises NotAHypercube if a component is not
    the flattened cube {0,1}^m with unit edge coefficients.
    """
    n = b0.rows
    nbrs: dict[int, set] = {}
    up: dict[int, set] = {}
    down: dict[int, set] = {}
    for (t, s), v in b0.entries.items():
        if abs(v) != 1:
            raise NotAHypercube(f"edge {s} -> {t} has coefficient {v}")
        nbrs.setdefault(s, set()).add(t)
        nbrs.setdefault(t, set()).add(s)
        up.setdefault(s, set()).add(t)
        down.setdefault(t, set()).add(s)
    seen = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in nbrs.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        size = len(comp)
        m = size.bit_length() - 1
        if size != 1 << m:
            raise NotAHypercube(f"component of size {size} is not a power of two")
        for v in comp:
            if len(nbrs.get(v, ())) != m:
                raise NotAHypercube(f"vertex {v} has degree {len(nbrs.get(v, ()))}, expected {m}")
        bases = [v for v in comp if not down.get(v)]
        if len(bases) != 1:
            raise NotAHypercube(f"component has {len(bases)} minimal vertices")
        base = bases[0]
        if degree is not None and any(degree[v] < degree[base] for v in comp):
            raise NotAHypercube("base vertex is not of minimal degree")
        atoms = sorted(up.get(base, ()))
        coords = {base: 0}
        for k, a in enumerate(atoms):
            coords[a] = 1 << k
        frontier = atoms
        level = 1
        while frontier:
            nxt = sorted({w for v in frontier for w in up.get(v, ())})
            for w in nxt:
                lower = down[w]
                if any(u not in coords for u in lower) or len(lower) != level + 1:
                    raise NotAHypercube(f"vertex {w} does not sit at a cube level")
                mask = 0
                for u in lower:
                    mask |= coords[u]
                if bin(mask).count("1") != level + 1:
                    raise NotAHypercube(f"vertex {w} has inconsistent cube coordinates")
                coords[w] = mask
            frontier = nxt
            level += 1
        if len(coords) != size or len(set(coords.values())) != size:
            raise NotAHypercube("coordinates are not a bijection onto the cube")
        for (t, s) in b0.entries:
            if s in coords and bin(coords[t] ^ coords[s]).count("1") != 1:
                raise NotAHypercube(f"edge {s} -> {t} is not a cube edge")
        out.append(CubeComponent(comp, coords, m))
    return out


def build_homotopy(b0: SparseMatrix, components: list[CubeComponent], mode: str = SINGLE,
                   ring: str = "Z") -> Homotopy:
    """Contracting homotopy h of (B, b0) with h b0 + b0 h = -Id.

    ``single`` inverts the edges of the lowest cube direction; ``average``
    is the mean of the m single-direction homotopies and needs ring Q.
    """
    ring = ring.upper()
    if mode == AVERAGE and ring != "Q":
        raise RingMismatch("the averaged homotopy needs rational coefficients")
    if mode not in (SINGLE, AVERAGE):
        raise ValueError(f"unknown homotopy mode {mode!r}")
    entries: dict[tuple[int, int], object] = {}
    for comp in components:
        if comp.m == 0:
            raise BadHomotopy(f"vertex {comp.vertices[0]} is an isolated generator; (B, b0) is not acyclic")
        by_coord = {mask: v for v, mask in comp.coords.items()}
        dirs = [0] if mode == SINGLE else list(range(comp.m))
        weight = Fraction(1, len(dirs)) if ring == "Q" else 1
        for k in dirs:
            bit = 1 << k
            for mask, v in by_coord.items():
                if mask & bit:
                    u = by_coord[mask ^ bit]
                    e = b0.entries[v, u]
                    entries[u, v] = entries.get((u, v), 0) - e * weight
    h = SparseMatrix(b0.rows, b0.cols, {k: v for k, v in entries.items() if v})
    hom = Homotopy(h, mode, ring)
    check_homotopy(b0, hom.h, ring)
    return hom


def check_homotopy(b: SparseMatrix, h: SparseMatrix, ring: str = "Z"):
    lhs = h @ b + b @ h
    if lhs != -SparseMatrix.identity(b.rows):
        raise BadHomotopy("h b + b h is not -Id")


def perturb_homotopy(b_lower: SparseMatrix, h: SparseMatrix) -> SparseMatrix:
    """h (1 - beta h)^-1 = h + h beta h + h beta h beta h + ...

    ``beta`` (the R-lowering part of the B block) makes beta h nilpotent, so
    the series is finite.  Equals ``h`` when beta vanishes.
    """
    if b_lower.is_zero():
        return h
    total = h
    term = h
    for _ in range(h.rows + 1):
        term = term @ b_lower @ h
        if term.is_zero():
            return total
        total = total + term
    raise BadHomotopy("perturbation series did not terminate")


def gaussian_eliminate(split: FiltrationSplit, h: SparseMatrix, ring: str = "Z") -> SparseMatrix:
    """The reduced differential on A.

    ``h`` must contract the R-preserving block: h b0 + b0 h = -Id.  When the
    B block has no R-lowering part this is a + d h c; otherwise h is first
    replaced by its perturbation h (1 - beta h)^-1.
    """
    ring = ring.upper()
    a, b0, beta, c, d = (_convert(m, ring) for m in (split.a, split.b0, split.b_lower, split.c, split.d))
    h = _convert(h, ring)
    if not b0.rows:
        red = a
    else:
        check_homotopy(b0, h, ring)
        red = a + d @ perturb_homotopy(beta, h) @ c
    if not (red @ red).is_zero():
        raise NotAComplex("reduced differential does not square to zero")
    return red


def split_complex(delta: SparseMatrix, A: list[int], B: list[int]) -> FiltrationSplit:
    """Block decomposition of a differential for a basis split A + B, with b0 = b."""
    b = delta.submatrix(B, B)
    return FiltrationSplit(
        A=list(A), B=list(B),
        a=delta.submatrix(A, A), b=b, b0=b, b_lower=SparseMatrix(len(B), len(B)),
        c=delta.submatrix(B, A), d=delta.submatrix(A, B), R=[],
    )


def elimination_identities(split: FiltrationSplit, h: SparseMatrix, ring: str = "Z") -> dict[str, bool]:
    """Check the block identities behind the elimination lemma.

    ``h`` contracts the R-preserving block b0.  When the B block also has an
    R-lowering part, b no longer squares to zero (b^2 = -cd), so the maps f,
    g and the homotopies are built from the perturbed homotopy instead.
    """
    ring = ring.upper()
    a, b, b0, beta, c, d = (_convert(m, ring) for m in
                            (split.a, split.b, split.b0, split.b_lower, split.c, split.d))
    h0 = _convert(h, ring)
    h = perturb_homotopy(beta, h0)
    nA, nB = a.rows, b.rows
    red = a + d @ h @ c
    out = {
        "hb+bh=-Id": (h0 @ b0 + b0 @ h0) == -_identity_like(nB, ring),
        "cd+b^2=0": (c @ d + b @ b).is_zero(),
        "a^2+dc=0": (a @ a + d @ c).is_zero(),
        "ad+db=0": (a @ d + d @ b).is_zero(),
        "ca+bc=0": (c @ a + b @ c).is_zero(),
        "(a+dhc)^2=0": (red @ red).is_zero(),
    }
    # f = (1, dh): C -> A ;  g = (1, hc)^T: A -> C ; delta on C = [[a, d], [c, b]]
    dh = d @ h
    hc = h @ c
    # f delta = red f :  (a + dh c, d + dh b) == (red, red dh)
    out["f chain map"] = (a + dh @ c) == red and (d + dh @ b) == red @ dh
    # delta g = g red :  (a + d hc ; c + b hc) == (red ; hc red)
    out["g chain map"] = (a + d @ hc) == red and (c + b @ hc) == hc @ red
    # g f - Id_C = H delta + delta H with H = diag(0, h)
    gf_minus = {  # blocks of g f - Id:  [[0, dh], [hc, hc dh - Id]]
        "AA": SparseMatrix(nA, nA), "AB": dh, "BA": hc, "BB": hc @ dh - _identity_like(nB, ring)}
    Hd = {"AA": SparseMatrix(nA, nA), "AB": SparseMatrix(nA, nB), "BA": h @ c, "BB": h @ b}
    dH = {"AA": SparseMatrix(nA, nA), "AB": d @ h, "BA": SparseMatrix(nB, nA), "BB": b @ h}
    out["gf-Id=H delta+delta H"] = all(gf_minus[k] == Hd[k] + dH[k] for k in gf_minus)
    # on A: f g - Id = d h^2 c = H' red + red H' with H' = d h^3 c
    h2 = h @ h
    Hp = d @ h2 @ h @ c
    out["fg-Id=H'd'+d'H'"] = (d @ h2 @ c) == Hp @ red + red @ Hp
    return out


def reduce(grid: GridDiagram, ring: str = "Z", mode: str = SINGLE, waist: str = HIGH,
           crossing_order=None, model: StateModel | None = None) -> ReducedComplex:
    """Khovanov complex reduced onto the admissible states, labelled by Bigelow generators."""
    ring = ring.upper()
    if mode == AVERAGE and ring != "Q":
        raise RingMismatch("the averaged homotopy needs rational coefficients")
    model = model or StateModel(grid, waist)
    full = build_complex(model, crossing_order)
    split = filtration_split(full)
    degree_B = [full.i[k] for k in split.B]
    comps = hypercube_decompose(split.b0, degree_B)
    hom = build_homotopy(split.b0, comps, mode, ring) if split.B else Homotopy(SparseMatrix(0, 0), mode, ring)
    red = gaussian_eliminate(split, hom.h, ring)
    basis = [full.basis[k] for k in split.A]
    gens = [model.psi(s) for s in basis]
    cplx = ChainComplex(
        ring=ring,
        basis=basis,
        i=[full.i[k] for k in split.A],
        j=[full.j[k] for k in split.A],
        d=red,
        labels=gens,
    )
    cplx.extra["model"] = model
    out = ReducedComplex(cplx, gens, split, hom, full)
    out.extra["components"] = comps
    return out
