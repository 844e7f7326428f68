"""Run every structural identity against one diagram and report pass/fail per check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .figure_eights import HIGH, enumerate_generators
from .gradings import Grader
from .grid import GridDiagram, RectDiagram
from .jones import component_sign, jones_bigelow, jones_state_sum
from .khovanov import (
    FiltrationViolation,
    NotAComplex,
    build_complex,
    euler_characteristic,
    filtration_split,
    format_homology,
    homology,
)
from .linalg import invariant_factors
from .reduction import SINGLE, BadHomotopy, NotAHypercube, reduce
from .states import NotAdmissible, StateModel

__all__ = ["TooLarge", "Check", "Report", "state_count", "verify_suite", "DEFAULT_CAP"]

DEFAULT_CAP = 2 ** 20


class TooLarge(RuntimeError):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class Report:
    diagram: str
    checks: list[Check] = field(default_factory=list)
    invariants: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram,
            "checks": [c.to_dict() for c in self.checks],
            "invariants": self.invariants,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"diagram: {self.diagram}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        lines.append("result: " + ("all checks pass" if self.ok else f"first failure is {self.first_failure.name}"))
        return "\n".join(lines)


def state_count(model: StateModel, cap: int = DEFAULT_CAP) -> int:
    """Number of enhanced states, refusing to trace more than ``cap`` resolutions.

    Raises TooLarge when 2**k times 2**(max circles) exceeds ``cap``.
    """
    if 2 ** model.k > cap:
        raise TooLarge(f"{model.k} crossings give {2 ** model.k} resolutions, above the cap {cap}")
    most = max(len(model.circles(b)) for b in model.resolutions())
    bound = 2 ** model.k * 2 ** most
    if bound > cap:
        raise TooLarge(f"state bound 2^{model.k} * 2^{most} exceeds the cap {cap}")
    return sum(2 ** len(model.circles(b)) for b in model.resolutions())


def _first(items, limit=3) -> str:
    items = list(items)
    shown = ", ".join(str(x) for x in items[:limit])
    return shown + (f" (and {len(items) - limit} more)" if len(items) > limit else "")


def _constant(name, values: dict, report: Report):
    distinct = set(values.values())
    report.add(name, len(distinct) <= 1,
               f"value {distinct.pop()}" if len(distinct) == 1 else f"{len(distinct)} distinct values")


def _homology_json(h: dict) -> list[dict]:
    return [{"i": i, "j": j, "free": free, "torsion": tors} for (i, j), (free, tors) in sorted(h.items())]


def verify_suite(d: GridDiagram | RectDiagram, waist: str = HIGH, ring: str = "Z", mode: str = SINGLE,
                 cap: int = DEFAULT_CAP) -> Report:
    """Evaluate the named identities on ``d``.

    Passing a prepared RectDiagram lets callers (and the negative-control
    tests) supply a modified crossing table.
    """
    ring = ring.upper()
    model = StateModel(d, waist)
    grid = model.grid
    report = Report(grid.to_text())
    state_count(model, cap)

    # generators and the bijection
    gens = enumerate_generators(model.fe)
    states = model.enumerate_states()
    admissible = [h for h in states if model.is_admissible(h)]
    report.add("generator count equals admissible state count", len(gens) == len(admissible),
               f"{len(gens)} generators, {len(admissible)} admissible states")
    bad_gs = [g for g in gens if model.psi(model.phi(g)) != g]
    report.add("psi(phi(g)) = g", not bad_gs, _first(bad_gs))
    bad_hs = []
    for h in admissible:
        try:
            if model.phi(model.psi(h)) != h:
                bad_hs.append(h)
        except NotAdmissible:
            bad_hs.append(h)
    report.add("phi(psi(h)) = h", not bad_hs, _first(h.bits for h in bad_hs))
    agree = all(model.is_admissible(h) == model.is_admissible_by_switches(h) for h in states)
    report.add("admissibility agrees with the switch description", agree)

    # gradings of generators against gradings of their states
    grader = Grader(model)
    graded = {g: grader.graded(g) for g in gens}
    aux = {g: grader.auxiliary(g) for g in gens}
    img = {g: model.phi(g) for g in gens}
    npl, nmi = model.n_plus, model.n_minus
    report.add("P = i - j", not (b := [g for g in gens if graded[g].P != model.i(img[g]) - model.j(img[g])]),
               _first(b))
    report.add("J = j", not (b := [g for g in gens if graded[g].J != model.j(img[g])]), _first(b))
    report.add("P = -rot - n_+ + n_-", not (b := [g for g in gens if graded[g].P != -img[g].rot - npl + nmi]),
               _first(b))
    report.add("Q is independent of the loop direction",
               not (b := [g for g in gens if grader.Q(g, forward=False) != graded[g].Q]), _first(b))
    _constant("2P - Q_loc is constant", {g: 2 * graded[g].P - aux[g].Q_loc for g in gens}, report)
    _constant("4Q - 2Q_loc - Q_far is constant",
              {g: 4 * graded[g].Q - 2 * aux[g].Q_loc - aux[g].Q_far for g in gens}, report)
    _constant("4T - j3 + j1/2 - Q_far is constant",
              {g: 4 * graded[g].T - aux[g].j3 + Fraction(aux[g].j1, 2) - aux[g].Q_far for g in gens}, report)
    report.add("rot = j1/4 + j2/2",
               not (b := [g for g in gens if img[g].rot != Fraction(aux[g].j1, 4) + Fraction(aux[g].j2, 2)]),
               _first(b))
    report.add("i = j2/2 + j3/2 + (n_+ - n_-)/2",
               not (b := [g for g in gens
                          if model.i(img[g]) != Fraction(aux[g].j2 + aux[g].j3 + npl - nmi, 2)]), _first(b))
    report.add("j = j1/4 + j2 + j3/2 + 3(n_+ - n_-)/2",
               not (b := [g for g in gens if model.j(img[g]) != Fraction(aux[g].j1, 4) + aux[g].j2
                          + Fraction(aux[g].j3, 2) + Fraction(3 * (npl - nmi), 2)]), _first(b))

    # the complex and its filtration
    full = build_complex(model)
    report.add("d squared is zero", full.is_complex())
    report.add("d has bidegree (1, 0)", full.check_gradings())
    try:
        split = filtration_split(full)
        report.add("R filtration", True, f"{len(split.A)} admissible, {len(split.B)} cancelled")
    except FiltrationViolation as exc:
        report.add("R filtration", False, str(exc))
        split = None

    red = None
    if split is not None:
        try:
            red = reduce(grid, ring=ring, mode=mode, model=model)
            sizes = sorted(c.m for c in red.extra["components"])
            report.add("cancelled states form cubes", True, f"cube dimensions {_first(sizes, 8)}")
            acyclic = all(_acyclic_over_z(split.b0, comp.vertices) for comp in red.extra["components"])
            report.add("each cube is acyclic over Z", acyclic)
        except (NotAHypercube, BadHomotopy, NotAComplex) as exc:
            report.add("cancelled states form cubes", False, str(exc))

    # invariants
    sign = component_sign(model)
    jb = jones_bigelow(model)
    js = jones_state_sum(model)
    report.add("state sum equals Euler characteristic of the full complex", js == euler_characteristic(full))
    report.add("Bigelow sum equals the signed state sum", jb == sign * js, f"{jb} vs {sign * js}")
    hom_full = homology(full, ring)
    if red is not None:
        je = euler_characteristic(red.complex)
        report.add("Bigelow sum equals the signed Euler characteristic of the reduced complex", jb == sign * je)
        hom_red = homology(red.complex, ring)
        report.add(f"reduced homology equals full homology over {ring}", hom_red == hom_full,
                   "; ".join(format_homology(hom_red)))
    report.invariants = {
        "jones": {"bigelow": jb.to_json(), "signed_state_sum": (sign * js).to_json(), "state_sum": js.to_json()},
        "homology": _homology_json(hom_full),
    }
    return report


def _acyclic_over_z(b0, vertices) -> bool:
    sub = b0.submatrix(vertices, vertices)
    if len(vertices) == 1:
        return False
    # acyclic over Z exactly when the rank is half the dimension and every factor is a unit
    factors = invariant_factors(sub)
    return 2 * len(factors) == len(vertices) and all(abs(f) == 1 for f in factors)
