"""Three routes to the Jones polynomial of a grid diagram."""

from __future__ import annotations

from .figure_eights import HIGH, enumerate_generators
from .gradings import Grader
from .grid import GridDiagram
from .khovanov import euler_characteristic
from .laurent import LaurentPolynomial
from .reduction import SINGLE, reduce
from .states import StateModel

__all__ = ["jones_bigelow", "jones_state_sum", "jones_euler", "component_sign", "ROUTES"]


def _model(d, waist):
    return d if isinstance(d, StateModel) else StateModel(d, waist)


def component_sign(d: GridDiagram | StateModel) -> int:
    model = d if isinstance(d, StateModel) else StateModel(d)
    return -1 if model.rd.components() % 2 else 1


def jones_bigelow(d: GridDiagram | StateModel, waist: str = HIGH) -> LaurentPolynomial:
    """Sum of (-1)**P q**J over all Bigelow generators."""
    model = _model(d, waist)
    grader = Grader(model)
    terms = []
    for g in enumerate_generators(model.fe):
        gg = grader.graded(g)
        terms.append((gg.J, -1 if gg.P % 2 else 1))
    return LaurentPolynomial(terms)


def jones_state_sum(d: GridDiagram | StateModel, waist: str = HIGH) -> LaurentPolynomial:
    """Sum of (-1)**i q**j over all enhanced states.

    Resolutions are grouped so that each one contributes
    (-1)**i q**(i_bar + n_+ - 2 n_-) (q + 1/q)**circles.
    """
    model = _model(d, waist)
    loop = LaurentPolynomial({1: 1, -1: 1})
    total = LaurentPolynomial()
    for bits in model.resolutions():
        ib = sum(bits)
        i = ib - model.n_minus
        shift = LaurentPolynomial.monomial(ib + model.n_plus - 2 * model.n_minus, -1 if i % 2 else 1)
        total = total + shift * loop ** len(model.circles(bits))
    return total


def jones_euler(d: GridDiagram | StateModel, waist: str = HIGH, ring: str = "Z",
                mode: str = SINGLE) -> LaurentPolynomial:
    """Graded Euler characteristic of the complex reduced onto Bigelow generators."""
    model = _model(d, waist)
    red = reduce(model.grid, ring=ring, mode=mode, model=model)
    return euler_characteristic(red.complex)


ROUTES = {
    "bigelow": jones_bigelow,
    "statesum": jones_state_sum,
    "euler": jones_euler,
}
