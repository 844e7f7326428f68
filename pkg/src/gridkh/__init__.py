"""Jones polynomial and Khovanov homology of links given as grid diagrams,
computed through Bigelow's intersection-point generators."""

from .figure_eights import HIGH, LOW, FigureEights, Generator, ZPoint, distinguished_generator, enumerate_generators
from .gradings import Grader
from .grid import GridDiagram, GridError, RectDiagram, diagram_data, parse_grid
from .jones import jones_bigelow, jones_euler, jones_state_sum
from .khovanov import ChainComplex, build_complex, euler_characteristic, homology
from .laurent import LaurentPolynomial
from .reduction import AVERAGE, SINGLE, reduce
from .states import EnhancedState, StateModel
from .verify import TooLarge, verify_suite

__version__ = "0.1.0"

__all__ = [
    "AVERAGE",
    "HIGH",
    "LOW",
    "SINGLE",
    "ChainComplex",
    "EnhancedState",
    "FigureEights",
    "Generator",
    "Grader",
    "GridDiagram",
    "GridError",
    "LaurentPolynomial",
    "RectDiagram",
    "StateModel",
    "TooLarge",
    "ZPoint",
    "build_complex",
    "diagram_data",
    "distinguished_generator",
    "enumerate_generators",
    "euler_characteristic",
    "homology",
    "jones_bigelow",
    "jones_euler",
    "jones_state_sum",
    "parse_grid",
    "reduce",
    "verify_suite",
]
