from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridkh.figure_eights import (
    CORNER,
    HALF_WIDTH,
    HIGH,
    LOW,
    FigureEights,
    PointOnPath,
    build_figure_eights,
    distinguished_generator,
    enumerate_generators,
    winding_number,
)
from gridkh.grid import crossings

from conftest import small_grids

EPS = HALF_WIDTH


def coords(g):
    return sorted(z.xy for z in g)


def test_u2_points(u2):
    fe = build_figure_eights(u2, HIGH)
    assert sorted(z.xy for z in fe.zpoints) == [(1 + EPS, 1), (1 + EPS, 2), (2 - EPS, 1), (2 - EPS, 2)]


def test_t5_point_counts(t5):
    fe = build_figure_eights(t5)
    assert len(fe.zpoints) == 16
    assert [len(fe.by_column[c]) for c in range(1, 6)] == [2, 4, 4, 4, 2]


@pytest.mark.parametrize("waist", [HIGH, LOW])
def test_points_per_column(waist):
    for g in small_grids(4)[::5]:
        fe = FigureEights(g, waist)
        on_column = {c: 0 for c in range(1, g.size + 1)}
        for x in crossings(g):
            on_column[x.column] += 1
        for c, pts in fe.by_column.items():
            assert len(pts) == 2 * on_column[c] + 2


def test_distinguished_generators_of_u2(u2):
    fe = build_figure_eights(u2)
    assert coords(distinguished_generator(fe, "X")) == [(1 + EPS, 2), (2 - EPS, 1)]
    assert coords(distinguished_generator(fe, "O")) == [(1 + EPS, 1), (2 - EPS, 2)]


def test_u2_has_two_generators(u2):
    gens = enumerate_generators(build_figure_eights(u2))
    assert sorted(coords(g) for g in gens) == [
        [(1 + EPS, 1), (2 - EPS, 2)],
        [(1 + EPS, 2), (2 - EPS, 1)],
    ]


def test_generators_are_matchings(t5):
    fe = build_figure_eights(t5)
    gens = enumerate_generators(fe)
    assert len(gens) == len(set(gens)) == 16
    for g in gens:
        assert sorted(z.row for z in g) == [1, 2, 3, 4, 5]
        assert [z.column for z in g] == [1, 2, 3, 4, 5]
    for which in "XO":
        assert distinguished_generator(fe, which) in gens


def test_generator_validation(u2):
    fe = build_figure_eights(u2)
    with pytest.raises(ValueError):
        fe.generator([(1, 1, "R"), (2, 1, "L")])
    assert str(fe.generator([(1, 2, "R"), (2, 1, "L")])) == "{1R2, 2L1}"


def test_p_values_follow_the_strand_direction(u2):
    fe = build_figure_eights(u2, HIGH)
    o = distinguished_generator(fe, "O")
    x = distinguished_generator(fe, "X")
    assert [z.p for z in o] == [1, 1]
    assert [z.p for z in x] == [0, 0]


def test_moving_the_waist_keeps_p_on_each_point(t5):
    hi, lo = FigureEights(t5, HIGH), FigureEights(t5, LOW)
    for a, b in zip(hi.zpoints, lo.zpoints):
        assert (a.column, a.row, a.side) == (b.column, b.row, b.side)
        if a.above_waist != b.above_waist:
            assert a.p != b.p


SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_winding_unit_square():
    assert winding_number(SQUARE, (Fraction(1, 2), Fraction(1, 2))) == 1
    assert winding_number(SQUARE[::-1], (Fraction(1, 2), Fraction(1, 2))) == -1
    assert winding_number(SQUARE, (2, Fraction(1, 2))) == 0


def test_winding_rejects_points_on_the_path():
    with pytest.raises(PointOnPath):
        winding_number(SQUARE, (1, Fraction(1, 3)))


def test_winding_ray_through_vertex_is_handled():
    # the first ray direction (2, 1) passes through the vertex (2, 1)
    tri = [(0, -1), (2, 1), (-1, 1)]
    assert winding_number(tri, (0, 0)) == 1


def test_figure_eight_winds_oppositely_around_its_punctures(t5):
    fe = build_figure_eights(t5)
    for c, m in fe.models.items():
        bottom = winding_number(m.polyline, (c, m.bottom_row))
        top = winding_number(m.polyline, (c, m.top_row))
        assert (bottom, top) == (1, -1)


def test_figure_eight_polyline_shape(u2):
    m = build_figure_eights(u2).models[1]
    assert len(m.polyline) == 12
    assert m.polyline[0] == m.polyline[6] == (1, m.waist_y)
    assert max(y for _, y in m.polyline) == m.top_row + EPS + CORNER


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 6))
def test_winding_of_rectangles(px, py, size):
    rect = [(0, 0), (size, 0), (size, size), (0, size)]
    point = (Fraction(2 * px + 1, 2), Fraction(2 * py + 1, 2))
    inside = 0 < point[0] < size and 0 < point[1] < size
    assert winding_number(rect, point) == (1 if inside else 0)
