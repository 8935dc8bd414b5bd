from __future__ import annotations

import itertools

import pytest

from fatlines.configgen import fig2_triple, pseudostar, random_lines, skew_pair
from fatlines.errors import DependentForms, DuplicateLine, GenericityFailure, LineInHyperplane
from fatlines.exactalg import GF, Matrix, nullspace, rank
from fatlines.geometry import (
    HPoint,
    Hyperplane,
    LinearComponent,
    chart_image,
    chart_lift,
    coplanar_witness,
    hyperplane_section,
    intersect,
    line_from_planes,
    lines_meet,
    random_hyperplane,
)

X, Y, Z, W = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def line(f1, f2, field=None):
    return LinearComponent.of(f1, f2) if field is None else LinearComponent.of(f1, f2, field)


def test_axis_line_span():
    l = line_from_planes(Hyperplane.of(X), Hyperplane.of(Y))
    assert [p.coords for p in l.span_points] == [Z, W]


def test_dependent_forms():
    with pytest.raises(DependentForms):
        line(X, X)
    with pytest.raises(DependentForms):
        line(X, (2, 0, 0, 0))


def test_span_points_satisfy_forms():
    l = line((1, 0, 0, 1), (0, 1, -1, 0))
    for p in l.span_points:
        for h in l.planes:
            assert h.contains(p)


def test_skew_axes():
    assert lines_meet(line(X, Y), line(Z, W)).kind == "skew"


def test_meeting_axes():
    result = lines_meet(line(X, Z), line(Y, Z))
    assert result.kind == "point"
    assert result.point.coords == W


def test_equal_lines():
    assert lines_meet(line(X, Y), line((1, 1, 0, 0), (1, -1, 0, 0))).kind == "equal"


def test_meet_is_symmetric():
    lines = list(random_lines(4, 2)) + list(fig2_triple())
    for a, b in itertools.product(lines, repeat=2):
        ab, ba = lines_meet(a, b), lines_meet(b, a)
        assert ab.kind == ba.kind
        assert ab.point == ba.point


def test_coplanar_witness_examples():
    assert coplanar_witness([line(X, Y), line(X, Z)]) == Hyperplane.of(X)
    assert coplanar_witness([line(X, Y), line(Z, W)]) is None
    assert coplanar_witness(list(fig2_triple())) is None


def test_coplanar_rejects_duplicates():
    with pytest.raises(DuplicateLine):
        coplanar_witness([line(X, Y), line(Y, X)])


def test_pseudostar_neighbours_meet_on_three_planes():
    from fatlines.classify import detect_pseudostar

    config = pseudostar(5, seed=3)
    cert = detect_pseudostar(config)
    lines = list(config.components)
    for a, b in itertools.combinations(range(len(lines)), 2):
        shared = set(cert.incidence[a]) & set(cert.incidence[b])
        if not shared:
            continue
        result = lines_meet(lines[a], lines[b])
        assert result.kind == "point"
        for plane in set(cert.incidence[a]) | set(cert.incidence[b]):
            assert cert.planes[plane].contains(result.point)


def test_random_hyperplane_meets_skew_lines_in_two_points():
    config = skew_pair()
    h = random_hyperplane(1, config.components)
    points = [intersect(c, h) for c in config.components]
    assert points[0] != points[1]
    for p, c in zip(points, config.components):
        assert h.contains(p) and c.contains(p)


def test_random_hyperplane_is_deterministic():
    comps = random_lines(5, 4).components
    assert random_hyperplane(1, comps) == random_hyperplane(1, comps)
    assert random_hyperplane(1, comps) != random_hyperplane(2, comps)


def test_gf2_fifteen_lines_exhaust_the_planes():
    # A plane over GF(2) has 7 points, so 15 lines either include one lying in
    # the plane or meet it in at least two equal points.
    f = GF(2)
    points = [p for p in itertools.product(range(2), repeat=4) if any(p)]
    lines: list[LinearComponent] = []
    for p, q in itertools.combinations(points, 2):
        c = LinearComponent(tuple(nullspace(Matrix.from_rows([p, q], f))), f)
        if all(c.key != other.key for other in lines):
            lines.append(c)
        if len(lines) == 15:
            break
    with pytest.raises(GenericityFailure):
        random_hyperplane(0, lines)


def test_intersect_rejects_contained_line():
    with pytest.raises(LineInHyperplane):
        intersect(line(X, Y), Hyperplane.of(X))


def test_chart_round_trip():
    config = random_lines(4, 8)
    h = random_hyperplane(3, config.components)
    section = hyperplane_section(config.components, h)
    for c, p in zip(config.components, section.points):
        lifted = chart_lift(section.chart, h, p)
        assert h.contains(lifted)
        assert c.contains(lifted)
        assert chart_image(section.chart, lifted) == p


def test_pseudostar_section_is_star():
    from fatlines.classify import detect_star_points

    config = pseudostar(4, 0)
    section = hyperplane_section(config.components, random_hyperplane(0, config.components))
    assert len(section.points) == 6
    cert = detect_star_points(list(section.points))
    assert cert is not None and cert.d == 4


def test_coplanar_section_is_collinear():
    from fatlines.classify import detect_collinear
    from fatlines.configgen import coplanar

    config = coplanar(4, 1)
    section = hyperplane_section(config.components, random_hyperplane(0, config.components))
    assert detect_collinear(list(section.points)) is not None


@pytest.mark.parametrize("seed", range(6))
def test_non_coplanar_sections_are_not_collinear(seed):
    config = random_lines(3 + seed % 3, seed)
    assert coplanar_witness(list(config.components)) is None
    section = hyperplane_section(config.components, random_hyperplane(seed, config.components))
    coords = Matrix.from_rows([p.coords for p in section.points])
    assert rank(coords) == 3


def test_hpoint_normalisation():
    assert HPoint.of((0, 2, 4)) == HPoint.of((0, -1, -2))
