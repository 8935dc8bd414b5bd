"""Exact incidence geometry of linear components in P^2 and P^3.

A linear component is a codimension-2 linear subspace (a point of P^2 or a
line of P^3) stored as the pair of linear forms generating its ideal.  All
incidence questions are answered with exact ranks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DependentForms, DuplicateLine, GenericityFailure, LineInHyperplane
from .exactalg import QQ, Field, Matrix, nullspace, rank

COEFF_BOUND = 997
RETRY_BUDGET = 32


def normalize(values: Sequence, field: Field) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    vals = field.vector(values)
    lead = next((x for x in vals if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector does not define a projective object")
    inv = field.inv(lead)
    return tuple(field.mul(x, inv) for x in vals)


def integral(values: Sequence, field: Field) -> tuple[int, ...]:
    """Primitive integer representative (plain residues over GF(p))."""
    if field.p:
        return tuple(int(x) % field.p for x in values)
    den = reduce(lcm, (x.denominator for x in values if isinstance(x, Fraction)), 1)
    ints = [int(x * den) for x in values]
    g = reduce(gcd, ints, 0) or 1
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class HPoint:
    coords: tuple
    field: Field = QQ

    @classmethod
    def of(cls, coords: Iterable, field: Field = QQ) -> "HPoint":
        return cls(normalize(tuple(coords), field), field)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def integral(self) -> tuple[int, ...]:
        return integral(self.coords, self.field)

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Hyperplane:
    """Linear form sum(form[i] * x_i); in P^2 this is a line."""

    form: tuple
    field: Field = QQ

    @classmethod
    def of(cls, form: Iterable, field: Field = QQ) -> "Hyperplane":
        return cls(normalize(tuple(form), field), field)

    @classmethod
    def dual(cls, point: HPoint) -> "Hyperplane":
        return cls(point.coords, point.field)

    def integral(self) -> tuple[int, ...]:
        return integral(self.form, self.field)

    def value(self, point: HPoint):
        return self.field.elem(sum(a * b for a, b in zip(self.form, point.coords)))

    def contains(self, point: HPoint) -> bool:
        return self.value(point) == 0


@dataclass(frozen=True)
class LinearComponent:
    """A point of P^2 or a line of P^3 given by two independent linear forms.

    ``forms`` are kept exactly as supplied (integers, or residues over GF(p))
    so that configurations serialise back to the same document.  Equality of
    the underlying subspace is tested with ``key``.
    """

    forms: tuple[tuple[int, ...], tuple[int, ...]]
    field: Field = QQ

    def __post_init__(self):
        if len(self.forms) != 2 or len(self.forms[0]) != len(self.forms[1]):
            raise DependentForms("a component needs two forms of equal length")
        if rank(Matrix.from_rows(self.forms, self.field)) < 2:
            raise DependentForms(f"forms {list(map(list, self.forms))} are linearly dependent")

    @classmethod
    def of(cls, f1: Sequence, f2: Sequence, field: Field = QQ) -> "LinearComponent":
        return cls((tuple(field.elem(x) for x in f1), tuple(field.elem(x) for x in f2)), field)

    @property
    def nvars(self) -> int:
        return len(self.forms[0])

    @property
    def kind(self) -> str:
        return "point" if self.nvars == 3 else "line"

    @cached_property
    def key(self) -> tuple:
        """Canonical description of the subspace (its canonical spanning vectors)."""
        return tuple(nullspace(Matrix.from_rows(self.forms, self.field)))

    @cached_property
    def span_points(self) -> tuple[HPoint, ...]:
        return tuple(HPoint.of(v, self.field) for v in self.key)

    @property
    def planes(self) -> tuple[Hyperplane, Hyperplane]:
        return tuple(Hyperplane.of(f, self.field) for f in self.forms)

    def lies_in(self, h: Hyperplane) -> bool:
        return all(h.contains(pt) for pt in self.span_points)

    def contains(self, point: HPoint) -> bool:
        return all(Hyperplane(f, self.field).contains(point) for f in self.forms)

    def __str__(self) -> str:
        return f"{self.kind}{tuple(map(list, self.forms))}"


Line3 = LinearComponent


def line_from_planes(h1: Hyperplane, h2: Hyperplane) -> LinearComponent:
    """The line h1 = h2 = 0 of P^3."""
    return LinearComponent((h1.integral(), h2.integral()), h1.field)


def point_component(point: HPoint) -> LinearComponent:
    """A point of P^2 as the ideal of two lines through it."""
    forms = nullspace(Matrix.from_rows([point.coords], point.field))
    return LinearComponent((integral(forms[0], point.field), integral(forms[1], point.field)), point.field)


def _points_matrix(points: Iterable[HPoint], field: Field) -> Matrix:
    return Matrix.from_rows([p.coords for p in points], field)


@dataclass(frozen=True)
class MeetResult:
    kind: str  # "point", "skew" or "equal"
    point: HPoint | None = None


def lines_meet(l1: LinearComponent, l2: LinearComponent) -> MeetResult:
    field = l1.field
    r = rank(_points_matrix(l1.span_points + l2.span_points, field))
    if r == 2:
        return MeetResult("equal")
    if r == 4:
        return MeetResult("skew")
    kernel = nullspace(Matrix.from_rows(l1.forms + l2.forms, field))
    return MeetResult("point", HPoint.of(kernel[0], field))


def _check_distinct(lines: Sequence[LinearComponent]) -> None:
    seen: dict[tuple, int] = {}
    for i, line in enumerate(lines):
        if line.key in seen:
            raise DuplicateLine(seen[line.key], i)
        seen[line.key] = i


def coplanar_witness(lines: Sequence[LinearComponent]) -> Hyperplane | None:
    """The plane containing every line, or None if there is none."""
    if not lines:
        raise ValueError("need at least one line")
    _check_distinct(lines)
    field = lines[0].field
    kernel = nullspace(_points_matrix([p for line in lines for p in line.span_points], field))
    return Hyperplane.of(kernel[0], field) if kernel else None


def intersect(component: LinearComponent, h: Hyperplane) -> HPoint:
    """The point where a line meets a hyperplane not containing it."""
    kernel = nullspace(Matrix.from_rows(component.forms + (h.form,), component.field))
    if len(kernel) != 1:
        raise LineInHyperplane(f"{component} lies in the hyperplane {list(h.form)}")
    return HPoint.of(kernel[0], component.field)


def random_hyperplane(
    seed: int,
    avoid: Iterable[LinearComponent] = (),
    field: Field = QQ,
    nvars: int = 4,
    retries: int = RETRY_BUDGET,
) -> Hyperplane:
    """A seeded hyperplane certified generic with respect to ``avoid``.

    Generic means: no component lies in it, and the points where the
    components meet it are pairwise distinct.
    """
    lines = list(getattr(avoid, "components", avoid))
    if lines:
        field = lines[0].field
        nvars = lines[0].nvars
    rng = random.Random(seed)
    for _ in range(retries):
        coeffs = [rng.randint(-COEFF_BOUND, COEFF_BOUND) for _ in range(nvars)]
        if all(field.is_zero(c) for c in coeffs):
            continue
        h = Hyperplane.of(coeffs, field)
        if any(line.lies_in(h) for line in lines):
            continue
        points = [intersect(line, h) for line in lines]
        if len(set(points)) == len(points):
            return h
    raise GenericityFailure(f"no generic hyperplane over {field} after {retries} draws")


def hyperplane_chart(h: Hyperplane) -> Matrix:
    """Deterministic linear isomorphism h -> P^(N-1).

    Standard coordinate functionals are added greedily to ``h`` until they
    form a basis of the dual space; the added functionals are the chart rows.
    """
    n = len(h.form)
    chosen: list[tuple] = []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        if rank(Matrix.from_rows([h.form, *chosen, e], h.field)) == len(chosen) + 2:
            chosen.append(e)
    return Matrix.from_rows(chosen, h.field)


def chart_image(chart: Matrix, point: HPoint) -> HPoint:
    return HPoint.of(chart.apply(point.coords), chart.field)


def chart_lift(chart: Matrix, h: Hyperplane, point: HPoint) -> HPoint:
    """Inverse of the chart: the point of h with the given chart coordinates."""
    field = chart.field
    rows = [list(chart.row(i)) + [field.neg(point.coords[i])] for i in range(chart.rows)]
    rows.append(list(h.form) + [0])
    kernel = nullspace(Matrix.from_rows(rows, field))
    v = kernel[0]
    return HPoint.of(v[:-1], field)


@dataclass(frozen=True)
class Section:
    hyperplane: Hyperplane
    chart: Matrix
    points: tuple[HPoint, ...]  # in P^(N-1), one per component, in component order


def hyperplane_section(lines: Sequence[LinearComponent], h: Hyperplane) -> Section:
    chart = hyperplane_chart(h)
    points = tuple(chart_image(chart, intersect(line, h)) for line in lines)
    return Section(h, chart, points)
