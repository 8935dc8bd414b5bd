"""Degree slices of symbolic powers of linear configurations.

Every component is a linear complete intersection (L1, L2), so its m-th
symbolic power is the ordinary power (L1, L2)^m and membership in the
symbolic power of the whole configuration is membership in each of those.
A degree-d slice is therefore the common kernel of linear conditions on
degree-d coefficient vectors, one block of conditions per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Iterator, Sequence

from .errors import (
    BoundExceeded,
    ComputationError,
    DuplicateComponent,
    FieldError,
    InvariantViolation,
    SchemaError,
)
from .exactalg import QQ, Field, Matrix, inverse, nullspace, rank
from .geometry import LinearComponent
from .polyspace import basis_size, higher_derivative_matrix, linear_substitution, monomials

AMBIENT_VARS = {"P2": 3, "P3": 4}


@dataclass(frozen=True)
class Configuration:
    """A reduced union of points of P^2 or lines of P^3."""

    ambient: str
    components: tuple[LinearComponent, ...]
    field: Field = QQ
    label: str = ""

    def __post_init__(self):
        if self.ambient not in AMBIENT_VARS:
            raise SchemaError("ambient", f"expected 'P2' or 'P3', got {self.ambient!r}")
        if not self.components:
            raise SchemaError("components", "a configuration needs at least one component")
        seen: dict[tuple, int] = {}
        for i, c in enumerate(self.components):
            if c.nvars != self.nvars:
                raise SchemaError(f"components[{i}].forms", f"expected {self.nvars} coefficients per form")
            if c.field != self.field:
                raise SchemaError(f"components[{i}]", f"component over {c.field}, configuration over {self.field}")
            if c.key in seen:
                raise DuplicateComponent(seen[c.key], i)
            seen[c.key] = i

    @property
    def nvars(self) -> int:
        return AMBIENT_VARS[self.ambient]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[LinearComponent]:
        return iter(self.components)

    def relabel(self, label: str) -> "Configuration":
        return Configuration(self.ambient, self.components, self.field, label)


def _completion(forms: Sequence[Sequence], field: Field) -> list[tuple]:
    """Extend ``forms`` to a basis with the first standard vectors that fit."""
    n = len(forms[0])
    rows = [tuple(f) for f in forms]
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        if rank(Matrix.from_rows(rows + [e], field)) == len(rows) + 1:
            rows.append(e)
    return rows


@lru_cache(maxsize=4096)
def component_constraints(component: LinearComponent, m: int, d: int) -> Matrix:
    """Conditions on degree-d forms for membership in (L1, L2)^m.

    The change of coordinates u = A x with first rows L1, L2 sends the
    component to u1 = u2 = 0.  A form lies in (L1, L2)^m exactly when, written
    in u, every monomial of degree < m in (u1, u2) has coefficient zero.
    """
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    field = component.field
    change = Matrix.from_rows(_completion(component.forms, field), field)
    inv = inverse(change)
    # x = inv(A) u; clearing one common denominator only rescales the rows.
    images = inv.to_rows()
    if not field.p:
        den = reduce(lcm, (x.denominator for r in images for x in r if isinstance(x, Fraction)), 1)
        images = [[int(x * den) for x in r] for r in images]
    return linear_substitution(images, d, field, truncate=(2, m))


@lru_cache(maxsize=4096)
def derivative_constraints(component: LinearComponent, m: int, d: int) -> Matrix:
    """Conditions for F to vanish to order m along the component, via derivatives.

    Every partial derivative of order < m is restricted to the component
    (parametrised by its spanning points) and required to vanish.  Valid in
    characteristic 0 and in characteristic p > d.
    """
    field = component.field
    if field.p and field.p <= d:
        raise ComputationError(f"derivative conditions need characteristic > {d}, got {field.p}")
    n = component.nvars
    points = [pt.integral() for pt in component.span_points]
    images = [[pt[v] for pt in points] for v in range(n)]
    blocks = []
    for k in range(min(m - 1, d) + 1):
        restrict = linear_substitution(images, d - k, field)
        for orders in monomials(n, k):
            blocks.append(restrict @ higher_derivative_matrix(n, d, orders, field))
    out = blocks[0]
    for b in blocks[1:]:
        out = out.stack(b)
    return out


def constraint_matrix(config: Configuration, m: int, d: int, method: str = "substitution") -> Matrix:
    build = component_constraints if method == "substitution" else derivative_constraints
    blocks = [build(c, m, d) for c in config.components]
    entries = tuple(x for b in blocks for x in b.entries)
    return Matrix(sum(b.rows for b in blocks), basis_size(config.nvars, d), entries, config.field)


@dataclass(frozen=True)
class DegreeSlice:
    """The degree-d part of the m-th symbolic power of a configuration."""

    config: Configuration
    m: int
    d: int
    constraints: Matrix = dc_field(repr=False)
    dim: int

    @property
    def size(self) -> int:
        return basis_size(self.config.nvars, self.d)

    @property
    def rank(self) -> int:
        return self.size - self.dim

    def basis(self) -> list[tuple]:
        return nullspace(self.constraints)

    def witness(self) -> tuple | None:
        """First canonical basis vector of the slice, or None if it is zero."""
        if self.dim == 0:
            return None
        return self.basis()[0]


def degree_slice(config: Configuration, m: int, d: int, method: str = "substitution") -> DegreeSlice:
    p = config.field.p
    if p and p <= d:
        # in characteristic p <= d a form can have all partials vanishing
        # (x^p, for instance), and t >= 1 is no longer guaranteed
        raise FieldError(f"GF({p}) is too small for degree {d}; use a prime larger than every working degree")
    constraints = constraint_matrix(config, m, d, method)
    return DegreeSlice(config, m, d, constraints, constraints.cols - rank(constraints))


def alpha(config: Configuration, m: int = 1) -> tuple[int, tuple]:
    """Least degree of a nonzero form in the m-th symbolic power, with a witness.

    Choosing one linear form through each component and multiplying gives a
    member of degree m * len(config); failing to find one by then is a bug.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    bound = m * len(config)
    for d in range(1, bound + 1):
        s = degree_slice(config, m, d)
        if s.dim:
            return d, s.witness()
    raise BoundExceeded(f"no form of degree <= {bound} in the symbolic power m={m}")


def hilbert(config: Configuration, m: int, t: int) -> int:
    if t < 0:
        return 0
    return basis_size(config.nvars, t) - degree_slice(config, m, t).dim


def hilbert_function(config: Configuration, m: int, tmax: int) -> list[int]:
    return [hilbert(config, m, t) for t in range(tmax + 1)]


def alpha_sequence(config: Configuration, mmax: int) -> list[int]:
    return [alpha(config, m)[0] for m in range(1, mmax + 1)]


def alpha_differences(config: Configuration, mmax: int) -> list[int]:
    """Successive differences alpha(I^(m+1)) - alpha(I^(m)) for m < mmax."""
    if mmax < 2:
        raise ValueError("mmax must be at least 2")
    seq = alpha_sequence(config, mmax)
    return [b - a for a, b in zip(seq, seq[1:])]


def waldschmidt_estimates(config: Configuration, mmax: int) -> list[Fraction]:
    if mmax < 1:
        raise ValueError("mmax must be at least 1")
    return [Fraction(a, m) for m, a in enumerate(alpha_sequence(config, mmax), start=1)]


@dataclass(frozen=True)
class TypeReport:
    alpha1: int
    alpha2: int
    witness1: tuple
    witness2: tuple

    @property
    def t(self) -> int:
        return self.alpha2 - self.alpha1

    def as_dict(self) -> dict:
        return {
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "t": self.t,
            "witness1": list(self.witness1),
            "witness2": list(self.witness2),
        }


def type_of(config: Configuration) -> TypeReport:
    """alpha of the configuration and of its double; their gap is always >= 1."""
    a1, w1 = alpha(config, 1)
    a2, w2 = alpha(config, 2)
    report = TypeReport(a1, a2, w1, w2)
    if report.t < 1:
        raise InvariantViolation(f"alpha(2Z) - alpha(Z) = {report.t} < 1 for {config.label or config}")
    return report
