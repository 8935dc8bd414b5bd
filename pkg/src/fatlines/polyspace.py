"""Graded coefficient spaces of homogeneous polynomials.

A form of degree d in n variables is a dense coefficient vector indexed by
the monomials of degree d, enumerated in graded-lexicographic order: the
exponent of the first variable descends fastest, so in four variables the
degree-2 basis starts ``x^2, xy, xz, xw, y^2, ...``.  Every module shares
this enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import SingularChange
from .exactalg import QQ, Field, Matrix, rank


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(nvars - 1, degree - first))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


def basis_size(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


@dataclass(frozen=True)
class MonomialBasis:
    nvars: int
    degree: int

    @property
    def size(self) -> int:
        return basis_size(self.nvars, self.degree)

    @property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return monomials(self.nvars, self.degree)

    def exponents(self, i: int) -> tuple[int, ...]:
        return monomials(self.nvars, self.degree)[i]

    def index(self, exponents: Sequence[int]) -> int:
        return _index(self.nvars, self.degree)[tuple(exponents)]


def linear_substitution(
    images: Sequence[Sequence],
    degree: int,
    field: Field = QQ,
    truncate: tuple[int, int] | None = None,
) -> Matrix:
    """Matrix of the substitution ``x_v -> images[v]`` on degree-``degree`` forms.

    ``images[v]`` is the coefficient vector of a linear form in the target
    variables.  Column j holds the expansion of source monomial j; rows are
    the target monomials.  With ``truncate=(k, m)`` only target monomials of
    degree < m in the first k target variables are computed and returned
    (rows keep the target order).
    """
    src = len(images)
    tgt = len(images[0]) if images else 0
    p = field.p
    forms = [[(w, c) for w, c in enumerate(img) if c != 0] for img in images]

    def keep(e):
        return truncate is None or sum(e[: truncate[0]]) < truncate[1]

    unit = [tuple(int(i == w) for i in range(tgt)) for w in range(tgt)]
    level: dict[tuple[int, ...], dict[tuple[int, ...], object]] = {(0,) * src: {(0,) * tgt: 1}}
    for k in range(1, degree + 1):
        nxt = {}
        for e in monomials(src, k):
            v = next(i for i, x in enumerate(e) if x)
            prev = level[e[:v] + (e[v] - 1,) + e[v + 1 :]]
            poly: dict = {}
            for mono, coeff in prev.items():
                for w, c in forms[v]:
                    t = tuple(a + b for a, b in zip(mono, unit[w]))
                    if keep(t):
                        poly[t] = poly.get(t, 0) + coeff * c
            if p:
                poly = {t: c % p for t, c in poly.items() if c % p}
            nxt[e] = poly
        level = nxt

    targets = [t for t in monomials(tgt, degree) if keep(t)]
    row_of = {t: i for i, t in enumerate(targets)}
    src_monos = monomials(src, degree)
    rows = [[0] * len(src_monos) for _ in targets]
    for j, e in enumerate(src_monos):
        for t, c in level[e].items():
            if keep(t) and c != 0:
                rows[row_of[t]][j] = c
    return Matrix.from_rows(rows, field, cols=len(src_monos))


def substitution_matrix(change: Matrix, degree: int) -> Matrix:
    """Induced action of an invertible linear change on degree-``degree`` coefficient vectors.

    Column j is the coefficient vector of ``monomial_j`` after substituting
    ``x_v -> sum_i change[i, v] x_i``; in degree 1 this is ``change`` itself,
    and ``substitution_matrix(A @ B, d) == substitution_matrix(A, d) @ substitution_matrix(B, d)``.
    """
    n = change.rows
    if change.cols != n or rank(change) < n:
        raise SingularChange("change of coordinates is not invertible")
    images = [[change[i, v] for i in range(n)] for v in range(n)]
    return linear_substitution(images, degree, change.field)


def restrict_to_points(coeffs: Sequence, points: Sequence[Sequence], field: Field = QQ) -> tuple:
    """Coefficients of ``F(s_1 p_1 + ... + s_k p_k)`` as a form in the parameters ``s_i``."""
    nvars = len(points[0])
    degree = _degree_of(len(coeffs), nvars)
    images = [[pt[v] for pt in points] for v in range(nvars)]
    return linear_substitution(images, degree, field).apply(coeffs)


def restrict_to_line(coeffs: Sequence, line, field: Field | None = None) -> tuple:
    """Binary form ``F(s*a + t*b)`` for the spanning points a, b of ``line``.

    Coefficients are listed from ``s^d`` down to ``t^d``.  All of them vanish
    exactly when F vanishes identically on the line.
    """
    field = field or line.field
    return restrict_to_points(coeffs, [pt.integral() for pt in line.span_points], field)


def derivative_matrix(nvars: int, degree: int, var: int, field: Field = QQ) -> Matrix:
    """Partial derivative in variable ``var``, from degree ``degree`` to ``degree - 1``."""
    target = _index(nvars, degree - 1)
    rows = [[0] * basis_size(nvars, degree) for _ in range(basis_size(nvars, degree - 1))]
    for j, e in enumerate(monomials(nvars, degree)):
        if e[var]:
            rows[target[e[:var] + (e[var] - 1,) + e[var + 1 :]]][j] = e[var]
    return Matrix.from_rows(rows, field, cols=basis_size(nvars, degree))


def multiply(f: Sequence, f_deg: int, g: Sequence, g_deg: int, nvars: int, field: Field = QQ) -> tuple:
    """Product of two forms given as coefficient vectors."""
    out = [0] * basis_size(nvars, f_deg + g_deg)
    idx = _index(nvars, f_deg + g_deg)
    for a, ea in zip(f, monomials(nvars, f_deg)):
        if a == 0:
            continue
        for b, eb in zip(g, monomials(nvars, g_deg)):
            if b:
                out[idx[tuple(x + y for x, y in zip(ea, eb))]] += a * b
    return field.vector(out)


def evaluate(coeffs: Sequence, point: Sequence, field: Field = QQ):
    nvars = len(point)
    degree = _degree_of(len(coeffs), nvars)
    total = 0
    for c, e in zip(coeffs, monomials(nvars, degree)):
        if c:
            term = c
            for x, k in zip(point, e):
                term *= x**k
            total += term
    return field.elem(total)


def _degree_of(size: int, nvars: int) -> int:
    d = 0
    while basis_size(nvars, d) < size:
        d += 1
    if basis_size(nvars, d) != size:
        raise ValueError(f"{size} is not the size of a degree basis in {nvars} variables")
    return d


@lru_cache(maxsize=1024)
def higher_derivative_matrix(nvars: int, degree: int, orders: tuple[int, ...], field: Field = QQ) -> Matrix:
    """The operator prod_v (d/dx_v)^orders[v], from degree ``degree`` to ``degree - sum(orders)``."""
    k = sum(orders)
    target = _index(nvars, degree - k)
    rows = [[0] * basis_size(nvars, degree) for _ in range(basis_size(nvars, degree - k))]
    for j, e in enumerate(monomials(nvars, degree)):
        if all(a >= o for a, o in zip(e, orders)):
            c = 1
            for a, o in zip(e, orders):
                for i in range(o):
                    c *= a - i
            rows[target[tuple(a - o for a, o in zip(e, orders))]][j] = c
    return Matrix.from_rows(rows, field, cols=basis_size(nvars, degree))
