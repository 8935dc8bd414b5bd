"""Exact field arithmetic and dense linear algebra over Q or GF(p).

Matrices are immutable and row-major.  Over Q every computation is reduced
to integer rows (denominators cleared row by row, which changes neither the
rank nor the kernel) and eliminated fraction-free.  Over GF(p) ordinary
Gauss-Jordan elimination is used, vectorised with numpy when ``p < 2**31``.

Large rational matrices are handed to FLINT (via ``python-flint``) when it
is importable; it runs the same fraction-free elimination in C.  Both routes
return identical ranks and identical canonical kernel bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError, NonPrimeModulus

try:  # optional accelerator for large rational matrices
    import flint as _flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    _flint = None

# Matrices with more entries than this go to FLINT over Q when available.
FLINT_THRESHOLD = 2500


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or self.p == 1:
            raise NonPrimeModulus(f"modulus {self.p} is not prime")
        if self.p and not is_prime(self.p):
            raise NonPrimeModulus(f"modulus {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    def __str__(self) -> str:
        return self.name

    def to_json(self):
        return "Q" if self.p == 0 else {"GFp": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "Q":
            return QQ
        if isinstance(obj, dict) and set(obj) == {"GFp"} and type(obj["GFp"]) is int:
            return cls(obj["GFp"])
        raise FieldError(f"unrecognised field {obj!r}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"`` or ``"GFP:<p>"`` (the FATLINES_FIELD syntax)."""
        text = text.strip()
        if text.upper() == "Q":
            return QQ
        head, _, tail = text.partition(":")
        if head.upper() in ("GFP", "GF") and tail.strip().isdigit():
            return cls(int(tail))
        raise FieldError(f"cannot parse field {text!r}; expected 'Q' or 'GFP:<p>'")

    # scalar arithmetic -------------------------------------------------

    def elem(self, x) -> int | Fraction:
        """Canonical representative of ``x`` (an int or a Fraction)."""
        if type(x) is int:
            return x % self.p if self.p else x
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def add(self, a, b):
        return self.elem(a + b)

    def sub(self, a, b):
        return self.elem(a - b)

    def mul(self, a, b):
        return self.elem(a * b)

    def neg(self, a):
        return self.elem(-a)

    def inv(self, a):
        if a == 0 or (self.p and a % self.p == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a) % self.p, -1, self.p)
        return self.elem(Fraction(1) / Fraction(a))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0 if not self.p else a % self.p == 0

    def vector(self, values: Iterable) -> tuple:
        return tuple(self.elem(v) for v in values)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple
    field: Field = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i} has length {len(r)}, expected {cols}")
        entries = tuple(field.elem(x) for r in rows for x in r)
        return cls(len(rows), cols, entries, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols), field)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.field, cols=self.rows
        )

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols or other.field != self.field:
            raise ValueError("cannot stack matrices of different widths or fields")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries, self.field)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        f = self.field
        return tuple(f.elem(sum(a * b for a, b in zip(self.row(i), v))) for i in range(self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        # row-by-row accumulation skips zero entries, which dominate the
        # derivative and substitution matrices
        other_rows = [[(j, b) for j, b in enumerate(other.row(k)) if b] for k in range(other.rows)]
        out = []
        for i in range(self.rows):
            acc = [0] * other.cols
            for a, brow in zip(self.row(i), other_rows):
                if a:
                    for j, b in brow:
                        acc[j] += a * b
            out.append(acc)
        return Matrix.from_rows(out, self.field, cols=other.cols)


# ---------------------------------------------------------------------------
# integer (fraction-free) elimination over Q


def integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale each rational row to a primitive integer row."""
    out = []
    for r in rows:
        den = reduce(lcm, (x.denominator for x in r if isinstance(x, Fraction)), 1)
        ints = [int(x * den) for x in r]
        g = reduce(gcd, ints, 0)
        out.append([x // g for x in ints] if g > 1 else ints)
    return out


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero echelon rows and their pivot columns.  Pivots are the
    first nonzero entry found scanning columns left to right and rows top to
    bottom, so the result is deterministic.  Every division is exact.
    """
    m = [list(r) for r in rows if any(r)]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if m[i][c]:
                break
        else:
            continue
        if i != r:
            m[r], m[i] = m[i], m[r]
        pivot_row = m[r]
        piv = pivot_row[c]
        tail = pivot_row[c + 1 :]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                row[c + 1 :] = [(piv * x - f * y) // prev for x, y in zip(row[c + 1 :], tail)]
            elif prev != piv:
                row[c + 1 :] = [piv * x // prev for x in row[c + 1 :]]
            row[c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return m[:r], pivots


def _kernel_from_echelon(echelon: list[list[int]], pivots: list[int], ncols: int) -> list[tuple[int, ...]]:
    """Canonical kernel basis from a fraction-free echelon form.

    For every free column f (ascending) the vector has a positive entry at f,
    zeros at the other free columns, and is a primitive integer vector.  This
    is the reduced-row-echelon kernel basis, so it does not depend on how the
    echelon form was obtained.
    """
    r = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        x: list = [0] * r
        for i in range(r - 1, -1, -1):
            row = echelon[i]
            acc = row[f] - sum(row[pivots[k]] * x[k] for k in range(i + 1, r))
            x[i] = Fraction(acc, row[pivots[i]])
        v: list = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -x[i]
        basis.append(_primitive(v, f))
    return basis


def _primitive(v: Sequence, sign_at: int | None = None) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector.

    The entry at ``sign_at`` (by default the first nonzero entry) is made positive.
    """
    den = reduce(lcm, (x.denominator for x in v if isinstance(x, Fraction)), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    lead = ints[sign_at] if sign_at is not None else next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def _rational_rank(rows: list[list[int]], ncols: int) -> int:
    if _flint is not None and len(rows) * ncols > FLINT_THRESHOLD:
        m = _flint.fmpz_mat(rows)
        # FLINT's fraction-free LU is markedly faster on tall matrices.
        if len(rows) < ncols:
            m = m.transpose()
        return int(m.rank())
    return len(bareiss_echelon(rows)[1])


def _rational_kernel(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    if _flint is not None and len(rows) * ncols > FLINT_THRESHOLD:
        reduced, den, r = _flint.fmpz_mat(rows).rref()
        # FLINT returns R with every pivot equal to den and zeros above and
        # below each pivot, so the kernel can be read off without fractions.
        den = int(den)
        echelon = [[int(reduced[i, j]) for j in range(ncols)] for i in range(int(r))]
        pivots = [next(j for j, x in enumerate(row) if x) for row in echelon]
        pivset = set(pivots)
        basis = []
        for f in (j for j in range(ncols) if j not in pivset):
            v = [0] * ncols
            v[f] = den
            for row, c in zip(echelon, pivots):
                v[c] = -row[f]
            basis.append(_primitive(v, f))
        return basis
    echelon, pivots = bareiss_echelon(rows)
    return _kernel_from_echelon(echelon, pivots, ncols)


# ---------------------------------------------------------------------------
# elimination over GF(p)


def rref_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p); returns nonzero rows and pivot columns."""
    if not rows or ncols == 0:
        return [], []
    if p < 2**31:
        return _rref_mod_p_numpy(rows, ncols, p)
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if m[i][c]:
                break
        else:
            continue
        m[r], m[i] = m[i], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        pr = m[r]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_mod_p_numpy(rows, ncols, p):
    a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            a[hit] = (a[hit] - np.outer(factors[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in a[:r]], pivots


# ---------------------------------------------------------------------------
# public operations


def rank(m: Matrix) -> int:
    """Rank of ``m`` over its field (0 for empty matrices)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p:
        return len(rref_mod_p(m.to_rows(), m.cols, m.field.p)[1])
    return _rational_rank(integer_rows(m.to_rows()), m.cols)


def nullspace(m: Matrix) -> list[tuple]:
    """Canonical basis of the kernel of ``m``.

    Vectors are indexed by the free columns of the reduced echelon form, in
    ascending order.  Over Q they are primitive integer vectors with positive
    leading entry; over GF(p) they carry a 1 in their free column.
    """
    n = m.cols
    if m.rows == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    if m.field.p:
        p = m.field.p
        reduced, pivots = rref_mod_p(m.to_rows(), n, p)
        pivset = set(pivots)
        basis = []
        for f in (j for j in range(n) if j not in pivset):
            v = [0] * n
            v[f] = 1
            for row, c in zip(reduced, pivots):
                v[c] = -row[f] % p
            basis.append(tuple(v))
        return basis
    return _rational_kernel(integer_rows(m.to_rows()), n)


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def inverse(m: Matrix) -> Matrix:
    """Inverse of a small square matrix (Gauss-Jordan on exact scalars)."""
    n, field = m.rows, m.field
    if m.cols != n:
        raise ValueError("inverse needs a square matrix")
    one = field.elem(1)
    work = [[field.elem(x) if field.p else Fraction(x) for x in m.row(i)]
            + [one if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        work[c], work[piv] = work[piv], work[c]
        inv = field.inv(work[c][c]) if field.p else 1 / work[c][c]
        work[c] = [field.mul(x, inv) if field.p else x * inv for x in work[c]]
        for i in range(n):
            f = work[i][c]
            if i != c and f != 0:
                work[i] = [field.sub(x, f * y) if field.p else x - f * y for x, y in zip(work[i], work[c])]
    return Matrix.from_rows([row[n:] for row in work], field)
