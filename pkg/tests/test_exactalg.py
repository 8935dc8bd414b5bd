from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatlines import exactalg
from fatlines.errors import FieldError, NonPrimeModulus
from fatlines.exactalg import GF, QQ, Field, Matrix, bareiss_echelon, inverse, nullspace, rank


def full_pivot_rank(rows: list[list[int]]) -> int:
    """Independent oracle: Gauss-Jordan over Fractions with full pivoting."""
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    nrows, ncols = len(m), len(m[0]) if m else 0
    while r < min(nrows, ncols):
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) > abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[r], row[j] = row[j], row[r]
        for i in range(r + 1, nrows):
            f = m[i][r] / m[r][r]
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def low_rank(rng: random.Random, nrows: int, ncols: int, k: int, bound: int = 9) -> list[list[int]]:
    a = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(nrows)]
    b = [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(k)]
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(ncols)] for i in range(nrows)]


int_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_identity_rank():
    assert rank(Matrix.identity(3)) == 3


def test_zero_rank():
    assert rank(Matrix.zeros(4, 6)) == 0


@pytest.mark.parametrize("seed", range(10))
def test_random_8x8_against_full_pivoting(seed):
    rng = random.Random(seed)
    rows = low_rank(rng, 8, 8, rng.randint(1, 8)) if seed % 2 else [
        [rng.randint(-50, 50) for _ in range(8)] for _ in range(8)
    ]
    assert rank(Matrix.from_rows(rows)) == full_pivot_rank(rows)


def test_identity_nullspace_empty():
    assert nullspace(Matrix.identity(2)) == []


def test_all_ones_row_nullspace():
    m = Matrix.from_rows([[1, 1, 1]])
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0


def test_canonical_kernel_shape():
    # free columns 1 and 2; each vector has a positive entry at its free column
    basis = nullspace(Matrix.from_rows([[2, 4, 6]]))
    assert basis == [(-2, 1, 0), (-3, 0, 1)]


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_rank_of_transpose(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(int_matrices, st.integers(0, 100), st.integers(1, 9))
def test_rank_invariant_under_row_operations(rows, salt, scale):
    rng = random.Random(salt)
    shuffled = rows[:]
    rng.shuffle(shuffled)
    scaled = [[scale * x for x in row] if i % 2 else row for i, row in enumerate(shuffled)]
    assert rank(Matrix.from_rows(scaled)) == rank(Matrix.from_rows(rows))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_rank_nullity(rows):
    m = Matrix.from_rows(rows)
    basis = nullspace(m)
    assert rank(m) + len(basis) == m.cols
    for v in basis:
        assert all(x == 0 for x in m.apply(v))


@pytest.mark.parametrize("p", [1_000_003, 2_147_483_647, 2**61 - 1])
def test_large_prime_rank_matches_rationals(p):
    rng = random.Random(p)
    for _ in range(10):
        rows = low_rank(rng, 9, 11, rng.randint(1, 9), bound=5)
        assert rank(Matrix.from_rows(rows, GF(p))) == rank(Matrix.from_rows(rows))


def test_small_prime_can_drop_rank():
    rows = [[1, 1], [1, 3]]
    assert rank(Matrix.from_rows(rows)) == 2
    assert rank(Matrix.from_rows(rows, GF(2))) == 1


def test_gfp_nullspace_has_unit_at_free_column():
    f = GF(7)
    basis = nullspace(Matrix.from_rows([[1, 2, 3], [0, 1, 4]], f))
    assert len(basis) == 1
    v = basis[0]
    assert v[2] == 1
    m = Matrix.from_rows([[1, 2, 3], [0, 1, 4]], f)
    assert all(x == 0 for x in m.apply(v))


def test_flint_and_bareiss_agree(monkeypatch):
    rng = random.Random(5)
    rows = low_rank(rng, 60, 70, 40)
    fast = (rank(Matrix.from_rows(rows)), nullspace(Matrix.from_rows(rows)))
    monkeypatch.setattr(exactalg, "_flint", None)
    slow = (rank(Matrix.from_rows(rows)), nullspace(Matrix.from_rows(rows)))
    assert fast == slow
    assert fast[0] == 40


def test_bareiss_echelon_pivots():
    echelon, pivots = bareiss_echelon([[0, 2, 4], [0, 1, 2], [1, 0, 0]])
    assert pivots == [0, 1]
    assert len(echelon) == 2


def test_inverse_round_trip():
    m = Matrix.from_rows([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert m @ inverse(m) == Matrix.identity(3)


def test_field_parsing():
    assert Field.parse("Q") == QQ
    assert Field.parse("GFP:101") == GF(101)
    assert Field.from_json(GF(101).to_json()) == GF(101)
    with pytest.raises(NonPrimeModulus):
        GF(100)
    with pytest.raises(FieldError):
        Field.parse("R")


def test_gfp_arithmetic():
    f = GF(11)
    assert f.mul(f.inv(3), 3) == 1
    assert f.elem(-1) == 10
    assert f.div(1, 2) == 6
