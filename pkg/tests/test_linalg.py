from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supercohom.linalg import (
    IncrementalSpan,
    SparseRationalMatrix,
    Subspace,
    fparse,
    fstr,
    intersect,
    kernel_basis,
    rank,
    solve,
    subspace_sum,
)


def oracle_rank(rows):
    """Plain dense Gauss-Jordan over Fractions."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return 0
    r = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(matrices())
def test_rank_matches_dense_oracle(rows):
    A = SparseRationalMatrix.from_dense(rows)
    assert rank(A) == oracle_rank(rows)
    assert rank(A, modular_prepass=False) == oracle_rank(rows)
    assert rank(A.transpose()) == rank(A)


@given(matrices())
def test_kernel_is_kernel(rows):
    A = SparseRationalMatrix.from_dense(rows)
    K = kernel_basis(A)
    assert K.dim == A.ncols - oracle_rank(rows)
    for v in K.basis:
        assert A.matvec(v) == {}


@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_consistent(rows, x):
    A = SparseRationalMatrix.from_dense(rows)
    xv = {i: Fraction(v) for i, v in enumerate(x[: A.ncols]) if v}
    b = A.matvec(xv)
    sol = solve(A, b)
    assert sol is not None
    assert A.matvec(sol) == b


def test_solve_inconsistent():
    A = SparseRationalMatrix.from_dense([[1, 0], [1, 0]])
    assert solve(A, {0: Fraction(1)}) is None


@given(matrices(4, 5), matrices(4, 5))
def test_modular_law_of_dimensions(r1, r2):
    n = 5
    S = Subspace.span(n, [{i: Fraction(v) for i, v in enumerate(r) if v} for r in r1])
    T = Subspace.span(n, [{i: Fraction(v) for i, v in enumerate(r) if v} for r in r2])
    assert subspace_sum(S, T).dim + intersect(S, T).dim == S.dim + T.dim
    I = intersect(S, T)
    assert I.is_subspace_of(S) and I.is_subspace_of(T)


@given(matrices(5, 5))
def test_subspace_canonical_and_coordinates(rows):
    vecs = [{i: Fraction(v) for i, v in enumerate(r) if v} for r in rows]
    S = Subspace.span(5, vecs)
    assert S == Subspace.span(5, list(reversed(vecs)))
    for v in vecs:
        assert S.contains(v)
        c = S.coordinates(v)
        back = {}
        for coef, b in zip(c, S.basis):
            for k, x in b.items():
                back[k] = back.get(k, 0) + coef * x
        assert {k: x for k, x in back.items() if x} == {k: x for k, x in v.items() if x}


@given(matrices(6, 4))
def test_incremental_span_agrees(rows):
    vecs = [{i: Fraction(v) for i, v in enumerate(r) if v} for r in rows]
    inc = IncrementalSpan(4)
    for v in vecs:
        inc.add(v)
    assert inc.dim == Subspace.span(4, vecs).dim == oracle_rank(rows)


@given(matrices(), matrices())
def test_product_and_sum(r1, r2):
    A = SparseRationalMatrix.from_dense(r1)
    B = SparseRationalMatrix.from_dense(r2)
    if A.ncols == B.nrows:
        C = A @ B
        dense = [[sum(Fraction(a) * b for a, b in zip(row, col)) for col in zip(*r2)] for row in r1]
        assert C.to_dense() == dense
    assert (A - A).is_zero()
    assert (A + A) == A.scale(2)


@given(st.fractions(max_denominator=1000))
def test_fraction_strings(x):
    assert fparse(fstr(x)) == x


def test_fraction_string_format():
    assert fstr(Fraction(-3, 4)) == "-3/4"
    assert fstr(Fraction(5)) == "5"


@given(matrices())
def test_dump_load(rows):
    A = SparseRationalMatrix.from_dense([[Fraction(v, 3) for v in r] for r in rows])
    assert SparseRationalMatrix.load(A.dump()) == A


def test_index_errors():
    with pytest.raises(IndexError):
        SparseRationalMatrix(2, 2, {3: {0: 1}})
