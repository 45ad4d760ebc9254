from __future__ import annotations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dcover.linalg import Matrix, nullspace, rank, rank_of_array, rref, solve
from dcover.polyring import GF, QQ

F7 = GF(7)
F101 = GF(101)
BIG = GF(4_294_967_311)  # above the int64-safe bound: object-dtype path


def test_rref_identity():
    I = Matrix.identity(3)
    R, piv = rref(I)
    assert R == I and piv == (0, 1, 2)


def test_rref_zero():
    Z = Matrix.zeros(2, 3)
    R, piv = rref(Z)
    assert R == Z and piv == ()


def test_rref_rank_one():
    R, piv = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert R.to_rows() == [[1, 2], [0, 0]] and piv == (0,)


def test_rank_examples():
    assert rank(Matrix.identity(4, F7)) == 4
    assert rank(Matrix.zeros(3, 5)) == 0
    assert rank(Matrix.from_rows([[1, 1], [1, 1], [0, 1]])) == 2


def test_nullspace_examples():
    assert nullspace(Matrix.identity(3)) == []
    (v,) = nullspace(Matrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0
    assert len(nullspace(Matrix.zeros(2, 3))) == 3


def test_solve_examples():
    assert solve(Matrix.identity(3), [4, 5, 6]) == (4, 5, 6)
    x = solve(Matrix.from_rows([[1, 1]]), [2])
    assert x[0] + x[1] == 2
    assert solve(Matrix.from_rows([[1], [1]]), [0, 1]) is None
    with pytest.raises(ValueError):
        solve(Matrix.identity(2), [1])


def test_rank_of_array_matches():
    a = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=np.int64)
    assert rank_of_array(a.copy(), 101) == 2
    assert rank_of_array(a.copy(), 2) == 1  # rows 1 and 3 agree mod 2


def test_large_prime_path():
    m = Matrix.from_rows([[BIG.p - 1, 1], [1, BIG.p - 1]], BIG)
    assert rank(m) == 1


def matrices(field, max_dim=6):
    if field.p is None:
        entry = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    else:
        entry = st.integers(0, field.p - 1)
    # skew toward zeros so rank deficiency is common
    entry = st.one_of(st.just(0), st.just(0), entry)
    return st.integers(1, max_dim).flatmap(lambda r: st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: Matrix.from_rows(rows, field, cols=c))))


any_matrix = st.one_of(matrices(QQ), matrices(F7), matrices(F101), matrices(BIG, 4))


def _sympy_rank(m: Matrix) -> int:
    if m.field.p is None:
        return sympy.Matrix(m.to_rows()).rank()
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.domains import GF as SGF
    dm = DomainMatrix([[SGF(m.field.p)(int(x)) for x in r] for r in m.to_rows()], (m.rows, m.cols), SGF(m.field.p))
    return dm.rank()


@settings(max_examples=300)
@given(any_matrix)
def test_rank_matches_sympy(m):
    assert rank(m) == _sympy_rank(m)


@settings(max_examples=300)
@given(any_matrix)
def test_rank_nullity_and_kernel(m):
    basis = nullspace(m)
    assert rank(m) + len(basis) == m.cols
    for v in basis:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=300)
@given(any_matrix)
def test_rref_idempotent_and_rank(m):
    R, piv = rref(m)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert len(piv) == rank(m) == rank(m.transpose())
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert all(R[j, c] == 0 for j in range(m.rows) if j != i)


@settings(max_examples=300)
@given(any_matrix, st.data())
def test_solve_consistent_rhs(m, data):
    F = m.field
    x = [F(data.draw(st.integers(-5, 5))) for _ in range(m.cols)]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and list(m.apply(y)) == list(b)
