from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from repequiv.exactla import (QQ, Field, Inconsistent, Matrix, coker, kronecker, nullspace, parse_matrix,
                              pullback, pushout, solve, solve_left, sparse_coker)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def test_parse_matrix_rationals():
    m = parse_matrix("[[1, 1/2], [-3, 0]]")
    assert m.shape == (2, 2)
    assert m[0, 1] == QQ(Fraction(1, 2))
    assert m.field is QQ


def test_parse_matrix_prime_suffix():
    m = parse_matrix("[[1,2],[3,4]] % 5")
    assert m.field.char == 5
    assert m.rank() == 2
    assert parse_matrix(m.to_literal()) == m


def test_parse_matrix_errors():
    with pytest.raises(ValueError):
        parse_matrix("[[1,2],[3]]")
    with pytest.raises(ValueError):
        parse_matrix("1 2 3")
    with pytest.raises(ValueError):
        parse_matrix("[[1]] % 7", field=Field(5))


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(6)


def test_fp_arithmetic():
    F = Field(7)
    assert F(3) / F(5) * F(5) == F(3)
    assert F(Fraction(1, 2)) * 2 == F(1)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(data):
    assert Matrix.from_list(QQ, data).rank() == sympy.Matrix(data).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernels(data):
    m = Matrix.from_list(QQ, data)
    lk = m.left_kernel()
    assert lk.nrows == m.nrows - m.rank()
    if lk.nrows:
        assert (lk @ m).is_zero()
    rk = m.right_kernel()
    assert rk.ncols == m.ncols - m.rank()
    if rk.ncols:
        assert (m @ rk).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_matches_sympy(data):
    m = Matrix.from_list(QQ, data)
    s = sympy.Matrix(data)
    if s.det() == 0:
        assert not m.is_invertible()
    else:
        inv = m.inverse()
        assert inv @ m == Matrix.identity(QQ, m.nrows)
        assert [[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in inv.rows] == s.inv().tolist()


def test_solve_and_inconsistent():
    a = parse_matrix("[[1,0],[0,1],[1,1]]")
    b = parse_matrix("[[1],[2],[3]]")
    x, k = solve(a, b)
    assert a @ x == b
    assert k.ncols == 0
    with pytest.raises(Inconsistent):
        solve(a, parse_matrix("[[1],[2],[4]]"))
    y, _ = solve_left(a.T, b.T)
    assert y @ a.T == b.T


def test_coker_and_sparse_coker_agree():
    f = parse_matrix("[[1,1,0],[0,1,1]]")
    q, s = coker(f)
    assert q.ncols == 1 and (f @ q).is_zero() and s @ q == Matrix.identity(QQ, 1)
    sq, free = sparse_coker([{0: QQ(1), 1: QQ(1)}, {1: QQ(1), 2: QQ(1)}], 3, QQ)
    assert len(free) == 1
    dense = Matrix.from_row_dicts(QQ, sq, 1)
    assert (f @ dense).is_zero()


def test_pushout_pullback_square():
    f = parse_matrix("[[1,0]]")
    g = parse_matrix("[[1,1,0]]")
    n, ia, ib = pushout(f, g)
    assert f @ ia == g @ ib and n == 4
    m, pa, pb = pullback(parse_matrix("[[1],[0]]"), parse_matrix("[[1],[1],[0]]"))
    assert pa @ parse_matrix("[[1],[0]]") == pb @ parse_matrix("[[1],[1],[0]]") and m == 4


def test_nullspace_and_kronecker():
    ns = nullspace([{0: QQ(1), 1: QQ(-1)}], 3, QQ)
    assert len(ns) == 2
    k = kronecker(Matrix.identity(QQ, 2), parse_matrix("[[1,2]]"))
    assert k.shape == (2, 4) and k.rows[1] == [0, 0, 1, 2]
