import pytest

from repequiv.exactla import QQ, Field, parse_matrix
from repequiv.qalg import (Coordinates, NotAdmissible, NotFiniteDimensional, Quiver, Relation,
                           algebra_from_matrices, path_basis, rad_relations, validate_admissible)


def linear(n):
    return Quiver(n, tuple(("a%d" % i, i, i + 1) for i in range(n - 1)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_linear_path_algebra_dimension(n):
    A = path_basis(linear(n))
    assert A.dim == n * (n + 1) // 2
    assert A.is_basic()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rad_square_zero_dimension(n):
    Q = linear(n)
    A = path_basis(Q, rad_relations(Q))
    assert A.dim == 2 * n - 1


def test_commutative_square():
    Q = Quiver(4, (("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)))
    rel = Relation(((QQ.one, (0, 1)), (-QQ.one, (2, 3))))
    A = path_basis(Q, [rel])
    assert A.dim == 9
    ab = A.word_index[(0, (0, 1))] if (0, (0, 1)) in A.word_index else A.word_index[(0, (2, 3))]
    assert A.e_block(0, 3) == [ab]


def test_truncated_loop():
    Q = Quiver(1, (("x", 0, 0),))
    A = path_basis(Q, [Relation(((QQ.one, (0, 0, 0)),))])
    assert A.dim == 3
    x = A.vector(A.gen_basis[0])
    x2 = A.multiply(x, x)
    assert x2 == A.vector(A.word_index[(0, (0, 0))])
    assert not any(A.multiply(x2, x))


def test_unbounded_loop_is_rejected():
    Q = Quiver(1, (("x", 0, 0),))
    with pytest.raises(NotFiniteDimensional):
        path_basis(Q, [Relation(((QQ.one, (0, 0)), (-QQ.one, (0, 0))))], cap=8)


def test_non_admissible_relations():
    Q = linear(3)
    ok, report = validate_admissible(Q, [Relation(((QQ.one, (0,)),))])
    assert not ok and "length 1" in report
    with pytest.raises(NotAdmissible):
        path_basis(Q, [Relation(((QQ.one, (1, 0)),))])


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(0, ())
    with pytest.raises(ValueError):
        Quiver(2, (("a", 0, 1), ("a", 1, 0)))
    with pytest.raises(ValueError):
        Quiver(2, (("a", 0, 2),))


def test_opposite_is_involutive(a3):
    op = a3.opposite()
    assert op.opposite() is a3
    op.check_axioms()
    assert op.gens == [(n, t, s) for n, s, t in a3.gens]
    for i in range(a3.dim):
        for j in range(a3.dim):
            assert op.mult[i][j] == a3.mult[j][i]


def test_opposite_quiver_matches_opposite_algebra():
    Q = linear(3)
    A = path_basis(Q.opposite())
    B = path_basis(Q).opposite()
    assert A.dim == B.dim
    assert sorted(len(A.e_block(u, v)) for u in range(3) for v in range(3)) == \
        sorted(len(B.e_block(u, v)) for u in range(3) for v in range(3))


def test_matrix_presentation_matches_path_algebra():
    e1 = parse_matrix("[[1,0],[0,0]]")
    e2 = parse_matrix("[[0,0],[0,1]]")
    g = parse_matrix("[[0,1],[0,0]]")
    A, mats = algebra_from_matrices(QQ, [e1, e2], [(g, 0, 1)], names=["a"])
    B = path_basis(linear(2))
    assert A.dim == B.dim == 3
    assert A.mult == B.mult
    for i in range(A.dim):
        for j in range(A.dim):
            prod = mats[i] @ mats[j]
            expect = sum((mats[k].scale(c) for k, c in A.mult[i][j].items()), parse_matrix("[[0,0],[0,0]]"))
            assert prod == expect


def test_prime_field_algebra():
    F = Field(3)
    A = path_basis(linear(3), field=F)
    assert A.field is F and A.dim == 6


def test_coordinates():
    c = Coordinates([{0: QQ(1), 1: QQ(1)}, {1: QQ(1)}], 3, QQ)
    assert c.coords({0: QQ(2), 1: QQ(5)}) == [2, 3]
    assert c.coords({2: QQ(1)}) is None
    with pytest.raises(ValueError):
        Coordinates([{0: QQ(1)}, {0: QQ(2)}], 2, QQ)
