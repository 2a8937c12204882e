from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homlr.field import GF, QQ, Residue
from homlr.linalg import (Matrix, Subspace, kernel, quotient, right_inverse, solve,
                          solve_affine, span, unit_vector)

from oracles import naive_rank

F5 = GF(5)
fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(fractions, min_size=cols, max_size=cols), min_size=rows,
                    max_size=rows).map(lambda d: Matrix(QQ, d, rows, cols))


def test_field_parse_and_format():
    assert QQ.parse("2/4") == Fraction(1, 2)
    assert QQ.format(QQ.parse("2/4")) == "1/2"
    assert QQ.format(QQ.parse("-6/3")) == "-2"
    assert F5.format(F5.parse("7")) == "2"
    assert F5.parse("1/2") == Residue(3, 5)
    with pytest.raises(ValueError):
        QQ.parse("1/0")
    with pytest.raises(ValueError):
        QQ.parse("x")
    with pytest.raises(ValueError):
        GF(6)


def test_residue_arithmetic():
    a, b = F5(3), F5(4)
    assert a + b == F5(2)
    assert a * b == F5(2)
    assert a / b == F5(2)
    assert -a == F5(2)
    assert 1 - a == F5(3)
    assert a ** 4 == F5(1)
    with pytest.raises(ZeroDivisionError):
        a / F5(0)
    with pytest.raises(TypeError):
        GF(7)(a)


def test_prime_field_rejects_bad_denominator():
    with pytest.raises(ZeroDivisionError):
        F5.parse("1/5")


@given(matrices(3, 4))
def test_rank_nullity_and_oracle(m):
    assert m.rank() == naive_rank(m.data)
    K = kernel(m)
    assert K.dim + m.rank() == m.cols
    for v in K.basis:
        assert not any(m.apply(v))


@given(matrices(3, 3))
def test_inverse(m):
    if m.rank() == 3:
        assert m @ m.inverse() == Matrix.identity(QQ, 3)
    else:
        with pytest.raises((ValueError, ArithmeticError, ZeroDivisionError)):
            m.inverse()


@given(matrices(3, 4), st.lists(fractions, min_size=4, max_size=4))
def test_solve_consistent(m, x):
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_solve_inconsistent():
    m = Matrix(QQ, [[1, 0], [1, 0]])
    assert solve(m, (1, 2)) is None


def test_solve_affine():
    # x + y = 3, x - y = 1
    x, hom = solve_affine(QQ, 2, lambda v: (v[0] + v[1] - 3, v[0] - v[1] - 1))
    assert tuple(x) == (2, 1) and hom.dim == 0


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), max_size=5))
def test_subspace_canonical(vecs):
    S = span(QQ, vecs, 4)
    T = span(QQ, list(reversed(vecs)), 4)
    assert S == T
    assert S.dim == naive_rank(vecs)
    for v in vecs:
        assert S.contains(v)
        assert S.from_coordinates(S.coordinates(v)) == tuple(QQ(x) for x in v)


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), max_size=3),
       st.lists(st.lists(fractions, min_size=4, max_size=4), max_size=3))
def test_intersection_and_sum(u, w):
    U, W = span(QQ, u, 4), span(QQ, w, 4)
    assert (U + W).dim + U.intersection(W).dim == U.dim + W.dim
    assert U.intersection(W) <= U and U.intersection(W) <= W


def test_quotient_presentation():
    R = span(QQ, [(1, 1, 0)], 3)
    Q = quotient(3, R)
    assert Q.dim == 2
    assert Q.project((1, 1, 0)) == (0, 0)
    assert Q.project(Q.lift((Fraction(1, 2), 3))) == (Fraction(1, 2), 3)
    assert Q.project_matrix @ Q.lift_matrix == Matrix.identity(QQ, 2)


def test_right_inverse():
    m = Matrix(QQ, [[1, 2, 0], [0, 1, 1]])
    assert m @ right_inverse(m) == Matrix.identity(QQ, 2)
    with pytest.raises(ValueError):
        right_inverse(Matrix(QQ, [[1, 0], [2, 0]]))


def test_prime_field_linear_algebra():
    m = Matrix(F5, [[1, 2], [3, 1]])
    # det = 1 - 6 = -5 = 0 mod 5
    assert m.rank() == 1
    assert kernel(m).dim == 1
    assert Subspace.full(F5, 2).dim == 2
    assert unit_vector(F5, 2, 1) == (F5(0), F5(1))
