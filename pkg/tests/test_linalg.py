from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from smashcoh.linalg import (
    BasisMap, Field, LinearSolver, Matrix, NoSolution, NotASubspace,
    QuotientData, Subspace, quotient_data,
)

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)

FIELDS = [Q, F2, F3, F5]


def test_field_basics():
    assert Q.is_rational and not F5.is_rational
    assert F5.of(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5
    assert F5.inv(3) == 2
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        Field.prime(6)


def test_field_parse_format():
    assert Q.parse("-2/7") == Fraction(-2, 7)
    assert F5.parse("7 mod 5") == 2
    with pytest.raises(ValueError):
        F5.parse("1 mod 7")
    assert Q.format(Fraction(-2, 7)) == "-2/7"
    assert F5.format(F5.of(7)) == "2"


def test_rref_identity_fixed():
    m = Matrix.identity(Q, 3)
    R, pivots = m.rref()
    assert R == m and pivots == [0, 1, 2]


def test_rref_rank_one():
    m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    R, pivots = m.rref()
    assert pivots == [0]
    assert R == Matrix.from_rows(Q, [[1, 2], [0, 0]])


def test_kernel_fixed():
    # kernel of [[1,2],[2,4]] is spanned by (-2, 1)
    m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    ker = m.kernel_basis()
    assert ker.dim == 1
    assert ker.contains([-2, 1])
    assert not ker.contains([1, 0])


def test_solve_and_no_solution():
    m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    x = m.solve([1, 2])
    assert m.apply(x) == [Fraction(1), Fraction(2)]
    with pytest.raises(NoSolution):
        m.solve([1, 0])


def test_solve_mod_p():
    m = Matrix.from_rows(F5, [[2, 1], [1, 1]])
    x = m.solve([1, 4])
    assert m.apply(x) == [1, 4]
    # [[2,1],[1,3]] has determinant 5 = 0, image spanned by (2,1)
    sing = Matrix.from_rows(F5, [[2, 1], [1, 3]])
    with pytest.raises(NoSolution):
        sing.solve([1, 4])


def test_inverse():
    m = Matrix.from_rows(Q, [[1, 1], [0, 1]])
    assert m * m.inverse() == Matrix.identity(Q, 2)
    m = Matrix.from_rows(F3, [[2, 1], [1, 1]])
    assert m * m.inverse() == Matrix.identity(F3, 2)
    with pytest.raises(NoSolution):
        Matrix.from_rows(Q, [[1, 2], [2, 4]]).inverse()


def test_quotient_fixed():
    # Q^2 / span{(1,1)} is 1-dimensional; (1,0) and (0,-1) agree in it
    amb = Subspace.full(Q, 2)
    sub = Subspace(Q, 2, [[1, 1]])
    qd = quotient_data(amb, sub)
    assert qd.dim == 1
    assert qd.project([1, 0]) == qd.project([0, -1])
    assert qd.project([1, 1]) == [Fraction(0)]


def test_quotient_not_contained():
    amb = Subspace(Q, 3, [[1, 0, 0], [0, 1, 0]])
    sub = Subspace(Q, 3, [[0, 0, 1]])
    with pytest.raises(NotASubspace):
        QuotientData(Q, amb, sub)


def test_quotient_project_lift_roundtrip():
    amb = Subspace.full(F3, 4)
    sub = Subspace(F3, 4, [[1, 1, 0, 0], [0, 0, 1, 2]])
    qd = quotient_data(amb, sub)
    assert qd.dim == 2
    for v in ([1, 0, 0, 0], [0, 1, 2, 0], [2, 2, 1, 1]):
        coords = qd.project(v)
        # lift then project is identity on the quotient
        assert qd.project(qd.lift(coords)) == coords


def test_tensor_convention():
    # e_i (x) e_j -> index i*m + j, left factor slowest
    a = Matrix.from_rows(Q, [[0, 1], [1, 0]])
    b = Matrix.identity(Q, 3)
    t = a.tensor(b)
    assert t.rows == 6 and t.cols == 6
    # (e_0 x e_2) -> index 2 maps under a x b to e_1 x e_2 = index 5
    v = [0] * 6
    v[2] = 1
    out = t.apply([Q.of(x) for x in v])
    assert out[5] == 1 and sum(1 for x in out if x != 0) == 1


def test_tensor_mixed_entries():
    a = Matrix.from_rows(Q, [[1, 2]])
    b = Matrix.from_rows(Q, [[3], [4]])
    t = a.tensor(b)
    assert t == Matrix.from_rows(Q, [[3, 6], [4, 8]])


@st.composite
def small_matrix(draw, field):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    if field.p is None:
        elem = st.integers(-5, 5)
    else:
        elem = st.integers(0, field.p - 1)
    rows = draw(st.lists(st.lists(elem, min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return Matrix.from_rows(field, rows)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_rank_nullity(field, data):
    m = data.draw(small_matrix(field))
    assert m.rank() + m.kernel_basis().dim == m.cols


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_kernel_vectors_die(field, data):
    m = data.draw(small_matrix(field))
    zero = [field.zero] * m.rows
    for v in m.kernel_basis().basis:
        assert m.apply(v) == zero


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_solve_consistency(field, data):
    m = data.draw(small_matrix(field))
    x = data.draw(st.lists(st.integers(-3, 3), min_size=m.cols, max_size=m.cols))
    x = [field.of(v) for v in x]
    b = m.apply(x)
    y = m.solve(b)
    assert m.apply(y) == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_tensor_on_basis_vectors(field, data):
    a = data.draw(small_matrix(field))
    b = data.draw(small_matrix(field))
    t = a.tensor(b)
    for i in range(a.cols):
        for j in range(b.cols):
            v = [field.zero] * t.cols
            v[i * b.cols + j] = field.one
            out = t.apply(v)
            ai = a.col(i)
            bj = b.col(j)
            expect = [field.mul(field.of(x), field.of(y)) for x in ai for y in bj]
            assert out == expect


def test_subspace_sum_intersect():
    u = Subspace(Q, 3, [[1, 0, 0], [0, 1, 0]])
    v = Subspace(Q, 3, [[0, 1, 0], [0, 0, 1]])
    assert u.sum(v).dim == 3
    w = u.intersect(v)
    assert w.dim == 1 and w.contains([0, 1, 0])


def test_linear_solver_reuse():
    m = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    s = LinearSolver(m)
    for b in ([1, 0], [0, 1], [5, -7]):
        x = s.solve([Q.of(v) for v in b])
        assert m.apply(x) == [Q.of(v) for v in b]
    assert s.in_image([1, 1])


def test_basis_map_against_matrix():
    m = Matrix.from_rows(F3, [[1, 2, 0], [0, 1, 1]])
    bm = BasisMap.from_matrix(m)
    assert bm.to_matrix() == m
    assert bm.apply_dense([1, 1, 1]) == m.apply([1, 1, 1])
    m2 = Matrix.from_rows(F3, [[1, 1], [2, 0], [0, 1]])
    bm2 = BasisMap.from_matrix(m2)
    assert bm.compose(bm2).to_matrix() == m * m2


def test_basis_map_add_scale_identity():
    bm = BasisMap.identity(Q, 3)
    two = bm.add(bm)
    assert two.to_matrix() == Matrix.identity(Q, 3).scale(Q.of(2))
    assert bm.add(bm, scale=Q.of(-1)).is_zero()
    assert bm.scale(Q.of(0)).is_zero()
