import pickle

import numpy as np
import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import Q, from_sympy, int_matrices, to_sympy
from ginv import F64, Matrix, RankAmbiguityError, SingularMatrixError
from ginv.errors import BackendMismatchError, DimensionError
from ginv.matrix import IndexSet, block, hstack, matrix_power, replace_column, submatrix, vstack
from ginv.scalar import GaussianRational

NIL = Q([[0, 1], [0, 0]])


def test_identity_is_neutral():
    m = Q([[1, "1/2"], [3, -2]])
    assert Matrix.identity(2) @ m == m
    assert m @ Matrix.identity(2) == m


def test_nilpotent_square_vanishes():
    assert NIL @ NIL == Q([[0, 0], [0, 0]])
    assert matrix_power(NIL, 2).is_zero()


def test_right_projector_zeroes_fourth_column(ex41):
    p = Matrix.diag([1, 1, 1, 0])
    a = ex41["A"]
    want = Matrix([row[:3] + [0] for row in a.tolist()])
    assert a @ p == want


def test_conj_transpose():
    sym = Q([[1, 2], [2, 5]])
    assert sym.H == sym
    i = GaussianRational(0, 1)
    assert Matrix([[i]]).H == Matrix([[-i]])


@given(int_matrices(3, 3), int_matrices(3, 3))
def test_conj_transpose_reverses_products(a, b):
    assert (a @ b).H == b.H @ a.H


def test_mixing_backends_is_an_error():
    with pytest.raises(BackendMismatchError):
        Matrix.identity(2) + Matrix.identity(2, backend=F64)


def test_shape_errors():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix.identity(2) @ Matrix.identity(3)


def test_rank_small_cases(ex41):
    assert Matrix.identity(4).rank() == 4
    assert Matrix.zeros(3, 2).rank() == 0
    # rows 2 and 3 add up to row 1 only in the first three columns, so rank is 3
    assert ex41["A"].rank() == 3


@given(int_matrices(1, 5, square=False))
def test_rank_matches_sympy(a):
    assert a.rank() == to_sympy(a).rank()


@given(int_matrices(1, 5))
def test_det_matches_sympy(a):
    assert a.det() == int(to_sympy(a).det())


def test_det_examples(ex51):
    assert Matrix.identity(5).det() == 1
    assert Q([[1, 1], [0, 1]]).det() == 1
    assert ex51["A"].submatrix([1, 2], [1, 2]).det() == 1


def test_inverse_examples(ex51):
    assert Matrix.identity(3).inverse() == Matrix.identity(3)
    assert Q([[1, 1], [0, 1]]).inverse() == Q([[1, -1], [0, 1]])
    assert ex51["A"].submatrix([1, 2], [1, 2]).inverse() == Q([[1, -1], [0, 1]])
    with pytest.raises(SingularMatrixError):
        NIL.inverse()


@given(int_matrices(1, 4))
def test_inverse_matches_sympy(a):
    s = to_sympy(a)
    if s.det() == 0:
        with pytest.raises(SingularMatrixError):
            a.inverse()
    else:
        assert a.inverse() == from_sympy(s.inv())


def test_complex_inverse():
    i = GaussianRational(0, 1)
    a = Matrix([[1, i], [i, 2]])
    assert a @ a.inverse() == Matrix.identity(2)


def test_submatrix_examples(ex51):
    a = ex51["A"]
    assert a.submatrix([1, 2], [1, 2]) == Q([[1, 1], [0, 1]])
    assert submatrix(a, IndexSet.full(4), IndexSet.full(4)) == a
    with pytest.raises(ValueError):
        IndexSet([2, 1])
    with pytest.raises(IndexError):
        a.submatrix([5], [1])


def test_replace_column():
    assert replace_column(Matrix.identity(2), 1, [0, 0]) == Q([[0, 0], [0, 1]])


@given(int_matrices(1, 4), st.data())
def test_replace_column_with_itself(m, data):
    j = data.draw(st.integers(1, m.ncols))
    assert m.replace_column(j, m.take(range(m.nrows), [j - 1])) == m


def test_power_examples(ex51):
    assert Q([[2, 1], [1, 1]]).power(0) == Matrix.identity(2)
    p = Matrix.diag([1, 1, 1, 0])
    core = p @ ex51["A"] @ p
    want = Matrix(np.array([[2, 3, 4, 0]] * 3 + [[0, 0, 0, 0]]))
    assert core.power(2) == want


@given(int_matrices(1, 4), st.integers(0, 5))
def test_power_matches_repeated_product(a, p):
    want = Matrix.identity(a.nrows)
    for _ in range(p):
        want = want @ a
    assert a.power(p) == want


@given(int_matrices(1, 5, square=False))
def test_null_and_column_bases(a):
    z = a.null_basis()
    assert (a @ z).is_zero()
    assert z.ncols == a.ncols - a.rank()
    assert a.col_basis().rank() == a.rank()


def test_rref():
    r, piv = Q([[2, 4, 2], [1, 2, 3]]).rref()
    assert piv == (0, 2)
    assert r == Q([[1, 2, 0], [0, 0, 1]])


def test_stacking():
    a = Q([[1, 2]])
    assert hstack(a, a) == Q([[1, 2, 1, 2]])
    assert vstack(a, a) == Q([[1, 2], [1, 2]])
    z = Matrix.zeros(1, 2)
    assert block([[a, z], [z, a]]) == Q([[1, 2, 0, 0], [0, 0, 1, 2]])


def test_exact_arithmetic_has_no_rounding():
    third = Q([["1/3"]])
    assert third + third + third == Q([[1]])
    assert Q([[mpq(1, 10)]]).power(3) == Q([["1/1000"]])


@given(int_matrices(1, 4))
def test_float_backend_agrees_with_exact(a):
    f = a.to_f64()
    assert f.rank() == a.rank()
    assert (f @ f) == (a @ a).to_f64()
    assert abs(f.det() - complex(float(a.det()))) <= 1e-9 * max(1.0, abs(float(a.det())))


def test_float_equality_is_relative():
    a = Matrix([[1e6]], backend=F64, tol=1e-8)
    assert a == Matrix([[1e6 + 1e-3]], backend=F64, tol=1e-8)
    assert a != Matrix([[1e6 + 1.0]], backend=F64, tol=1e-8)


def test_float_rank_ambiguity():
    m = Matrix([[1, 0], [0, 1e-9]], backend=F64, tol=1e-9)
    with pytest.raises(RankAmbiguityError) as info:
        m.rank()
    assert info.value.value == pytest.approx(1e-9)
    assert Matrix([[1, 0], [0, 1e-15]], backend=F64, tol=1e-9).rank() == 1
    assert Matrix([[1, 0], [0, 1e-3]], backend=F64, tol=1e-9).rank() == 2


def test_float_inverse_matches_numpy():
    a = Matrix([[4, 7], [2, 6]], backend=F64)
    assert np.allclose(a.inverse().to_numpy(), np.linalg.inv(np.array([[4.0, 7], [2, 6]])))


def test_pickle_roundtrip():
    for m in (Q([["1/2", GaussianRational(1, 2)]]), Matrix([[1.5, 2j]], backend=F64)):
        assert pickle.loads(pickle.dumps(m)) == m


def test_immutable():
    m = Matrix.identity(2)
    with pytest.raises(AttributeError):
        m.shape = (3, 3)


def test_hash_consistent_with_equality():
    assert hash(Q([["2/4"]])) == hash(Q([["1/2"]]))
    with pytest.raises(TypeError):
        hash(Matrix.identity(2, backend=F64))


def test_sympy_oracle_roundtrip():
    s = sympy.Matrix([[sympy.Rational(1, 3), 1 + 2 * sympy.I]])
    assert to_sympy(from_sympy(s)) == s
