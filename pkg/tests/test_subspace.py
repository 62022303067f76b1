import pytest
from hypothesis import given

from conftest import Q, int_matrices, square_with_subspace, to_sympy
from ginv import F64, Matrix, NonComplementaryError, Subspace, bdd_inverse
from ginv.subspace import (
    column_space,
    is_orthogonal_projector,
    is_projector,
    null_space,
    oblique_projector,
    orthogonal_projector,
)


def _core(ex):
    p = Matrix.diag([1, 1, 1, 0])
    return p @ ex["A"] @ p


def test_column_space_trivial_cases():
    assert column_space(Matrix.identity(3)) == Subspace.full(3)
    assert column_space(Matrix.zeros(3, 3)).dim == 0


def test_range_of_core_square(ex51):
    s = column_space(_core(ex51).power(2))
    assert s == column_space(Q([[1], [1], [1], [0]]))


def test_kernel_of_core_square(ex51):
    sq = _core(ex51).power(2)
    t = null_space(sq)
    assert t.dim == 3
    assert (sq @ t.basis).is_zero()


def test_null_space_trivial_cases():
    assert null_space(Matrix.identity(3)).dim == 0
    assert null_space(Matrix.zeros(3, 3)) == Subspace.full(3)


def test_orthogonal_projector_examples(ex41):
    assert orthogonal_projector(Subspace(ex41["L"])) == Matrix.diag([1, 1, 1, 0])
    assert orthogonal_projector(Subspace.zero(3)).is_zero()
    assert orthogonal_projector(Subspace(Q([[1], [1]]))) == Q([["1/2", "1/2"], ["1/2", "1/2"]])


@given(square_with_subspace())
def test_orthogonal_projector_properties(pair):
    _, l = pair
    p = l.projector
    assert is_orthogonal_projector(p)
    assert column_space(p) == l
    assert p.rank() == l.dim
    assert (p + l.complement().projector) == Matrix.identity(l.ambient_dim)


@given(square_with_subspace())
def test_equal_spans_compare_equal(pair):
    _, l = pair
    doubled = Subspace(Matrix([r + [2 * v for v in r] for r in l.basis.tolist()], ncols=2 * l.dim))
    assert doubled == l
    if l.dim:
        reordered = Subspace(Matrix([list(reversed(r)) for r in l.basis.tolist()], ncols=l.dim))
        assert reordered == l
        assert hash(reordered) == hash(l)


def test_oblique_projector_examples(ex51):
    core = _core(ex51)
    s, t = column_space(core.power(2)), null_space(core.power(2))
    p = oblique_projector(s, t)
    row = ["2/9", "1/3", "4/9", 0]
    assert p == Q([row, row, row, [0, 0, 0, 0]])
    x = bdd_inverse(ex51["A"], Subspace(ex51["L"]))
    assert p == Matrix.diag([1, 1, 1, 0]) @ ex51["A"] @ x
    assert oblique_projector(s, t) + oblique_projector(t, s) == Matrix.identity(4)


def test_oblique_reduces_to_orthogonal():
    l = Subspace(Q([[1], [2], [0]]))
    assert oblique_projector(l, l.complement()) == l.projector


def test_non_complementary_pairs_rejected():
    l = Subspace(Q([[1], [0]]))
    with pytest.raises(NonComplementaryError):
        oblique_projector(l, l)
    with pytest.raises(NonComplementaryError):
        oblique_projector(l, Subspace.full(2))


@given(int_matrices(2, 4))
def test_oblique_projector_of_core_pair(a):
    # range and kernel of A^n are always complementary
    n = a.nrows
    an = a.power(n)
    s, t = column_space(an), null_space(an)
    p = oblique_projector(s, t)
    assert is_projector(p)
    assert column_space(p) == s
    assert null_space(p) == t
    assert p.rank() == to_sympy(an).rank()


def test_projector_predicates(ex51):
    assert is_projector(Matrix.diag([1, 0])) and is_orthogonal_projector(Matrix.diag([1, 0]))
    skew = Q([[1, 1], [0, 0]])
    assert is_projector(skew) and not is_orthogonal_projector(skew)
    ax = ex51["A"] @ bdd_inverse(ex51["A"], Subspace(ex51["L"]))
    assert is_projector(ax) and not is_orthogonal_projector(ax)


def test_contains():
    l = Subspace(Q([[1], [1], [0]]))
    assert l.contains(Q([[3], [3], [0]]))
    assert not l.contains(Q([[1], [0], [0]]))
    assert Subspace.zero(2).contains(Matrix.zeros(2, 1))


def test_float_subspace_agrees_with_exact():
    l = Subspace(Q([[1, 0], [2, 1], [0, 3]]))
    lf = Subspace(l.basis.to_f64())
    assert lf.dim == 2
    assert lf.projector == l.projector.to_f64()
    assert lf.backend == F64
