import pytest
import sympy
from hypothesis import given

from conftest import Q, from_sympy, square_with_subspace, to_sympy
from ginv import (
    F64,
    Matrix,
    SingularMatrixError,
    Subspace,
    bdd_all_representations,
    bdd_inverse,
    bott_duffin,
    build_context,
    characterize,
    drazin,
    index_equivalences,
    projector_mp_representations,
    rank_equation_representation,
    restriction_representation,
    submatrix_representation,
)
from ginv.bdd import AX_PROJ, XA_PROJ, auto_select_submatrix, condition_holds, property_suite_thm32
from ginv.errors import DimensionError
from ginv.matrix import IndexSet
from ginv.report import SKIPPED_BY_THEOREM

EX41_BDD = Q([["1/12", "1/12", "1/12", 0], ["1/24", "1/24", "1/24", 0], ["1/24", "1/24", "1/24", 0], [0, 0, 0, 0]])
EX41_AX = Q([["1/2", "1/2", "1/2", 0], ["1/4", "1/4", "1/4", 0], ["1/4", "1/4", "1/4", 0], [0, 0, 0, 0]])
EX41_XA = Q([["1/2", "1/2", "1/2", "2/3"], ["1/4", "1/4", "1/4", "1/3"], ["1/4", "1/4", "1/4", "1/3"], [0, 0, 0, 0]])
_R51 = ["2/27", "1/9", "4/27", 0]
EX51_BDD = Q([_R51, _R51, _R51, [0, 0, 0, 0]])
_P51 = ["2/9", "1/3", "4/9", 0]
EX51_AX = Q([_P51] * 4)
EX51_XA = Q([["2/9", "1/3", "4/9", "5/9"]] * 3 + [[0, 0, 0, 0]])


def sympy_bdd(a, l):
    """Independent oracle: P_L M^k (M^(2k+1))^+ M^k with M = A P_L + P_perp, all in sympy."""
    p = to_sympy(l.projector)
    n = a.nrows
    m = to_sympy(a) * p + sympy.eye(n) - p
    k = 0
    while (m ** k).rank() != (m ** (k + 1)).rank():
        k += 1
    return from_sympy(p * m ** k * (m ** (2 * k + 1)).pinv() * m ** k)


@pytest.fixture(scope="module")
def ctx41(ex41):
    return build_context(ex41["A"], Subspace(ex41["L"]))


@pytest.fixture(scope="module")
def ctx51(ex51):
    return build_context(ex51["A"], Subspace(ex51["L"]))


def test_worked_examples(ex41, ex51):
    assert bdd_inverse(ex41["A"], Subspace(ex41["L"])) == EX41_BDD
    assert bdd_inverse(ex51["A"], Subspace(ex51["L"])) == EX51_BDD


def test_products_with_a(ctx41, ctx51):
    assert ctx41.a @ ctx41.x == EX41_AX and ctx41.x @ ctx41.a == EX41_XA
    assert ctx51.a @ ctx51.x == EX51_AX and ctx51.x @ ctx51.a == EX51_XA


@given(square_with_subspace())
def test_bdd_matches_sympy_oracle(pair):
    a, l = pair
    assert bdd_inverse(a, l) == sympy_bdd(a, l)


@given(square_with_subspace(max_n=3))
def test_trivial_subspaces(pair):
    a, l = pair
    n = a.nrows
    assert bdd_inverse(Matrix.identity(n), l) == l.projector
    assert bdd_inverse(a, Subspace.full(n)) == drazin(a).d_inverse
    assert bdd_inverse(a, Subspace.zero(n)).is_zero()


def test_bott_duffin():
    l = Subspace.coordinate(3, [1, 2])
    assert bott_duffin(Matrix.identity(3), l) == l.projector
    a = Q([[2, 1], [1, 3]])
    assert bott_duffin(a, Subspace.full(2)) == a.inverse()
    spd = Q([[4, 1, 0], [1, 3, 1], [0, 1, 2]])
    assert bott_duffin(spd, l) == bdd_inverse(spd, l)
    with pytest.raises(SingularMatrixError):
        bott_duffin(Matrix.zeros(2, 2), Subspace.coordinate(2, [1]))


def test_shape_checks():
    with pytest.raises(DimensionError):
        bdd_inverse(Matrix.identity(3), Subspace.full(2))
    with pytest.raises(DimensionError):
        bdd_inverse(Matrix.zeros(2, 3), Subspace.full(2))


def test_all_eleven_forms_on_example(ctx51):
    forms = bdd_all_representations(ctx51)
    assert len(forms) == 11
    assert len({name for name, _ in forms}) == 11
    for name, m in forms:
        assert m == EX51_BDD, name


def test_forms_for_identity():
    l = Subspace(Q([[1], [1], [0]]))
    ctx = build_context(Matrix.identity(3), l)
    for name, m in bdd_all_representations(ctx) + projector_mp_representations(ctx):
        assert m == l.projector, name
    assert restriction_representation(ctx) == l.projector


@given(square_with_subspace())
def test_every_representation_agrees(pair):
    ctx = build_context(*pair)
    for name, m in bdd_all_representations(ctx) + projector_mp_representations(ctx):
        assert m == ctx.x, name
    assert restriction_representation(ctx) == ctx.x
    if ctx.a.rank():
        alpha, beta = auto_select_submatrix(ctx)
        assert submatrix_representation(ctx, alpha, beta) == ctx.x


def test_index_report_examples(ex41):
    rep = index_equivalences(ex41["A"], Subspace(ex41["L"]))
    assert set(rep.indices.values()) == {2}
    assert rep.ok
    rep = index_equivalences(Matrix.diag([2, 3]), Subspace.full(2))
    assert set(rep.indices.values()) == {0}
    rep = index_equivalences(Matrix.identity(3), Subspace.coordinate(3, [1, 2]))
    assert list(rep.indices.values()) == [0, 0, 0, 1, 1]
    assert rep.ok
    assert [r.status for r in rep.results if r.id == "index: all five agree"] == [SKIPPED_BY_THEOREM]


@given(square_with_subspace())
def test_index_relations_hold(pair):
    rep = index_equivalences(*pair)
    assert rep.ok
    ctx = build_context(*pair)
    assert rep.k == ctx.k
    if ctx.k >= 2:
        assert ctx.core_index == ctx.k


def test_context_example(ctx51):
    assert ctx51.k == 2 and ctx51.core_index == 2
    eye = Matrix.identity(4)
    assert eye - ctx51.w1 == EX51_XA
    assert eye - ctx51.w2 == EX51_AX
    assert ctx51.s.dim == 1 and ctx51.t.dim == 3


def test_context_trivial_cases():
    ctx = build_context(Matrix.identity(3), Subspace.full(3))
    assert ctx.w1.is_zero() and ctx.w2.is_zero()
    nil = Q([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    ctx = build_context(nil, Subspace.full(3))
    assert ctx.s.dim == 0
    assert ctx.w1 == Matrix.identity(3) and ctx.w2 == Matrix.identity(3)


@given(square_with_subspace())
def test_w_invariants(pair):
    ctx = build_context(*pair)
    eye = ctx.a.eye()
    assert eye - ctx.w1 == ctx.x @ ctx.a
    assert eye - ctx.w2 == ctx.a @ ctx.x
    m = ctx.core_index
    for w, p in ((ctx.w1, ctx.pl_a.power(m + 1)), (ctx.w2, ctx.a_pl.power(m + 1))):
        assert w @ w == w
        assert (w @ p).is_zero() and (p @ w).is_zero()
        assert w.rank() == ctx.n - ctx.s.dim


def test_rank_equation(ctx51):
    assert rank_equation_representation(ctx51, ctx51.x)
    e11 = Matrix.diag([1, 0, 0, 0])
    assert not rank_equation_representation(ctx51, ctx51.x + e11)
    a = Q([[2, 1], [1, 1]])
    ctx = build_context(a, Subspace.full(2))
    assert not rank_equation_representation(ctx, Matrix.zeros(2, 2))


def test_submatrix_examples(ctx51):
    full = IndexSet.full(4)
    eye = Matrix.identity(4)
    assert (eye - ctx51.w1).submatrix(full, [1, 2]) == Q([["2/9", "1/3"]] * 3 + [[0, 0]])
    assert (eye - ctx51.w2).submatrix([1, 2], full) == Q([_P51, _P51])
    assert submatrix_representation(ctx51, [1, 2], [1, 2]) == EX51_BDD
    assert auto_select_submatrix(ctx51) == ((1, 2), (1, 2))
    assert submatrix_representation(ctx51, [2, 3], [1, 2]) == EX51_BDD
    with pytest.raises(DimensionError):
        submatrix_representation(ctx51, [1], [1])


def test_submatrix_invertible_case():
    a = Q([[2, 1, 0], [1, 1, 0], [0, 0, 3]])
    ctx = build_context(a, Subspace.full(3))
    n = IndexSet.full(3)
    assert submatrix_representation(ctx, n, n) == a.inverse()


def test_auto_select_trivial():
    ctx = build_context(Matrix.diag([0, 0, 1]), Subspace.full(3))
    assert auto_select_submatrix(ctx) == ((3,), (3,))


def test_auto_select_matches_enumeration():
    from itertools import combinations

    a = Q([[0, 0, 1, 2], [0, 0, 2, 4], [1, 1, 0, 1], [2, 2, 1, 3]])
    ctx = build_context(a, Subspace.full(4))
    r = a.rank()
    want = next((tuple(i + 1 for i in rs), tuple(j + 1 for j in cs))
                for rs in combinations(range(4), r) for cs in combinations(range(4), r)
                if to_sympy(a.take(rs, cs)).det() != 0)
    assert auto_select_submatrix(ctx) == want


def test_projector_mp_forms_example(ctx51):
    for name, m in projector_mp_representations(ctx51):
        assert m == EX51_BDD, name


def test_restriction_examples(ctx41, ctx51):
    assert restriction_representation(ctx51) == EX51_BDD
    assert restriction_representation(ctx41) == EX41_BDD
    ctx = build_context(Matrix.identity(3), Subspace.full(3))
    assert restriction_representation(ctx) == Matrix.identity(3)


def test_characterize_bdd_inverse(ctx51):
    verdicts = characterize(ctx51, ctx51.x)
    assert len(verdicts) == 25
    assert all(v.holds for v in verdicts)
    groups = [v.group for v in verdicts]
    assert {g: groups.count(g) for g in set(groups)} == {
        "range": 3, "null space": 3, "outer inverse": 5, "two projectors": 5,
        "one projector": 6, "matrix equations": 3}


def test_characterize_counterexample(ctx41, ex41):
    x = ex41["X"]
    assert x != ctx41.x
    assert condition_holds(ctx41, x, AX_PROJ)
    assert condition_holds(ctx41, x, XA_PROJ)
    verdicts = characterize(ctx41, x)
    assert not any(v.holds for v in verdicts)
    for v in verdicts:
        assert v.failed_conditions and v.witness is not None


def test_characterize_zero_candidate(ctx51):
    assert not any(v.holds for v in characterize(ctx51, Matrix.zeros(4, 4)))


@given(square_with_subspace(max_n=3))
def test_characterizations_single_out_bdd(pair):
    ctx = build_context(*pair)
    assert all(v.holds for v in characterize(ctx, ctx.x))
    y = ctx.x + Matrix.diag([1] + [0] * (ctx.n - 1))
    assert not any(v.holds for v in characterize(ctx, y))


def test_property_suite_examples(ctx41):
    rep = property_suite_thm32(ctx41)
    assert rep.ok and rep.summary["pass"] == rep.summary["total"]
    ctx = build_context(Matrix.identity(3), Subspace.coordinate(3, [2]))
    assert ctx.s == ctx.l and ctx.t == ctx.l.complement()
    assert property_suite_thm32(ctx).ok


@given(square_with_subspace(complex_l=True))
def test_property_suite_complex(pair):
    rep = property_suite_thm32(build_context(*pair))
    assert rep.ok, [r.id for r in rep.failures]


@given(square_with_subspace())
def test_float_context_matches_exact(pair):
    a, l = pair
    fa = a.to_f64(1e-8)
    ctx = build_context(fa, Subspace(l.basis.to_f64(1e-8)))
    assert ctx.x == bdd_inverse(a, l).to_f64(1e-8)
    assert ctx.x.backend == F64
