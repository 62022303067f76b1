"""The Bott-Duffin Drazin (BDD) inverse and its equivalent representations.

For a square ``A`` and a subspace ``L`` with orthogonal projector ``P_L``,

    bdd(A, L) = P_L (A P_L + P_{L^perp})^D.

The module computes it from that definition and along a dozen independent
routes (other Drazin inverses, outer inverses, projector products, a rank
equation, submatrix products, a restriction to the core subspace), plus the
range/null-space/projector/matrix-equation tests that single it out.

Notation used throughout:

* ``core = P_L A P_L`` and ``m = ind(core)``;
* ``S = R(core^m)`` and ``T = N(core^m)``;
* ``W1 = P[N((P_L A)^(m+1)), S]`` and ``W2 = P[T, R((A P_L)^(m+1))]``,
  where ``P[U, V]`` projects onto ``U`` along ``V``.

``k = ind(A P_L + P_{L^perp})`` is kept alongside ``m``. The two agree except
when ``A P_L + P_{L^perp}`` is invertible while ``L`` is a proper subspace;
then ``k = 0`` but ``m = 1`` and only ``m`` gives the right ``S`` and ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import DimensionError, SingularMatrixError, VerificationError
from .geninv import drazin, index, moore_penrose, outer_inverse_st, power_null_space, power_range
from .matrix import IndexSet, Matrix, block
from .report import FAIL, SKIPPED_BY_THEOREM, PropertyResult, VerificationReport, check
from .subspace import Subspace, column_space, null_space, oblique_projector

__all__ = [
    "BddContext",
    "CharacterizationVerdict",
    "IndexReport",
    "bott_duffin",
    "bdd_inverse",
    "build_context",
    "bdd_all_representations",
    "index_equivalences",
    "rank_equation_representation",
    "submatrix_representation",
    "auto_select_submatrix",
    "projector_mp_representations",
    "restriction_representation",
    "characterize",
    "property_suite_thm32",
]


def _check_pair(a: Matrix, l: Subspace) -> Subspace:
    """Validate shapes and move ``l`` onto the backend of ``a``."""
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.shape}")
    if l.ambient_dim != a.nrows:
        raise DimensionError(f"subspace lives in C^{l.ambient_dim}, matrix is {a.nrows}x{a.nrows}")
    if l.backend != a.backend:
        l = Subspace(l.basis.to_exact() if a.is_exact else l.basis.to_f64(a.tol))
    return l


def _projectors(a: Matrix, l: Subspace) -> tuple[Matrix, Matrix]:
    p_l = l.projector
    return p_l, a.eye() - p_l


def bott_duffin(a: Matrix, l: Subspace) -> Matrix:
    """Classical Bott-Duffin inverse ``P_L (A P_L + P_{L^perp})^{-1}``.

    Raises :class:`SingularMatrixError` when the bracket is singular.
    """
    l = _check_pair(a, l)
    p_l, p_perp = _projectors(a, l)
    return p_l @ (a @ p_l + p_perp).inverse()


def bdd_inverse(a: Matrix, l: Subspace) -> Matrix:
    """``P_L (A P_L + P_{L^perp})^D``. Exists for every square ``A`` and every ``L``."""
    l = _check_pair(a, l)
    p_l, p_perp = _projectors(a, l)
    return p_l @ drazin(a @ p_l + p_perp).d_inverse


@dataclass(frozen=True)
class BddContext:
    """Immutable snapshot of everything derived from ``(A, L)``."""

    a: Matrix
    l: Subspace
    p_l: Matrix
    k: int
    core_index: int
    s: Subspace
    t: Subspace
    w1: Matrix
    w2: Matrix
    x: Matrix

    @property
    def n(self) -> int:
        return self.a.nrows

    @property
    def p_perp(self) -> Matrix:
        return self.a.eye() - self.p_l

    @cached_property
    def core(self) -> Matrix:
        return self.p_l @ self.a @ self.p_l

    @cached_property
    def a_pl(self) -> Matrix:
        return self.a @ self.p_l

    @cached_property
    def pl_a(self) -> Matrix:
        return self.p_l @ self.a

    @cached_property
    def p_st(self) -> Matrix:
        """Projector onto ``S`` along ``T``."""
        return oblique_projector(self.s, self.t)

    @cached_property
    def ax_target(self) -> Matrix:
        """Projector onto ``R((A P_L)^(m+1))`` along ``T``; equals ``I - W2``."""
        return self.a.eye() - self.w2

    @cached_property
    def xa_target(self) -> Matrix:
        """Projector onto ``S`` along ``N((P_L A)^(m+1))``; equals ``I - W1``."""
        return self.a.eye() - self.w1

    @cached_property
    def p_s(self) -> Matrix:
        return self.s.projector

    @cached_property
    def p_t_perp(self) -> Matrix:
        return self.a.eye() - self.t.projector


def _verify_w(w: Matrix, power: Matrix, rank: int, name: str) -> None:
    zero = w.zeros_like()
    if w @ w != w:
        raise VerificationError(f"{name} is not idempotent")
    if w @ power != zero or power @ w != zero:
        raise VerificationError(f"{name} does not annihilate the (m+1)-th power")
    if w.rank() != rank:
        raise VerificationError(f"rank of {name} is {w.rank()}, expected {rank}")


def build_context(a: Matrix, l: Subspace, verify: bool = True) -> BddContext:
    """Assemble ``k``, ``S``, ``T``, ``W1``, ``W2`` and the BDD inverse for ``(A, L)``."""
    l = _check_pair(a, l)
    p_l, p_perp = _projectors(a, l)
    a_pl = a @ p_l
    pl_a = p_l @ a
    core = pl_a @ p_l
    dr = drazin(a_pl + p_perp)
    x = p_l @ dr.d_inverse
    m = index(core)
    s = power_range(core, m)
    t = power_null_space(core, m)
    if s.dim + t.dim != a.nrows:
        raise VerificationError("S and T are not complementary")
    w1 = oblique_projector(power_null_space(pl_a, m + 1), s)
    w2 = oblique_projector(t, power_range(a_pl, m + 1))
    if verify:
        rank = a.nrows - s.dim
        _verify_w(w1, pl_a.power(m + 1), rank, "W1")
        _verify_w(w2, a_pl.power(m + 1), rank, "W2")
    return BddContext(a=a, l=l, p_l=p_l, k=dr.index, core_index=m, s=s, t=t, w1=w1, w2=w2, x=x)


# --- representations -------------------------------------------------------------

def bdd_all_representations(ctx: BddContext) -> list[tuple[str, Matrix]]:
    """Eleven Drazin-inverse expressions that all equal the BDD inverse."""
    p_l, p_perp = ctx.p_l, ctx.p_perp
    core, a_pl, pl_a = ctx.core, ctx.a_pl, ctx.pl_a
    core_d = drazin(core).d_inverse
    shifted_d = drazin(core + p_perp).d_inverse
    a_pl_d = drazin(a_pl).d_inverse
    pl_a_d = drazin(pl_a).d_inverse
    return [
        ("(PL A PL)^D", core_d),
        ("PL (PL A PL)^D", p_l @ core_d),
        ("(PL A PL)^D PL", core_d @ p_l),
        ("PL (PL A PL + PLperp)^D", p_l @ shifted_d),
        ("(PL A PL + PLperp)^D PL", shifted_d @ p_l),
        ("(PL A PL + PLperp)^D - PLperp", shifted_d - p_perp),
        ("(PL A + PLperp)^D PL", drazin(pl_a + p_perp).d_inverse @ p_l),
        ("PL (A PL)^D", p_l @ a_pl_d),
        ("(PL A)^D PL", pl_a_d @ p_l),
        ("PL ((A PL)^2)^D A PL", p_l @ drazin(a_pl @ a_pl).d_inverse @ a_pl),
        ("PL A ((PL A)^2)^D PL", p_l @ ctx.a @ drazin(pl_a @ pl_a).d_inverse @ p_l),
    ]


def projector_mp_representations(ctx: BddContext) -> list[tuple[str, Matrix]]:
    """Three products of ``I - W1``, ``I - W2`` with Drazin or Moore-Penrose inverses."""
    eye = ctx.a.eye()
    return [
        ("PL (I - W2) (A PL)^D", ctx.p_l @ (eye - ctx.w2) @ drazin(ctx.a_pl).d_inverse),
        ("(PL A)^D (I - W1) PL", drazin(ctx.pl_a).d_inverse @ (eye - ctx.w1) @ ctx.p_l),
        ("(I - W1) A^+ (I - W2)", (eye - ctx.w1) @ moore_penrose(ctx.a) @ (eye - ctx.w2)),
    ]


def rank_equation_representation(ctx: BddContext, x: Matrix) -> bool:
    """True iff ``rank [[A, I - W2], [I - W1, X]] == rank(A)``; only the BDD inverse passes."""
    if x.shape != ctx.a.shape:
        raise DimensionError(f"candidate must be {ctx.a.shape}, got {x.shape}")
    eye = ctx.a.eye()
    big = block([[ctx.a, eye - ctx.w2], [eye - ctx.w1, x]])
    return big.rank() == ctx.a.rank()


def submatrix_representation(ctx: BddContext, alpha, beta) -> Matrix:
    """``(I - W1)[N|beta] A[alpha|beta]^{-1} (I - W2)[alpha|N]`` for 1-based index sets.

    ``|alpha| = |beta| = rank(A) >= 1`` and ``A[alpha|beta]`` must be invertible.
    """
    n = ctx.n
    alpha = alpha if isinstance(alpha, IndexSet) else IndexSet(alpha, n)
    beta = beta if isinstance(beta, IndexSet) else IndexSet(beta, n)
    r = ctx.a.rank()
    if r < 1:
        raise DimensionError("submatrix representation needs rank(A) >= 1")
    if len(alpha) != r or len(beta) != r:
        raise DimensionError(f"index sets must have rank(A) = {r} elements")
    full = IndexSet.full(n)
    eye = ctx.a.eye()
    pivot = ctx.a.submatrix(alpha, beta).inverse()
    return (eye - ctx.w1).submatrix(full, beta) @ pivot @ (eye - ctx.w2).submatrix(alpha, full)


def auto_select_submatrix(ctx: BddContext) -> tuple[IndexSet, IndexSet]:
    """Lexicographically smallest ``(alpha, beta)`` with ``A[alpha|beta]`` invertible of order ``rank(A)``."""
    a = ctx.a
    n, r = ctx.n, a.rank()
    if r < 1:
        raise DimensionError("auto_select_submatrix needs rank(A) >= 1")
    full = range(n)
    for rows in combinations(range(n), r):
        if a.take(rows, full).rank() < r:
            continue
        for cols in combinations(range(n), r):
            if a.take(rows, cols).rank() == r:
                return IndexSet(i + 1 for i in rows), IndexSet(j + 1 for j in cols)
    raise VerificationError("no invertible r x r submatrix found")  # pragma: no cover


def restriction_representation(ctx: BddContext) -> Matrix:
    """Invert ``core^(m+1)`` restricted to ``S`` and apply it after ``core^m``.

    In a basis ``B`` of ``S`` the restriction is the small matrix ``R`` with
    ``core^(m+1) B = B R``. The result is ``B R^{-1} C core^m`` where ``C`` maps
    a vector to the ``B``-coordinates of its component in ``S`` along ``T``.
    """
    d = ctx.s.dim
    if d == 0:
        return ctx.a.zeros_like()
    b = ctx.s.canonical
    core_m = ctx.core.power(ctx.core_index)
    left = (b.H @ b).inverse() @ b.H
    restricted = left @ ctx.core @ core_m @ b
    if ctx.core @ core_m @ b != b @ restricted:
        raise VerificationError("S is not invariant under the core matrix")
    try:
        restricted_inv = restricted.inverse()
    except SingularMatrixError:
        raise VerificationError("restriction of core^(m+1) to S is singular") from None
    coords = left @ ctx.p_st
    return b @ restricted_inv @ coords @ core_m


# --- index relations ---------------------------------------------------------------

@dataclass(frozen=True)
class IndexReport:
    """Indices of the five related matrices plus the relations checked between them."""

    indices: dict[str, int]
    results: list[PropertyResult]

    @property
    def k(self) -> int:
        return self.indices["A PL + PLperp"]

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)


def index_equivalences(a: Matrix, l: Subspace) -> IndexReport:
    """Compare the indices of ``A P_L + P_perp``, ``P_L A + P_perp``, ``core + P_perp``, ``core``, ``P_L A* P_L``.

    When ``ind(A P_L + P_perp) >= 2`` all five must agree. Below that only the
    first three are compared and ``ind(core) <= 1`` is checked; full equality
    is recorded as skipped because it genuinely fails at 1 (``A = I`` with a
    proper ``L`` gives 0, 0, 0, 1, 1).
    """
    l = _check_pair(a, l)
    p_l, p_perp = _projectors(a, l)
    core = p_l @ a @ p_l
    mats = {
        "A PL + PLperp": a @ p_l + p_perp,
        "PL A + PLperp": p_l @ a + p_perp,
        "PL A PL + PLperp": core + p_perp,
        "PL A PL": core,
        "PL A* PL": p_l @ a.H @ p_l,
    }
    ind = {name: index(m) for name, m in mats.items()}
    values = list(ind.values())
    k = values[0]
    witness = Matrix.diag(values)
    results = [check("index: shifted forms agree", len(set(values[:3])) == 1, witness,
                     f"indices {values[:3]}")]
    if k >= 2:
        results.append(check("index: all five agree", len(set(values)) == 1, witness, f"indices {values}"))
    else:
        results.append(check("index: core index at most 1", ind["PL A PL"] <= 1, witness,
                             f"core index {ind['PL A PL']}"))
        results.append(PropertyResult("index: all five agree", SKIPPED_BY_THEOREM,
                                      detail=f"common index {k} < 2; indices {values}"))
    return IndexReport(ind, results)


# --- characterizations ---------------------------------------------------------------

@dataclass(frozen=True)
class CharacterizationVerdict:
    """Outcome of one criterion set: ``holds`` iff every condition in it holds."""

    criterion: str
    group: str
    holds: bool
    failed_conditions: tuple[str, ...] = ()
    witness: Matrix | None = None


AX_PROJ = "AX = P[R((A PL)^(m+1)), T]"
XA_PROJ = "XA = P[S, N((PL A)^(m+1))]"
RANGE_S = "R(X) = S"
NULL_T = "N(X) = T"
OUTER = "XAX = X"
PLAX_PST = "PL A X = P[S, T]"
XAPL_PST = "X A PL = P[S, T]"
X_PTP = "X P(T^perp) = X"
PS_X = "P(S) X = X"
PS_X_PTP = "P(S) X P(T^perp) = X"
RANK_DIM_S = "rank X = dim S"
X2APL = "X^2 A PL = X"
CORE_COMMUTE_RIGHT = "(PL A PL) X = X A PL"
POWER_EQ = "(PL A)^(m+1) X = (PL A)^m PL"
PLAX2 = "PL A X^2 = X"
CORE_COMMUTE_LEFT = "PL A X = X (PL A PL)"
PLAX_XAPL = "PL A X = X A PL"

CRITERIA: list[tuple[str, tuple[str, ...]]] = [
    ("range", (RANGE_S, AX_PROJ)),
    ("range", (RANGE_S, PLAX_PST)),
    ("range", (RANGE_S, XA_PROJ, X_PTP)),
    ("null space", (NULL_T, XA_PROJ)),
    ("null space", (NULL_T, XAPL_PST)),
    ("null space", (NULL_T, AX_PROJ, PS_X)),
    ("outer inverse", (OUTER, X_PTP, XA_PROJ)),
    ("outer inverse", (OUTER, XAPL_PST, AX_PROJ)),
    ("outer inverse", (OUTER, PS_X, AX_PROJ)),
    ("outer inverse", (OUTER, PLAX_PST, XA_PROJ)),
    ("outer inverse", (OUTER, PS_X_PTP, RANK_DIM_S)),
    ("two projectors", (AX_PROJ, XA_PROJ, OUTER)),
    ("two projectors", (AX_PROJ, XA_PROJ, RANK_DIM_S)),
    ("two projectors", (AX_PROJ, XA_PROJ, X_PTP)),
    ("two projectors", (AX_PROJ, XA_PROJ, PS_X)),
    ("two projectors", (AX_PROJ, XA_PROJ, PS_X_PTP)),
    ("one projector", (AX_PROJ, PS_X)),
    ("one projector", (XA_PROJ, X_PTP)),
    ("one projector", (PLAX_PST, PS_X)),
    ("one projector", (PLAX_PST, PS_X_PTP)),
    ("one projector", (XAPL_PST, X_PTP)),
    ("one projector", (XAPL_PST, PS_X_PTP)),
    ("matrix equations", (X2APL, CORE_COMMUTE_RIGHT, POWER_EQ)),
    ("matrix equations", (PLAX2, CORE_COMMUTE_LEFT, POWER_EQ)),
    ("matrix equations", (X2APL, PLAX2, PLAX_XAPL, POWER_EQ)),
]


class _Conditions:
    """Lazily evaluated atomic conditions on a candidate ``X``; each yields (holds, residual)."""

    def __init__(self, ctx: BddContext, x: Matrix) -> None:
        self.ctx, self.x = ctx, x
        self._memo: dict[str, tuple[bool, Matrix]] = {}

    def __call__(self, name: str) -> tuple[bool, Matrix]:
        if name not in self._memo:
            self._memo[name] = self._eval(name)
        return self._memo[name]

    @staticmethod
    def _eq(lhs: Matrix, rhs: Matrix) -> tuple[bool, Matrix]:
        return lhs == rhs, lhs - rhs

    def _eval(self, name: str) -> tuple[bool, Matrix]:
        c, x = self.ctx, self.x
        a, p_l = c.a, c.p_l
        if name == AX_PROJ:
            return self._eq(a @ x, c.ax_target)
        if name == XA_PROJ:
            return self._eq(x @ a, c.xa_target)
        if name == RANGE_S:
            return column_space(x) == c.s, x
        if name == NULL_T:
            return null_space(x) == c.t, x
        if name == OUTER:
            return self._eq(x @ a @ x, x)
        if name == PLAX_PST:
            return self._eq(c.pl_a @ x, c.p_st)
        if name == XAPL_PST:
            return self._eq(x @ c.a_pl, c.p_st)
        if name == X_PTP:
            return self._eq(x @ c.p_t_perp, x)
        if name == PS_X:
            return self._eq(c.p_s @ x, x)
        if name == PS_X_PTP:
            return self._eq(c.p_s @ x @ c.p_t_perp, x)
        if name == RANK_DIM_S:
            return x.rank() == c.s.dim, x
        if name == X2APL:
            return self._eq(x @ x @ c.a_pl, x)
        if name == CORE_COMMUTE_RIGHT:
            return self._eq(c.core @ x, x @ c.a_pl)
        if name == POWER_EQ:
            m = c.core_index
            pm = c.pl_a.power(m)
            return self._eq(pm @ c.pl_a @ x, pm @ p_l)
        if name == PLAX2:
            return self._eq(c.pl_a @ x @ x, x)
        if name == CORE_COMMUTE_LEFT:
            return self._eq(c.pl_a @ x, x @ c.core)
        if name == PLAX_XAPL:
            return self._eq(c.pl_a @ x, x @ c.a_pl)
        raise KeyError(name)


def condition_holds(ctx: BddContext, x: Matrix, condition: str) -> bool:
    """Evaluate a single named condition (one of the constants above) on ``x``."""
    return _Conditions(ctx, x)(condition)[0]


def characterize(ctx: BddContext, x: Matrix) -> list[CharacterizationVerdict]:
    """Evaluate every criterion set on ``x``; each one holds exactly when ``x`` is the BDD inverse."""
    if x.shape != ctx.a.shape:
        raise DimensionError(f"candidate must be {ctx.a.shape}, got {x.shape}")
    if x.backend != ctx.a.backend:
        x = x.to_exact() if ctx.a.is_exact else x.to_f64(ctx.a.tol)
    cond = _Conditions(ctx, x)
    verdicts = []
    for group, names in CRITERIA:
        failed = tuple(nm for nm in names if not cond(nm)[0])
        witness = cond(failed[0])[1] if failed else None
        verdicts.append(CharacterizationVerdict(" & ".join(names), group, not failed, failed, witness))
    return verdicts


def property_suite_thm32(ctx: BddContext) -> VerificationReport:
    """Structural identities of the BDD inverse: projector absorption, range and null space,
    outer-inverse identities, the two projectors ``AX``/``XA``, ``P[S, T]``, outer-inverse
    uniqueness and compatibility with conjugate transposition."""
    a, x, p_l = ctx.a, ctx.x, ctx.p_l
    rep = VerificationReport()
    rep.add(check("absorbs PL: X = PL X = X PL = PL X PL",
                  p_l @ x == x and x @ p_l == x and p_l @ x @ p_l == x, x - p_l @ x @ p_l))
    rep.add(check("range: R(X) = S", column_space(x) == ctx.s, x))
    rep.add(check("null space: N(X) = T", null_space(x) == ctx.t, x))
    outer_forms = [
        ("X A X", x @ a @ x),
        ("X A PL X", x @ ctx.a_pl @ x),
        ("X PL A X", x @ ctx.pl_a @ x),
        ("X PL A PL X", x @ ctx.core @ x),
    ]
    for name, val in outer_forms:
        rep.add(check(f"outer: {name} = X", val == x, val - x))
    ax, xa = a @ x, x @ a
    rep.add(check("AX = P[R((A PL)^(m+1)), T]", ax == oblique_projector(
        power_range(ctx.a_pl, ctx.core_index + 1), ctx.t), ax))
    rep.add(check("XA = P[S, N((PL A)^(m+1))]", xa == oblique_projector(
        ctx.s, power_null_space(ctx.pl_a, ctx.core_index + 1)), xa))
    rep.add(check("X A PL = PL A X = P[S, T]",
                  x @ ctx.a_pl == ctx.p_st and ctx.pl_a @ x == ctx.p_st, x @ ctx.a_pl - ctx.p_st))
    for name, op in (("A", a), ("A PL", ctx.a_pl), ("PL A", ctx.pl_a), ("PL A PL", ctx.core)):
        y = outer_inverse_st(op, ctx.s, ctx.t)
        rep.add(check(f"outer inverse of {name} with range S and null space T", y == x, y - x))
    xs = bdd_inverse(a.H, ctx.l)
    rep.add(check("conjugate transpose: bdd(A*, L) = bdd(A, L)*", xs == x.H, xs - x.H))
    return rep

