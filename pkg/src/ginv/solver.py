"""Constrained linear systems solved through the BDD inverse.

Two problems, with ``X`` the BDD inverse of ``(A, L)``, ``core = P_L A P_L``
and ``m = ind(core)``:

* ``A x + y = beta`` with ``x`` in ``L`` and ``y`` in ``L^perp`` (an electrical
  network in Bott-Duffin form). Particular solution ``x = X beta``,
  ``y = (I - A X) beta``.
* ``P_L A x = b`` (``x`` free). ``x_min = X b`` is the solution of least
  ``P``-norm ``||P^{-1} x||_2`` for any Jordan basis ``P`` of ``core``. It is also
  available from determinant ratios of a bordered matrix.

Jordan bases are computed exactly when the spectrum of ``core`` is rational.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .bdd import BddContext
from .errors import (
    DimensionError,
    InconsistentSystemError,
    JordanBasisUnavailable,
    VerificationError,
)
from .geninv import index, power_range
from .matrix import Matrix, block, hstack
from .scalar import GaussianRational, abs2, is_real
from .subspace import Subspace, column_space, null_space

__all__ = [
    "RestrictedSolution",
    "ConstrainedSolution",
    "PNorm",
    "CertifyReport",
    "solve_restricted",
    "solve_constrained",
    "min_p_norm_certify",
    "charpoly",
    "jordan_basis",
    "jordan_basis_diagonalizable",
    "core_nilpotent_basis",
    "cramer_min_p_norm",
    "in_range",
]


@dataclass(frozen=True)
class RestrictedSolution:
    """Solutions of ``A x + y = beta``: ``x = x_particular + family_generator u``,
    ``y = y_particular + y_generator u`` for arbitrary ``u``."""

    x_particular: Matrix
    y_particular: Matrix
    family_generator: Matrix
    y_generator: Matrix
    unique: bool

    def member(self, u: Matrix) -> tuple[Matrix, Matrix]:
        return self.x_particular + self.family_generator @ u, self.y_particular + self.y_generator @ u


@dataclass(frozen=True)
class ConstrainedSolution:
    """Solutions of ``P_L A x = b``: ``x = x_min + family_generator z``."""

    x_min: Matrix
    family_generator: Matrix

    def member(self, z: Matrix) -> Matrix:
        return self.x_min + self.family_generator @ z


@dataclass(frozen=True)
class PNorm:
    """Norm ``||x||_P = ||P^{-1} x||_2`` for a nonsingular ``P``."""

    p: Matrix
    p_inv: Matrix

    @classmethod
    def from_matrix(cls, p: Matrix) -> PNorm:
        """Raises :class:`SingularMatrixError` for singular ``p``."""
        if not p.is_square:
            raise DimensionError("P must be square")
        return cls(p, p.inverse())

    def squared(self, x: Matrix):
        """``||P^{-1} x||^2``; an exact rational on the exact backend."""
        y = self.p_inv @ x
        if y.is_exact:
            total = mpq(0)
            for i in range(y.nrows):
                total += abs2(y[i, 0])
            return total
        return float(np.sum(np.abs(y.to_numpy()) ** 2))

    def norm(self, x: Matrix) -> float:
        return float(self.squared(x)) ** 0.5


def _as_column(v: Matrix, n: int, like: Matrix) -> Matrix:
    if v.shape != (n, 1):
        raise DimensionError(f"right-hand side must be {n}x1, got {v.shape}")
    if v.backend != like.backend:
        v = v.to_exact() if like.is_exact else v.to_f64(like.tol)
    return v


def in_range(m: Matrix, v: Matrix) -> bool:
    """``v`` lies in ``R(m)``: ``rank [m | v] == rank m``."""
    return hstack(m, v).rank() == m.rank()


def solve_restricted(ctx: BddContext, beta: Matrix, in_range_constraint: bool = False) -> RestrictedSolution:
    """Solve ``A x + y = beta`` with ``x`` in ``L`` and ``y`` in ``L^perp``.

    ``beta`` must lie in ``R(M^k)`` for ``M = A P_L + P_{L^perp}`` and
    ``k = ind(M)``. With ``in_range_constraint`` the extra requirement
    ``x + y`` in ``R(M^k)`` pins the particular pair down as the only solution.
    """
    a, x = ctx.a, ctx.x
    beta = _as_column(beta, ctx.n, a)
    m = ctx.a_pl + ctx.p_perp
    k = ctx.k
    if not in_range(m.power(k), beta):
        raise InconsistentSystemError("beta is not in the range of (A PL + PLperp)^k")
    xp = x @ beta
    yp = (a.eye() - a @ x) @ beta
    if k == 0 or in_range_constraint:
        zero = a.zeros_like()
        return RestrictedSolution(xp, yp, zero, zero, True)
    gen = ctx.p_l @ m.power(k - 1) @ (a.eye() - x @ m)
    return RestrictedSolution(xp, yp, gen, -(a @ gen), False)


def solve_constrained(ctx: BddContext, b: Matrix) -> ConstrainedSolution:
    """Solve ``P_L A x = b`` for ``b`` in ``R(core^m)``."""
    a, x = ctx.a, ctx.x
    b = _as_column(b, ctx.n, a)
    m = ctx.core_index
    if not in_range(ctx.core.power(m), b):
        raise InconsistentSystemError("b is not in the range of (PL A PL)^m")
    x_min = x @ b
    if m == 0:
        return ConstrainedSolution(x_min, a.zeros_like())
    gen = ctx.p_l @ ctx.core.power(m - 1) @ (a.eye() - x @ ctx.a_pl)
    return ConstrainedSolution(x_min, gen)


@dataclass(frozen=True)
class CertifyReport:
    samples: int
    violations: int
    equalities: int
    min_norm_squared: object

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _random_vector(n: int, rng: random.Random, backend: str, tol: float, complex_entries: bool) -> Matrix:
    if complex_entries:
        vals = [GaussianRational.make(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
    else:
        vals = [rng.randint(-3, 3) for _ in range(n)]
    return Matrix.column(vals, backend=backend, tol=tol)


def min_p_norm_certify(ctx: BddContext, b: Matrix, pnorm: PNorm, samples: int = 100,
                       seed: int = 0) -> CertifyReport:
    """Compare ``||x_min||_P`` against ``samples`` random members of the solution family.

    Sample ``i`` draws its vector from a generator seeded by ``(seed, i)``, so
    results do not depend on evaluation order.
    """
    sol = solve_constrained(ctx, b)
    n = ctx.n
    p_inv = pnorm.p_inv
    if p_inv.backend != ctx.a.backend:
        pnorm = PNorm(pnorm.p.to_f64(ctx.a.tol), p_inv.to_f64(ctx.a.tol))
    best = pnorm.squared(sol.x_min)
    complex_entries = ctx.a.is_exact and not all(
        is_real(v) for row in ctx.a.tolist() + ctx.p_l.tolist() for v in row)
    slack = 0 if ctx.a.is_exact else ctx.a.tol * max(1.0, float(best))
    violations = equalities = 0
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        z = _random_vector(n, rng, ctx.a.backend, ctx.a.tol, complex_entries)
        other = pnorm.squared(sol.member(z))
        if best > other + slack:
            violations += 1
        elif abs(best - other) <= slack:
            equalities += 1
    return CertifyReport(samples, violations, equalities, best)


# --- Jordan bases ---------------------------------------------------------------------

def charpoly(m: Matrix) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(t I - M)`` by Faddeev-LeVerrier (exact)."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial needs a square matrix")
    if not m.is_exact:
        m = m.to_exact()
    n = m.nrows
    coeffs = [mpq(1)]
    eye = m.eye()
    mk = m.zeros_like()
    for k in range(1, n + 1):
        mk = m @ (mk + eye.scale(coeffs[-1]))
        trace = sum((mk[i, i] for i in range(n)), mpq(0))
        coeffs.append(-trace / k)
    return coeffs


def _rational_roots(coeffs: list) -> list[tuple[object, int]]:
    """Rational roots with multiplicities; raises if any root is not rational."""
    if any(not is_real(c) for c in coeffs):
        raise JordanBasisUnavailable("characteristic polynomial has non-real coefficients; supply P explicitly")
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in coeffs], t, domain="QQ")
    roots = []
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() != 1:
            raise JordanBasisUnavailable("eigenvalues are not all rational; supply P explicitly")
        c1, c0 = factor.all_coeffs()
        r = -sympy.Rational(c0) / sympy.Rational(c1)
        roots.append((mpq(int(r.p), int(r.q)), int(mult)))
    roots.sort(key=lambda rm: rm[0])
    return roots


def _jordan_chains(m: Matrix, lam, mult: int) -> list[list[Matrix]]:
    """Jordan chains for eigenvalue ``lam``; each chain is ``[v_1, ..., v_h]`` with ``(M - lam I) v_1 = 0``."""
    nmat = m - m.eye().scale(lam)
    kernels = [Subspace.zero(m.nrows)]
    power = m.eye()
    while kernels[-1].dim < mult:
        power = power @ nmat
        kernels.append(null_space(power))
        if kernels[-1].dim == kernels[-2].dim:
            raise VerificationError("generalized eigenspace stalled below the algebraic multiplicity")
    height = len(kernels) - 1
    chains: list[list[Matrix]] = []
    for j in range(height, 0, -1):
        spanning = [kernels[j - 1].basis]
        for ch in chains:
            if len(ch) >= j:
                spanning.append(ch[j - 1])
        current = hstack(*spanning)
        cur_rank = current.rank()
        for col in kernels[j].basis.columns():
            trial = hstack(current, col)
            if trial.rank() > cur_rank:
                current, cur_rank = trial, cur_rank + 1
                top = col
                chain = [top]
                for _ in range(j - 1):
                    chain.insert(0, nmat @ chain[0])
                chains.append(chain)
            if cur_rank == kernels[j].dim:
                break
    chains.sort(key=len, reverse=True)
    return chains


def _jordan_matrix(blocks: list[tuple[object, int]]) -> Matrix:
    n = sum(h for _, h in blocks)
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for lam, h in blocks:
        for i in range(h):
            rows[pos + i][pos + i] = lam
            if i + 1 < h:
                rows[pos + i][pos + i + 1] = 1
        pos += h
    return Matrix(rows, ncols=n)


def _jordan(m: Matrix, require_diagonal: bool) -> PNorm:
    if not m.is_square:
        raise DimensionError("Jordan basis needs a square matrix")
    exact = m.to_exact()
    cols: list[Matrix] = []
    blocks = []
    for lam, mult in _rational_roots(charpoly(exact)):
        for chain in _jordan_chains(exact, lam, mult):
            if require_diagonal and len(chain) > 1:
                raise JordanBasisUnavailable("matrix is defective (not diagonalizable); supply P explicitly")
            cols.extend(chain)
            blocks.append((lam, len(chain)))
    n = exact.nrows
    p = hstack(*cols) if cols else Matrix.zeros(n, 0)
    if p.ncols != n:
        raise VerificationError("Jordan chains do not form a basis")
    p_inv = p.inverse()
    if p_inv @ exact @ p != _jordan_matrix(blocks):
        raise VerificationError("P^-1 M P is not in Jordan form")
    if not m.is_exact:
        return PNorm(p.to_f64(m.tol), p_inv.to_f64(m.tol))
    return PNorm(p, p_inv)


def jordan_basis(m: Matrix) -> PNorm:
    """Exact Jordan basis (ascending eigenvalues, longest chains first) of a matrix with rational spectrum.

    Raises :class:`JordanBasisUnavailable` for non-real or irrational spectra.
    """
    return _jordan(m, require_diagonal=False)


def jordan_basis_diagonalizable(m: Matrix) -> PNorm:
    """Eigenvector basis; raises :class:`JordanBasisUnavailable` when ``m`` is defective."""
    return _jordan(m, require_diagonal=True)


def core_nilpotent_basis(m: Matrix) -> PNorm:
    """Basis ``P = [B_S | J_T]`` splitting ``m`` into its invertible and nilpotent parts.

    ``B_S`` is the canonical basis of ``S = R(m^k)`` and ``J_T`` holds Jordan
    chains of the nilpotent restriction to ``T = N(m^k)``, so ``P^{-1} m P`` is
    block diagonal with the nilpotent block in Jordan form. Always exact, also
    when the spectrum is irrational or complex; the minimum ``P``-norm property
    only depends on this block splitting.
    """
    if not m.is_square:
        raise DimensionError("core-nilpotent basis needs a square matrix")
    exact = m.to_exact()
    k = index(exact)
    s = power_range(exact, k)
    t_dim = exact.nrows - s.dim
    chains = _jordan_chains(exact, 0, t_dim) if t_dim else []
    cols = [s.canonical] if s.dim else []
    for chain in chains:
        cols.extend(chain)
    p = hstack(*cols)
    p_inv = p.inverse()
    d = s.dim
    blocks = p_inv @ exact @ p
    nil = _jordan_matrix([(0, len(ch)) for ch in chains])
    n = exact.nrows
    if (not blocks.take(range(d), range(d, n)).is_zero() or not blocks.take(range(d, n), range(d)).is_zero()
            or blocks.take(range(d, n), range(d, n)) != nil):
        raise VerificationError("P^-1 M P does not split into invertible and nilpotent Jordan blocks")
    if not m.is_exact:
        return PNorm(p.to_f64(m.tol), p_inv.to_f64(m.tol))
    return PNorm(p, p_inv)


# --- Cramer's rule --------------------------------------------------------------------

def _validate_border(ctx: BddContext, f: Matrix, g: Matrix) -> None:
    n, td = ctx.n, ctx.t.dim
    if f.shape != (n, td) or g.shape != (td, n):
        raise DimensionError(f"F must be {n}x{td} and G {td}x{n}")
    if column_space(f) != ctx.t:
        raise ValueError("columns of F must span T")
    if null_space(g) != ctx.s:
        raise ValueError("null space of G must equal S")


def cramer_min_p_norm(ctx: BddContext, b: Matrix, f: Matrix | None = None,
                      g: Matrix | None = None) -> Matrix:
    """Minimum ``P``-norm solution of ``P_L A x = b`` by Cramer's rule.

    With ``R(F) = T`` and ``N(G) = S`` the bordered matrix
    ``H = [[P_L A P_L, F], [G, 0]]`` is nonsingular and
    ``x_i = det(H with column i replaced by [b; 0]) / det(H)``.
    ``F`` and ``G`` default to a basis of ``T`` and the conjugate transpose of a
    basis of ``S^perp``.
    """
    a = ctx.a
    b = _as_column(b, ctx.n, a)
    if not in_range(ctx.core.power(ctx.core_index), b):
        raise InconsistentSystemError("b is not in the range of (PL A PL)^m")
    if f is None:
        f = ctx.t.basis
    if g is None:
        g = ctx.s.complement().basis.H
    if f.backend != a.backend:
        f = f.to_exact() if a.is_exact else f.to_f64(a.tol)
    if g.backend != a.backend:
        g = g.to_exact() if a.is_exact else g.to_f64(a.tol)
    _validate_border(ctx, f, g)
    td = ctx.t.dim
    h = block([[ctx.core, f], [g, a.zeros_like(td, td)]]) if td else ctx.core
    det_h = h.det()
    if (det_h == 0) if a.is_exact else abs(det_h) <= a.tol:
        raise VerificationError("bordered matrix is singular")
    rhs = block([[b], [a.zeros_like(td, 1)]]) if td else b
    entries = [h.replace_column(i, rhs).det() / det_h for i in range(1, ctx.n + 1)]
    return Matrix.column(entries, backend=a.backend, tol=a.tol)

