"""Classical generalized inverses: Moore-Penrose, Drazin and outer inverses.

Also hosts closed-form Drazin inverses of structured block matrices. Those are
independent routes to the same object and serve as oracles for :func:`drazin`.

On the exact backend the Drazin inverse is ``A^k (A^{2k+1})^+ A^k`` with the
Moore-Penrose inverse taken from a full-rank factorization. On the f64 backend
raising ``A`` to high powers destroys the small singular values, so the index
is found from the kernel chain ``N(A) <= N(A^2) <= ...`` built with orthonormal
bases, and ``A^D`` is assembled as the outer inverse with range ``R(A^k)`` and
null space ``N(A^k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NonexistenceError, SingularMatrixError, VerificationError
from .matrix import EXACT, F64, Matrix, block
from .subspace import Subspace, column_space, null_space

__all__ = [
    "DrazinResult",
    "index",
    "moore_penrose",
    "drazin",
    "outer_inverse_st",
    "power_range",
    "power_null_space",
    "drazin_block_triangular",
    "drazin_column_bordered",
    "drazin_orthogonal_sum_check",
    "drazin_product_check",
    "bordered_rank_check",
    "penrose_equations_hold",
    "drazin_equations_hold",
]


@dataclass(frozen=True)
class DrazinResult:
    d_inverse: Matrix
    index: int
    eigenprojection: Matrix


def _require_square(a: Matrix, what: str) -> None:
    if not a.is_square:
        raise DimensionError(f"{what} needs a square matrix, got {a.shape}")


def _f64_kernel_chain(a: Matrix, stop: int | None = None) -> list[Matrix]:
    """Orthonormal bases ``Z_j`` of ``N(a^j)`` for ``j = 0, 1, ...`` until it stabilizes.

    ``Z_{j+1} = N((I - Z_j Z_j*) a)``; no powers of ``a`` are formed.
    """
    n = a.nrows
    eye = a.eye()
    chain = [Matrix.zeros(n, 0, F64, a.tol)]
    while stop is None or len(chain) <= stop:
        z = chain[-1]
        nxt = ((eye - z @ z.H) @ a).null_basis()
        if nxt.ncols == z.ncols:
            if stop is None:
                break
            chain.append(z)
            continue
        chain.append(nxt)
    return chain


def index(a: Matrix) -> int:
    """Smallest ``k >= 0`` with ``rank(a^k) == rank(a^(k+1))``."""
    _require_square(a, "index")
    if a.backend == F64:
        return len(_f64_kernel_chain(a)) - 1
    prev_rank = a.nrows
    power = a.eye()
    for k in range(a.nrows + 1):
        power = power @ a if k else a
        r = power.rank()
        if r == prev_rank:
            return k
        prev_rank = r
    raise VerificationError("rank chain failed to stabilize")  # pragma: no cover


def power_null_space(a: Matrix, p: int) -> Subspace:
    """``N(a^p)``."""
    _require_square(a, "power_null_space")
    if a.backend == F64:
        return Subspace(_f64_kernel_chain(a, stop=p)[p])
    return null_space(a.power(p))


def power_range(a: Matrix, p: int) -> Subspace:
    """``R(a^p)``; on f64 taken as the orthogonal complement of ``N((a*)^p)``."""
    _require_square(a, "power_range")
    if a.backend == F64:
        return power_null_space(a.H, p).complement()
    return column_space(a.power(p))


def _full_rank_factorization(a: Matrix) -> tuple[Matrix, Matrix]:
    r, piv = a.rref()
    f = a.take(range(a.nrows), piv)
    g = r.take(range(len(piv)), range(a.ncols))
    return f, g


def moore_penrose(a: Matrix) -> Matrix:
    """The Moore-Penrose inverse ``A^+``.

    Exact: ``G* (G G*)^{-1} (F* F)^{-1} F*`` for ``A = F G`` with ``F`` the
    pivot columns of ``A`` and ``G`` the nonzero rows of its RREF. f64: SVD with
    the rank threshold of the matrix's tolerance.
    """
    m, n = a.shape
    if a.backend == F64:
        if m == 0 or n == 0:
            return Matrix.zeros(n, m, F64, a.tol)
        u, s, vh = np.linalg.svd(a.to_numpy(), full_matrices=False)
        r = a._f64_rank_from_sv(s)
        inv = (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T
        return Matrix._wrap(inv, (n, m), F64, a.tol)
    if a.is_zero():
        return a.zeros_like(n, m)
    f, g = _full_rank_factorization(a)
    fh, gh = f.H, g.H
    return gh @ (g @ gh).inverse() @ (fh @ f).inverse() @ fh


def penrose_equations_hold(a: Matrix, x: Matrix) -> bool:
    ax, xa = a @ x, x @ a
    return ax @ a == a and xa @ x == x and ax.H == ax and xa.H == xa


def drazin_equations_hold(a: Matrix, x: Matrix, k: int) -> bool:
    """``XAX = X``, ``AX = XA`` and ``X A^{k+1} = A^k``."""
    ax, xa = a @ x, x @ a
    ak = a.power(k)
    return xa @ x == x and ax == xa and x @ (ak @ a) == ak


def drazin(a: Matrix, verify: bool = True) -> DrazinResult:
    """Drazin inverse, index and eigenprojection ``I - A A^D``."""
    _require_square(a, "drazin")
    k = index(a)
    if a.backend == EXACT:
        ak = a.power(k)
        x = ak @ moore_penrose(ak @ ak @ a) @ ak
    else:
        x = outer_inverse_st(a, power_range(a, k), power_null_space(a, k))
    if verify and not drazin_equations_hold(a, x, k):
        raise VerificationError("computed Drazin inverse violates its defining equations")
    return DrazinResult(x, k, a.eye() - a @ x)


def _annihilator(t: Subspace) -> Matrix:
    """Matrix ``C`` with ``N(C) = t``: conjugate transpose of a basis of ``t^perp``."""
    return t.complement().basis.H


def outer_inverse_st(a: Matrix, s: Subspace, t: Subspace) -> Matrix:
    """``A^(2)_{S,T}``: the unique ``X`` with ``XAX = X``, ``R(X) = S``, ``N(X) = T``.

    ``X = B_s (C A B_s)^{-1} C`` where ``R(B_s) = S`` and ``N(C) = T``. Raises
    :class:`NonexistenceError` when no such ``X`` exists.
    """
    m, n = a.shape
    if s.ambient_dim != n or t.ambient_dim != m:
        raise DimensionError("S must live in C^n and T in C^m for an m x n matrix")
    if s.dim + t.dim != m:
        raise NonexistenceError(f"dim S + dim T = {s.dim + t.dim} but must equal {m}")
    bs = s.basis
    if s.dim == 0:
        return Matrix.zeros(n, m, a.backend, a.tol)
    c = _annihilator(t)
    core = c @ a @ bs
    try:
        core_inv = core.inverse()
    except SingularMatrixError:
        raise NonexistenceError("C A B_s is singular: no outer inverse with this range and null space") from None
    return bs @ core_inv @ c


# --- block lemmas used as oracles --------------------------------------------------

def drazin_block_triangular(a: Matrix, b: Matrix, e: Matrix, orientation: str = "upper") -> Matrix:
    """Drazin inverse of ``[[A, B], [0, E]]`` (upper) or ``[[E, 0], [B, A]]`` (lower).

    Assembled from the closed form for the off-diagonal block

        X = sum_{i<s} (A^D)^{i+2} B E^i E^pi + A^pi sum_{i<r} A^i B (E^D)^{i+2} - A^D B E^D

    with ``r = ind(A)``, ``s = ind(E)``.
    """
    _require_square(a, "drazin_block_triangular")
    _require_square(e, "drazin_block_triangular")
    if b.shape != (a.nrows, e.nrows):
        raise DimensionError(f"B must be {a.nrows}x{e.nrows}, got {b.shape}")
    if orientation not in ("upper", "lower"):
        raise ValueError("orientation must be 'upper' or 'lower'")
    da, de = drazin(a), drazin(e)
    ad, ed = da.d_inverse, de.d_inverse
    x = b.zeros_like()
    ad_pow = ad @ ad
    e_pow = e.eye()
    for _ in range(de.index):
        x = x + ad_pow @ b @ e_pow @ de.eigenprojection
        ad_pow = ad_pow @ ad
        e_pow = e_pow @ e
    a_pow = a.eye()
    ed_pow = ed @ ed
    acc = b.zeros_like()
    for _ in range(da.index):
        acc = acc + a_pow @ b @ ed_pow
        a_pow = a_pow @ a
        ed_pow = ed_pow @ ed
    x = x + da.eigenprojection @ acc - ad @ b @ ed
    if orientation == "upper":
        return block([[ad, x], [e.zeros_like(e.nrows, a.nrows), ed]])
    return block([[ed, e.zeros_like(e.nrows, a.nrows)], [x, ad]])


def drazin_column_bordered(a: Matrix, c: Matrix) -> Matrix:
    """Drazin inverse of ``[[A, 0], [C, 0]]`` as ``[[A^D, 0], [C (A^D)^2, 0]]``."""
    _require_square(a, "drazin_column_bordered")
    if c.ncols != a.nrows:
        raise DimensionError(f"C must have {a.nrows} columns, got {c.ncols}")
    ad = drazin(a).d_inverse
    p = c.nrows
    return block([[ad, a.zeros_like(a.nrows, p)], [c @ ad @ ad, a.zeros_like(p, p)]])


def drazin_orthogonal_sum_check(m: Matrix, n: Matrix) -> bool:
    """``(M + N)^D == M^D + N^D`` for ``MN = NM = 0``."""
    if m.shape != n.shape:
        raise DimensionError("M and N must have the same shape")
    if not (m @ n).is_zero() or not (n @ m).is_zero():
        raise ValueError("precondition MN = NM = 0 violated")
    return drazin(m + n).d_inverse == drazin(m).d_inverse + drazin(n).d_inverse


def drazin_product_check(m: Matrix, n: Matrix) -> bool:
    """``(MN)^D == M ((NM)^2)^D N``."""
    _require_square(m, "drazin_product_check")
    if m.shape != n.shape:
        raise DimensionError("M and N must have the same shape")
    nm = n @ m
    return drazin(m @ n).d_inverse == m @ drazin(nm @ nm).d_inverse @ n


def bordered_rank_check(a: Matrix, b: Matrix, d: Matrix, e: Matrix) -> bool:
    """``rank [[A, AD], [EA, B]] == rank(A) + rank(B - EAD)``."""
    if d.nrows != a.ncols or e.ncols != a.nrows or b.shape != (e.nrows, d.ncols):
        raise DimensionError("blocks are not conformable as [[A, AD], [EA, B]]")
    ad = a @ d
    m = block([[a, ad], [e @ a, b]])
    return m.rank() == a.rank() + (b - e @ ad).rank()

