"""Subspaces of C^n, orthogonal projectors and oblique projectors.

A :class:`Subspace` stores a full-column-rank basis. On the exact backend it
also exposes a canonical basis (column-reduced echelon form) so that equality
of subspaces is equality of canonical matrices. Orthonormal bases are never
formed on the exact backend; projectors use ``B (B* B)^{-1} B*``.
"""

from __future__ import annotations

from functools import cached_property

from .errors import DimensionError, NonComplementaryError
from .matrix import EXACT, Matrix, hstack

__all__ = [
    "Subspace",
    "column_space",
    "null_space",
    "orthogonal_projector",
    "oblique_projector",
    "is_projector",
    "is_orthogonal_projector",
]


class Subspace:
    """Subspace of C^n spanned by the columns of ``basis``.

    ``basis`` may be any spanning matrix; dependent (or zero) columns are
    dropped so that :attr:`basis` always has full column rank.
    """

    __slots__ = ("basis", "__dict__")

    def __init__(self, spanning: Matrix) -> None:
        if not isinstance(spanning, Matrix):
            raise TypeError("Subspace needs a Matrix whose columns span it")
        basis = spanning.col_basis() if spanning.ncols else spanning
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    def __reduce__(self):
        return (Subspace, (self.basis,))

    @classmethod
    def full(cls, n: int, backend: str = EXACT, tol: float | None = None) -> Subspace:
        kw = {} if tol is None else {"tol": tol}
        return cls(Matrix.identity(n, backend, **kw))

    @classmethod
    def zero(cls, n: int, backend: str = EXACT, tol: float | None = None) -> Subspace:
        kw = {} if tol is None else {"tol": tol}
        return cls(Matrix.zeros(n, 0, backend, **kw))

    @classmethod
    def coordinate(cls, n: int, indices, backend: str = EXACT) -> Subspace:
        """Span of the standard basis vectors ``e_i`` for 1-based ``indices``."""
        idx = sorted(set(indices))
        cols = [[1 if i == j - 1 else 0 for j in idx] for i in range(n)]
        return cls(Matrix(cols, ncols=len(idx), backend=backend))

    @property
    def ambient_dim(self) -> int:
        return self.basis.nrows

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def backend(self) -> str:
        return self.basis.backend

    @cached_property
    def canonical(self) -> Matrix:
        """Column-reduced echelon basis (exact) or an orthonormal basis (f64)."""
        if self.backend == EXACT:
            if self.dim == 0:
                return self.basis
            r, piv = self.basis.T.rref()
            return r.take(range(len(piv)), range(r.ncols)).T
        return self.basis.col_basis()

    @cached_property
    def projector(self) -> Matrix:
        return orthogonal_projector(self)

    def complement(self) -> Subspace:
        """Orthogonal complement ``L^perp = N(B*)``."""
        return null_space(self.basis.H)

    def contains(self, v: Matrix) -> bool:
        """True if every column of ``v`` lies in the subspace."""
        if v.nrows != self.ambient_dim:
            raise DimensionError("vector length differs from the ambient dimension")
        if self.dim == 0:
            return v.is_zero()
        return hstack(self.basis, v).rank() == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        if self.backend == EXACT and other.backend == EXACT:
            return self.canonical == other.canonical
        return self.projector == other.projector

    def __hash__(self):
        return hash((self.ambient_dim, self.canonical))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, backend={self.backend!r})"


def column_space(a: Matrix) -> Subspace:
    """``R(A)``."""
    return Subspace(a)


def null_space(a: Matrix) -> Subspace:
    """``N(A)``."""
    return Subspace(a.null_basis())


def orthogonal_projector(l: Subspace) -> Matrix:
    """``P_L = B (B* B)^{-1} B*`` for the stored basis ``B`` of ``l``."""
    b = l.basis
    if l.dim == 0:
        return Matrix.zeros(l.ambient_dim, l.ambient_dim, b.backend, b.tol)
    bh = b.H
    return b @ (bh @ b).inverse() @ bh


def oblique_projector(s: Subspace, t: Subspace) -> Matrix:
    """``P_{S,T}``: projector onto ``s`` along ``t``.

    Computed as ``[B_s | 0] [B_s | B_t]^{-1}``; raises
    :class:`NonComplementaryError` unless ``s + t`` is a direct sum equal to C^n.
    """
    n = s.ambient_dim
    if t.ambient_dim != n:
        raise DimensionError("subspaces live in different ambient spaces")
    if s.dim + t.dim != n:
        raise NonComplementaryError(f"dim S + dim T = {s.dim} + {t.dim} != {n}")
    bs, bt = s.basis, t.basis
    stacked = hstack(bs, bt)
    if stacked.rank() != n:
        raise NonComplementaryError("S and T intersect nontrivially")
    return hstack(bs, Matrix.zeros(n, t.dim, bs.backend, bs.tol)) @ stacked.inverse()


def is_projector(p: Matrix) -> bool:
    if not p.is_square:
        raise DimensionError("projector test needs a square matrix")
    return p @ p == p


def is_orthogonal_projector(p: Matrix) -> bool:
    return is_projector(p) and p == p.H
