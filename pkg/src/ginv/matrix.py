"""Dense immutable matrices over exact Gaussian rationals or complex doubles.

Two backends share one :class:`Matrix` type:

``"exact"``
    entries are ``mpq`` or :class:`~ginv.scalar.GaussianRational`; every
    operation is exact and equality is decidable. Pivoting picks the first
    nonzero entry of each column, so results are deterministic.

``"f64"``
    entries are ``complex128`` in a read-only numpy array. Each matrix carries
    a tolerance ``tol``: two entries are equal when
    ``|a - b| <= tol * max(1, |a|, |b|)`` and rank decisions use singular values
    against the threshold ``tol * max(1, sigma_max)``. A singular value inside
    ``[tol/8, 8*tol]`` (relative) makes the rank ambiguous and raises
    :class:`~ginv.errors.RankAmbiguityError`.

Operands of a binary operation must share a backend.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import BackendMismatchError, DimensionError, RankAmbiguityError, SingularMatrixError
from .scalar import abs2, conj, to_complex, to_exact

__all__ = [
    "EXACT",
    "F64",
    "DEFAULT_TOL",
    "Matrix",
    "IndexSet",
    "add",
    "sub",
    "mul",
    "conj_transpose",
    "rank",
    "det",
    "inverse",
    "submatrix",
    "replace_column",
    "matrix_power",
    "hstack",
    "vstack",
    "block",
]

EXACT = "exact"
F64 = "f64"
DEFAULT_TOL = 1e-10

_ZERO = mpq(0)
_ONE = mpq(1)


class IndexSet(tuple):
    """Strictly increasing tuple of 1-based indices, as in ``A[alpha|beta]``."""

    def __new__(cls, indices: Iterable[int], n: int | None = None):
        idx = tuple(int(i) for i in indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"index set must be strictly increasing: {idx}")
        if idx and idx[0] < 1:
            raise IndexError(f"indices are 1-based, got {idx[0]}")
        if n is not None and idx and idx[-1] > n:
            raise IndexError(f"index {idx[-1]} out of range 1..{n}")
        return super().__new__(cls, idx)

    @classmethod
    def full(cls, n: int) -> IndexSet:
        return cls(range(1, n + 1))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self)

    def __repr__(self):
        return "{" + ",".join(str(i) for i in self) + "}"


def _check_backend(backend: str) -> str:
    if backend not in (EXACT, F64):
        raise ValueError(f"unknown backend {backend!r}; expected 'exact' or 'f64'")
    return backend


class Matrix:
    """Immutable dense ``m x n`` matrix.

    Build from nested rows; ``ncols`` is only needed for matrices with no rows.

    >>> Matrix([[1, 2], ["1/2", 0]]).det()
    mpq(-1,1)
    """

    __slots__ = ("_data", "shape", "backend", "tol")

    def __init__(self, rows=(), *, ncols: int | None = None, backend: str = EXACT,
                 tol: float = DEFAULT_TOL) -> None:
        _check_backend(backend)
        if isinstance(rows, Matrix):
            rows = rows.tolist()
        if isinstance(rows, np.ndarray):
            if rows.ndim != 2:
                raise DimensionError("expected a 2-D array")
            rows = rows.tolist()
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else (ncols or 0)
        if ncols is not None and m and n != ncols:
            raise DimensionError(f"rows have {n} entries, expected {ncols}")
        for r in rows:
            if len(r) != n:
                raise DimensionError("inconsistent row lengths")
        if backend == EXACT:
            data = tuple(tuple(to_exact(x) for x in r) for r in rows)
        else:
            data = np.array(
                [[complex(x) if isinstance(x, (int, float, complex)) else to_complex(to_exact(x))
                  for x in r] for r in rows],
                dtype=np.complex128,
            ).reshape(m, n)
            data.flags.writeable = False
        self._init(data, (m, n), backend, tol)

    def _init(self, data, shape, backend, tol):
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "tol", float(tol))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        data = np.array(self._data) if self.backend == F64 else self._data
        return (Matrix._wrap, (data, self.shape, self.backend, self.tol))

    @classmethod
    def _wrap(cls, data, shape, backend, tol=DEFAULT_TOL) -> Matrix:
        obj = cls.__new__(cls)
        if backend == F64:
            data = np.ascontiguousarray(data, dtype=np.complex128).reshape(shape)
            data.flags.writeable = False
        obj._init(data, shape, backend, tol)
        return obj

    # construction helpers -------------------------------------------------
    @classmethod
    def identity(cls, n: int, backend: str = EXACT, tol: float = DEFAULT_TOL) -> Matrix:
        if backend == EXACT:
            data = tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
            return cls._wrap(data, (n, n), EXACT, tol)
        return cls._wrap(np.eye(n, dtype=np.complex128), (n, n), F64, tol)

    @classmethod
    def zeros(cls, m: int, n: int, backend: str = EXACT, tol: float = DEFAULT_TOL) -> Matrix:
        if backend == EXACT:
            return cls._wrap(tuple((_ZERO,) * n for _ in range(m)), (m, n), EXACT, tol)
        return cls._wrap(np.zeros((m, n), dtype=np.complex128), (m, n), F64, tol)

    @classmethod
    def column(cls, entries: Sequence, backend: str = EXACT, tol: float = DEFAULT_TOL) -> Matrix:
        return cls([[x] for x in entries], ncols=1, backend=backend, tol=tol)

    @classmethod
    def diag(cls, entries: Sequence, backend: str = EXACT, tol: float = DEFAULT_TOL) -> Matrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
                   ncols=n, backend=backend, tol=tol)

    def like(self, rows) -> Matrix:
        """Build a matrix from ``rows`` on this matrix's backend and tolerance."""
        return Matrix(rows, backend=self.backend, tol=self.tol)

    def eye(self, n: int | None = None) -> Matrix:
        return Matrix.identity(self.shape[0] if n is None else n, self.backend, self.tol)

    def zeros_like(self, m: int | None = None, n: int | None = None) -> Matrix:
        return Matrix.zeros(self.shape[0] if m is None else m, self.shape[1] if n is None else n,
                            self.backend, self.tol)

    # basic accessors -------------------------------------------------------
    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def __getitem__(self, key):
        i, j = key
        if self.backend == EXACT:
            return self._data[i][j]
        return complex(self._data[i, j])

    def tolist(self) -> list[list]:
        if self.backend == EXACT:
            return [list(r) for r in self._data]
        return [[complex(x) for x in r] for r in self._data]

    def to_numpy(self) -> np.ndarray:
        if self.backend == F64:
            return np.array(self._data)
        return np.array([[to_complex(x) for x in r] for r in self._data],
                        dtype=np.complex128).reshape(self.shape)

    def to_f64(self, tol: float | None = None) -> Matrix:
        return Matrix._wrap(self.to_numpy(), self.shape, F64, self.tol if tol is None else tol)

    def to_exact(self) -> Matrix:
        if self.backend == EXACT:
            return self
        return Matrix(self.tolist(), ncols=self.ncols, backend=EXACT)

    def with_tol(self, tol: float) -> Matrix:
        return Matrix._wrap(self._data, self.shape, self.backend, tol)

    def __iter__(self):
        raise TypeError("Matrix is not iterable; use tolist() or rows()")

    def rows(self) -> list[Matrix]:
        return [self.take([i], range(self.ncols)) for i in range(self.nrows)]

    def columns(self) -> list[Matrix]:
        return [self.take(range(self.nrows), [j]) for j in range(self.ncols)]

    # arithmetic --------------------------------------------------------------
    def _same(self, other: Matrix) -> float:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.backend != other.backend:
            raise BackendMismatchError(f"cannot combine {self.backend} and {other.backend} matrices")
        return max(self.tol, other.tol)

    def __add__(self, other: Matrix) -> Matrix:
        tol = self._same(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        if self.backend == EXACT:
            data = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._data, other._data))
            return Matrix._wrap(data, self.shape, EXACT, tol)
        return Matrix._wrap(self._data + other._data, self.shape, F64, tol)

    def __sub__(self, other: Matrix) -> Matrix:
        tol = self._same(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        if self.backend == EXACT:
            data = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._data, other._data))
            return Matrix._wrap(data, self.shape, EXACT, tol)
        return Matrix._wrap(self._data - other._data, self.shape, F64, tol)

    def __neg__(self) -> Matrix:
        if self.backend == EXACT:
            return Matrix._wrap(tuple(tuple(-x for x in r) for r in self._data), self.shape, EXACT, self.tol)
        return Matrix._wrap(-self._data, self.shape, F64, self.tol)

    def __matmul__(self, other: Matrix) -> Matrix:
        tol = self._same(other)
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.backend == F64:
            return Matrix._wrap(self._data @ other._data, (m, n), F64, tol)
        cols = list(zip(*other._data)) if m else []
        if not cols:
            cols = [()] * n
        data = tuple(
            tuple(_dot(row, col) for col in cols)
            for row in self._data
        )
        return Matrix._wrap(data, (m, n), EXACT, tol)

    def scale(self, c) -> Matrix:
        """Multiply every entry by the scalar ``c``."""
        if self.backend == EXACT:
            c = to_exact(c)
            return Matrix._wrap(tuple(tuple(c * x for x in r) for r in self._data), self.shape, EXACT, self.tol)
        return Matrix._wrap(self._data * to_complex(c), self.shape, F64, self.tol)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use '@' for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if self.backend == EXACT:
            return self.scale(1 / to_exact(c))
        return self.scale(1 / to_complex(c))

    def __pow__(self, p: int) -> Matrix:
        return self.power(p)

    @property
    def H(self) -> Matrix:
        """Conjugate transpose."""
        m, n = self.shape
        if self.backend == EXACT:
            data = tuple(tuple(conj(self._data[i][j]) for i in range(m)) for j in range(n))
            return Matrix._wrap(data, (n, m), EXACT, self.tol)
        return Matrix._wrap(self._data.conj().T, (n, m), F64, self.tol)

    @property
    def T(self) -> Matrix:
        m, n = self.shape
        if self.backend == EXACT:
            data = tuple(tuple(self._data[i][j] for i in range(m)) for j in range(n))
            return Matrix._wrap(data, (n, m), EXACT, self.tol)
        return Matrix._wrap(self._data.T, (n, m), F64, self.tol)

    def power(self, p: int) -> Matrix:
        """``self**p`` by repeated squaring; ``p = 0`` gives the identity."""
        if not self.is_square:
            raise DimensionError("matrix power needs a square matrix")
        if p < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = self.eye()
        base = self
        first = True
        while p:
            if p & 1:
                result = base if first else result @ base
                first = False
            p >>= 1
            if p:
                base = base @ base
        return result

    # comparisons -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.backend != other.backend or self.shape != other.shape:
            return False
        if self.backend == EXACT:
            return self._data == other._data
        tol = max(self.tol, other.tol)
        a, b = self._data, other._data
        bound = tol * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
        return bool(np.all(np.abs(a - b) <= bound))

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    def __hash__(self):
        if self.backend != EXACT:
            raise TypeError("f64 matrices are unhashable (equality is tolerance-based)")
        return hash((self.shape, self._data))

    def is_zero(self) -> bool:
        if self.backend == EXACT:
            return not any(x for r in self._data for x in r)
        return bool(np.all(np.abs(self._data) <= self.tol))

    def max_abs(self) -> float:
        if self.backend == EXACT:
            return max((float(abs2(x)) ** 0.5 for r in self._data for x in r), default=0.0)
        return float(np.max(np.abs(self._data))) if self._data.size else 0.0

    def __repr__(self) -> str:
        if self.backend == EXACT:
            body = [[str(x) for x in r] for r in self._data]
        else:
            body = [[_fmt_complex(complex(x)) for x in r] for r in self._data]
        return f"Matrix({body}, backend={self.backend!r})"

    # slicing -----------------------------------------------------------------
    def take(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        """Sub-matrix with 0-based row and column positions (in the given order)."""
        rows, cols = list(rows), list(cols)
        m, n = self.shape
        for i in rows:
            if not 0 <= i < m:
                raise IndexError(f"row {i} out of range")
        for j in cols:
            if not 0 <= j < n:
                raise IndexError(f"column {j} out of range")
        if self.backend == EXACT:
            data = tuple(tuple(self._data[i][j] for j in cols) for i in rows)
            return Matrix._wrap(data, (len(rows), len(cols)), EXACT, self.tol)
        return Matrix._wrap(self._data[np.ix_(rows, cols)], (len(rows), len(cols)), F64, self.tol)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        """``A[alpha|beta]`` for 1-based index sets ``alpha`` (rows) and ``beta`` (cols)."""
        alpha = rows if isinstance(rows, IndexSet) else IndexSet(rows)
        beta = cols if isinstance(cols, IndexSet) else IndexSet(cols)
        if alpha and alpha[-1] > self.nrows:
            raise IndexError(f"row index {alpha[-1]} out of range 1..{self.nrows}")
        if beta and beta[-1] > self.ncols:
            raise IndexError(f"column index {beta[-1]} out of range 1..{self.ncols}")
        return self.take(alpha.zero_based(), beta.zero_based())

    def replace_column(self, i: int, b: Matrix | Sequence) -> Matrix:
        """``A(i -> b)``: replace the 1-based column ``i`` with the vector ``b``."""
        m, n = self.shape
        if not 1 <= i <= n:
            raise IndexError(f"column {i} out of range 1..{n}")
        if not isinstance(b, Matrix):
            b = Matrix.column(list(b), backend=self.backend, tol=self.tol)
        self._same(b)
        if b.shape != (m, 1):
            raise DimensionError(f"replacement column must be {m}x1, got {b.shape}")
        j = i - 1
        if self.backend == EXACT:
            data = tuple(r[:j] + (b._data[k][0],) + r[j + 1:] for k, r in enumerate(self._data))
            return Matrix._wrap(data, self.shape, EXACT, self.tol)
        arr = np.array(self._data)
        arr[:, j] = b._data[:, 0]
        return Matrix._wrap(arr, self.shape, F64, self.tol)

    # elimination -------------------------------------------------------------
    def _f64_scale(self) -> float:
        return max(1.0, self.max_abs())

    def singular_values(self) -> np.ndarray:
        if self.nrows == 0 or self.ncols == 0:
            return np.zeros(0)
        return np.linalg.svd(self.to_numpy(), compute_uv=False)

    def _f64_rank_from_sv(self, s: np.ndarray) -> int:
        if s.size == 0:
            return 0
        scale = max(1.0, float(s[0]))
        lo, hi = self.tol * scale / 8, self.tol * scale * 8
        for v in s:
            if lo <= v <= hi:
                raise RankAmbiguityError(
                    f"singular value {v:.3e} lies in the ambiguity band [{lo:.1e}, {hi:.1e}]", float(v))
        return int(np.sum(s > self.tol * scale))

    def rank(self) -> int:
        if self.backend == EXACT:
            return len(_ex_echelon(self._data, self.ncols, reduced=False)[1])
        return self._f64_rank_from_sv(self.singular_values())

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and the 0-based pivot columns.

        Exact: first nonzero pivot per column. f64: max-magnitude pivot with
        threshold ``tol * max(1, max|a_ij|)``.
        """
        if self.backend == EXACT:
            rows, piv = _ex_echelon(self._data, self.ncols, reduced=True)
            return Matrix._wrap(tuple(tuple(r) for r in rows), self.shape, EXACT, self.tol), tuple(piv)
        arr, piv = _f64_rref(np.array(self._data), self.tol, self._f64_scale())
        return Matrix._wrap(arr, self.shape, F64, self.tol), tuple(piv)

    def det(self):
        if not self.is_square:
            raise DimensionError("determinant needs a square matrix")
        if self.backend == EXACT:
            return _ex_det(self._data, self.nrows)
        if self.nrows == 0:
            return 1 + 0j
        return complex(np.linalg.det(self._data))

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise DimensionError("inverse needs a square matrix")
        n = self.nrows
        if self.backend == EXACT:
            aug = tuple(r + tuple(_ONE if i == j else _ZERO for j in range(n)) for i, r in enumerate(self._data))
            rows, piv = _ex_echelon(aug, 2 * n, reduced=True)
            if len(piv) < n or piv[n - 1] != n - 1:
                raise SingularMatrixError("matrix is singular")
            data = tuple(tuple(r[n:]) for r in rows)
            return Matrix._wrap(data, (n, n), EXACT, self.tol)
        if self.rank() < n:
            raise SingularMatrixError("matrix is numerically singular")
        return Matrix._wrap(np.linalg.inv(self._data), (n, n), F64, self.tol)

    def solve(self, b: Matrix) -> Matrix:
        """Solve ``self @ x = b`` for square nonsingular ``self``."""
        self._same(b)
        if self.backend == F64:
            if self.rank() < self.nrows:
                raise SingularMatrixError("matrix is numerically singular")
            return Matrix._wrap(np.linalg.solve(self._data, b._data), (self.ncols, b.ncols), F64,
                                max(self.tol, b.tol))
        return self.inverse() @ b

    def null_basis(self) -> Matrix:
        """Columns spanning the kernel (exact: RREF free-variable basis; f64: orthonormal)."""
        m, n = self.shape
        if self.backend == EXACT:
            rows, piv = _ex_echelon(self._data, n, reduced=True)
            free = [j for j in range(n) if j not in set(piv)]
            cols = []
            for f in free:
                v = [_ZERO] * n
                v[f] = _ONE
                for r, p in enumerate(piv):
                    v[p] = -rows[r][f]
                cols.append(v)
            data = tuple(tuple(c[i] for c in cols) for i in range(n))
            return Matrix._wrap(data, (n, len(cols)), EXACT, self.tol)
        if m == 0:
            return self.eye(n)
        u, s, vh = np.linalg.svd(self._data)
        r = self._f64_rank_from_sv(s)
        return Matrix._wrap(vh.conj().T[:, r:], (n, n - r), F64, self.tol)

    def col_basis(self) -> Matrix:
        """Columns spanning the range (exact: pivot columns; f64: orthonormal)."""
        m, n = self.shape
        if self.backend == EXACT:
            piv = _ex_echelon(self._data, n, reduced=False)[1]
            return self.take(range(m), piv)
        if n == 0 or m == 0:
            return Matrix.zeros(m, 0, F64, self.tol)
        u, s, vh = np.linalg.svd(self._data)
        r = self._f64_rank_from_sv(s)
        return Matrix._wrap(u[:, :r], (m, r), F64, self.tol)

    def pivot_columns(self) -> tuple[int, ...]:
        if self.backend == EXACT:
            return tuple(_ex_echelon(self._data, self.ncols, reduced=False)[1])
        return self.rref()[1]


def _dot(row, col):
    acc = _ZERO
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _ex_echelon(data, ncols: int, reduced: bool):
    rows = [list(r) for r in data]
    m = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = 1 / pv
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(0 if reduced else r + 1, m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _ex_det(data, n: int):
    """Fraction-free (Bareiss) elimination."""
    if n == 0:
        return _ONE
    a = [list(r) for r in data]
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return _ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) / prev
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _f64_rref(arr: np.ndarray, tol: float, scale: float):
    m, n = arr.shape
    arr = arr.astype(np.complex128)
    pivots = []
    r = 0
    thresh = tol * scale
    for c in range(n):
        if r == m:
            break
        p = r + int(np.argmax(np.abs(arr[r:, c])))
        mag = abs(arr[p, c])
        if thresh / 8 <= mag <= thresh * 8:
            raise RankAmbiguityError(f"pivot {mag:.3e} lies in the ambiguity band", float(mag))
        if mag < thresh:
            arr[r:, c] = 0
            continue
        arr[[r, p]] = arr[[p, r]]
        arr[r] = arr[r] / arr[r, c]
        for i in range(m):
            if i != r:
                arr[i] = arr[i] - arr[i, c] * arr[r]
        pivots.append(c)
        r += 1
    return arr, pivots


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


# --- functional surface ----------------------------------------------------------

def add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def sub(a: Matrix, b: Matrix) -> Matrix:
    return a - b


def mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def conj_transpose(a: Matrix) -> Matrix:
    return a.H


def rank(a: Matrix) -> int:
    return a.rank()


def det(a: Matrix):
    return a.det()


def inverse(a: Matrix) -> Matrix:
    return a.inverse()


def submatrix(a: Matrix, rows, cols) -> Matrix:
    return a.submatrix(rows, cols)


def replace_column(a: Matrix, i: int, b) -> Matrix:
    return a.replace_column(i, b)


def matrix_power(a: Matrix, p: int) -> Matrix:
    return a.power(p)


def hstack(*mats: Matrix) -> Matrix:
    """Concatenate matrices left to right."""
    if not mats:
        raise ValueError("nothing to stack")
    first = mats[0]
    tol = max(m.tol for m in mats)
    for m in mats[1:]:
        first._same(m)
        if m.nrows != first.nrows:
            raise DimensionError("hstack needs equal row counts")
    ncols = sum(m.ncols for m in mats)
    if first.backend == EXACT:
        data = tuple(sum((m._data[i] for m in mats), ()) for i in range(first.nrows))
        return Matrix._wrap(data, (first.nrows, ncols), EXACT, tol)
    return Matrix._wrap(np.hstack([m._data for m in mats]), (first.nrows, ncols), F64, tol)


def vstack(*mats: Matrix) -> Matrix:
    """Concatenate matrices top to bottom."""
    if not mats:
        raise ValueError("nothing to stack")
    first = mats[0]
    tol = max(m.tol for m in mats)
    for m in mats[1:]:
        first._same(m)
        if m.ncols != first.ncols:
            raise DimensionError("vstack needs equal column counts")
    nrows = sum(m.nrows for m in mats)
    if first.backend == EXACT:
        data = sum((m._data for m in mats), ())
        return Matrix._wrap(data, (nrows, first.ncols), EXACT, tol)
    return Matrix._wrap(np.vstack([m._data for m in mats]), (nrows, first.ncols), F64, tol)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of conformable blocks."""
    return vstack(*(hstack(*row) for row in grid))

