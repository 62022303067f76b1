"""JSON matrix files.

Schema::

    {"rows": 2, "cols": 2, "backend": "exact",
     "entries": [["1/2", "0"], [{"re": "0", "im": "1"}, "-3"]]}

Exact entries are rational strings ``"p/q"`` (integers are also accepted) or
``{"re": ..., "im": ...}`` objects; f64 entries are numbers or ``{re, im}``
objects of numbers. A subspace file is a matrix file whose columns span the
subspace.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import DimensionError
from .matrix import DEFAULT_TOL, EXACT, F64, Matrix
from .scalar import GaussianRational, format_rational, parse_rational
from .subspace import Subspace

__all__ = [
    "MatrixFileError",
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps_matrix",
    "loads_matrix",
    "parse_matrix",
    "parse_subspace",
    "write_matrix",
]


class MatrixFileError(ValueError):
    """The file does not follow the matrix schema."""


def _exact_entry(v: Any):
    if isinstance(v, bool):
        raise MatrixFileError(f"boolean entry {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return parse_rational(v)
        except ValueError as exc:
            raise MatrixFileError(str(exc)) from None
    if isinstance(v, dict):
        if set(v) - {"re", "im"}:
            raise MatrixFileError(f"unexpected keys in complex entry {sorted(v)}")
        re_, im_ = (_exact_entry(v.get(key, "0")) for key in ("re", "im"))
        return GaussianRational.make(re_, im_)
    raise MatrixFileError(f"exact entries must be rational strings, got {v!r}")


def _f64_entry(v: Any) -> complex:
    if isinstance(v, bool):
        raise MatrixFileError(f"boolean entry {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, dict):
        if set(v) - {"re", "im"}:
            raise MatrixFileError(f"unexpected keys in complex entry {sorted(v)}")
        parts = [v.get(key, 0) for key in ("re", "im")]
        if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in parts):
            raise MatrixFileError(f"f64 complex parts must be numbers, got {v!r}")
        return complex(parts[0], parts[1])
    if isinstance(v, str):
        try:
            return complex(float(parse_rational(v)))
        except ValueError as exc:
            raise MatrixFileError(str(exc)) from None
    raise MatrixFileError(f"f64 entries must be numbers, got {v!r}")


def matrix_from_dict(doc: dict, backend: str | None = None, tol: float = DEFAULT_TOL) -> Matrix:
    """Build a matrix from a parsed document; ``backend`` overrides the file's tag."""
    if not isinstance(doc, dict) or "entries" not in doc:
        raise MatrixFileError("matrix document needs an 'entries' array")
    entries = doc["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise MatrixFileError("'entries' must be a list of rows")
    file_backend = doc.get("backend", EXACT)
    if file_backend not in (EXACT, F64):
        raise MatrixFileError(f"unknown backend {file_backend!r}")
    rows = doc.get("rows", len(entries))
    cols = doc.get("cols", len(entries[0]) if entries else 0)
    if len(entries) != rows:
        raise MatrixFileError(f"declared {rows} rows, found {len(entries)}")
    for r in entries:
        if len(r) != cols:
            raise MatrixFileError(f"inconsistent row length: expected {cols}, found {len(r)}")
    conv = _exact_entry if file_backend == EXACT else _f64_entry
    values = [[conv(v) for v in r] for r in entries]
    target = backend or file_backend
    try:
        if file_backend == F64 and target == EXACT:
            return Matrix(values, ncols=cols, backend=F64).to_exact()
        return Matrix(values, ncols=cols, backend=target, tol=tol)
    except DimensionError as exc:
        raise MatrixFileError(str(exc)) from None


def _encode_exact(v) -> Any:
    if isinstance(v, GaussianRational):
        return {"re": format_rational(v.re), "im": format_rational(v.im)}
    return format_rational(v)


def _encode_f64(v: complex) -> Any:
    if v.imag == 0:
        return float(v.real)
    return {"re": float(v.real), "im": float(v.imag)}


def matrix_to_dict(m: Matrix) -> dict:
    enc = _encode_exact if m.is_exact else _encode_f64
    return {
        "rows": m.nrows,
        "cols": m.ncols,
        "backend": m.backend,
        "entries": [[enc(v) for v in row] for row in m.tolist()],
    }


def dumps_matrix(m: Matrix) -> str:
    """Pretty JSON with one matrix row per line; byte-identical for equal exact matrices."""
    doc = matrix_to_dict(m)
    rows = ",\n    ".join(json.dumps(r) for r in doc["entries"])
    body = f"[\n    {rows}\n  ]" if doc["entries"] else "[]"
    return (f'{{\n  "rows": {doc["rows"]},\n  "cols": {doc["cols"]},\n'
            f'  "backend": {json.dumps(doc["backend"])},\n  "entries": {body}\n}}\n')


def loads_matrix(text: str, backend: str | None = None, tol: float = DEFAULT_TOL) -> Matrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON: {exc}") from None
    return matrix_from_dict(doc, backend, tol)


def parse_matrix(path, backend: str | None = None, tol: float = DEFAULT_TOL) -> Matrix:
    return loads_matrix(Path(path).read_text(), backend, tol)


def parse_subspace(path, backend: str | None = None, tol: float = DEFAULT_TOL) -> Subspace:
    """Subspace spanned by the columns of the matrix in ``path``; zero columns are dropped."""
    return Subspace(parse_matrix(path, backend, tol))


def write_matrix(path, m: Matrix) -> None:
    Path(path).write_text(dumps_matrix(m))
