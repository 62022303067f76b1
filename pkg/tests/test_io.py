import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import Q
from ginv import F64, Matrix, dumps_matrix, loads_matrix, parse_matrix, parse_subspace
from ginv.io import MatrixFileError, matrix_from_dict, write_matrix
from ginv.scalar import GaussianRational


def _doc(entries, **kw):
    return dict({"rows": len(entries), "cols": len(entries[0]) if entries else 0, "entries": entries}, **kw)


def test_rational_and_complex_entries():
    m = matrix_from_dict(_doc([["1/12", {"re": "0", "im": "1"}]]))
    assert m.tolist()[0][0] == mpq(1, 12)
    i = m.tolist()[0][1]
    assert isinstance(i, GaussianRational) and i * i == -1


def test_fixture_matches_displayed_matrix(ex41):
    assert ex41["A"] == Q([[3, 3, 3, 2], [1, 2, 2, 3], [2, 1, 1, 3], [0, 0, 0, 0]])


@pytest.mark.parametrize("doc, msg", [
    (_doc([["1/0"]]), "zero denominator"),
    (_doc([["x"]]), "malformed"),
    ({"rows": 2, "cols": 2, "entries": [["1", "2"], ["3"]]}, "row length"),
    ({"rows": 3, "cols": 1, "entries": [["1"]]}, "declared 3 rows"),
    ({"entries": [[True]]}, "boolean"),
    ({"entries": [[1.5]]}, "rational strings"),
    ({"backend": "quad", "entries": [["1"]]}, "backend"),
    ({"rows": 1}, "entries"),
])
def test_malformed_documents(doc, msg):
    with pytest.raises(MatrixFileError, match=msg):
        matrix_from_dict(doc)


def test_invalid_json():
    with pytest.raises(MatrixFileError):
        loads_matrix("{not json")


entries = st.one_of(
    st.fractions(max_denominator=100),
    st.builds(GaussianRational.make, st.fractions(max_denominator=9), st.fractions(max_denominator=9)),
)


@given(st.integers(0, 4), st.integers(1, 4), st.data())
def test_exact_roundtrip(m, n, data):
    rows = [[data.draw(entries) for _ in range(n)] for _ in range(m)]
    mat = Matrix(rows, ncols=n)
    text = dumps_matrix(mat)
    back = loads_matrix(text)
    assert back == mat and back.shape == mat.shape
    assert dumps_matrix(back) == text


def test_float_roundtrip():
    m = Matrix([[0.1, 2.5 + 1j], [-3.0, 1e-300]], backend=F64)
    back = loads_matrix(dumps_matrix(m))
    assert back.backend == F64
    assert (back.to_numpy() == m.to_numpy()).all()


def test_backend_override():
    doc = _doc([["1/2", "1/3"]])
    f = matrix_from_dict(doc, backend=F64)
    assert f.backend == F64 and abs(f.tolist()[0][1] - 1 / 3) < 1e-15
    e = matrix_from_dict(_doc([[0.5]], backend="f64"), backend="exact")
    assert e == Q([["1/2"]])


def test_dumps_is_one_row_per_line():
    text = dumps_matrix(Q([[1, 2], [3, 4]]))
    assert '["1", "2"],\n' in text
    assert json.loads(text)["entries"] == [["1", "2"], ["3", "4"]]


def test_subspace_files(tmp_path):
    path = tmp_path / "l.json"
    write_matrix(path, Q([[1, 0, 2], [0, 0, 0], [0, 1, 0]]))
    l = parse_subspace(path)
    assert l.dim == 2
    assert parse_matrix(path).shape == (3, 3)
