import os

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ginv import Matrix, Subspace
from ginv.scalar import GaussianRational, imag_part, real_part
from ginv.suites import reference_matrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def to_sympy(m: Matrix) -> sympy.Matrix:
    def conv(v):
        return sympy.Rational(int(real_part(v).numerator), int(real_part(v).denominator)) + sympy.I * sympy.Rational(
            int(imag_part(v).numerator), int(imag_part(v).denominator))
    return sympy.Matrix(m.nrows, m.ncols, [conv(v) for row in m.tolist() for v in row])


def from_sympy(s: sympy.Matrix) -> Matrix:
    def conv(v):
        re, im = sympy.re(v), sympy.im(v)
        if im == 0:
            return f"{re.p}/{re.q}"
        return GaussianRational(f"{re.p}/{re.q}", f"{im.p}/{im.q}")
    return Matrix([[conv(s[i, j]) for j in range(s.cols)] for i in range(s.rows)], ncols=s.cols)


def int_matrices(min_n=1, max_n=4, lo=-3, hi=3, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        m = n if square else draw(st.integers(min_n, max_n))
        rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m))
        return Matrix(rows, ncols=n)
    return build()


@st.composite
def square_with_subspace(draw, min_n=1, max_n=4, complex_l=None):
    n = draw(st.integers(min_n, max_n))
    a = Matrix(draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
    d = draw(st.integers(0, n))
    cplx = draw(st.booleans()) if complex_l is None else complex_l
    if cplx:
        entry = st.builds(GaussianRational.make, st.integers(-2, 2), st.integers(-2, 2))
    else:
        entry = st.integers(-2, 2)
    cols = draw(st.lists(st.lists(entry, min_size=d, max_size=d), min_size=n, max_size=n))
    return a, Subspace(Matrix(cols, ncols=d))


@pytest.fixture(scope="session")
def ex41():
    return {name: reference_matrix(f"counterexample_{name}") for name in "ALXbFG"}


@pytest.fixture(scope="session")
def ex51():
    return {name: reference_matrix(f"submatrix_{name}") for name in "AL"}


def Q(rows):
    """Exact matrix from nested rows of ints or ``"p/q"`` strings."""
    return Matrix(rows)
