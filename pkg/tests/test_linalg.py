from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverforge import linalg

small_ints = st.integers(-4, 4)


def matrices(rows=st.integers(1, 5), cols=None):
    @st.composite
    def build(draw):
        r = draw(rows)
        c = draw(cols) if cols is not None else r
        return [[draw(small_ints) for _ in range(c)] for _ in range(r)]

    return build()


def _sym(m):
    return sympy.Matrix(m)


@settings(max_examples=80, deadline=None)
@given(matrices(cols=st.integers(1, 5)))
def test_rref_and_rank_match_sympy(m):
    red, pivots = linalg.rref(m)
    s_red, s_piv = _sym(m).rref()
    assert list(pivots) == list(s_piv)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in red] == s_red.tolist()
    assert linalg.rank(m) == _sym(m).rank()


@settings(max_examples=80, deadline=None)
@given(matrices(cols=st.integers(1, 5)))
def test_nullspace_is_a_basis_of_the_kernel(m):
    ncols = len(m[0])
    ker = linalg.nullspace(m, ncols)
    assert len(ker) == ncols - _sym(m).rank()
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_determinant_inverse_charpoly(m):
    s = _sym(m)
    assert linalg.determinant(m) == s.det()
    if s.det() != 0:
        inv = linalg.inverse(m)
        assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in inv] == s.inv().tolist()
    else:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(m)
    lam = sympy.symbols("lam")
    expected = sympy.Poly(s.charpoly(lam).as_expr(), lam).all_coeffs()
    assert linalg.charpoly(m) == [Fraction(int(c)) for c in expected]


@settings(max_examples=80, deadline=None)
@given(matrices(cols=st.integers(1, 5)))
def test_smith_invariants_match_sympy(m):
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert linalg.smith_invariants(m) == diag


@settings(max_examples=120, deadline=None)
@given(matrices(rows=st.integers(1, 5)))
def test_symmetric_classification_agrees_with_eigenvalues(m):
    n = len(m)
    s = [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]
    kind, corank = linalg.symmetric_pivot_classification(s)
    ev = np.linalg.eigvalsh(np.array(s, dtype=float))
    tol = 1e-9
    if kind == "positive-definite":
        assert ev.min() > tol
    elif kind == "positive-semidefinite":
        assert ev.min() > -tol
        assert int(np.sum(np.abs(ev) <= tol)) == corank
    else:
        assert ev.min() < -tol


def test_leading_minors_and_primitive_vectors():
    assert linalg.leading_minors([[2, -1], [-1, 2]]) == [2, 3]
    assert linalg.primitive_integer_vector([Fraction(-1, 2), Fraction(1, 3)]) == [3, -2]
    assert linalg.primitive_integer_vector([0, Fraction(2, 4), 1]) == [0, 1, 2]
