from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from geprofi import QQ, PrimeField
from geprofi.errors import ShapeError
from geprofi.exactlin import Matrix, det, inverse_matrix, nullspace, rank, rref, row_space_contains, solve

small = st.integers(-6, 6)


def leibniz(rows):
    """Determinant straight from the permutation expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


@st.composite
def int_matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@st.composite
def square(draw, max_n=5, entries=small):
    n = draw(st.integers(1, max_n))
    return [[draw(entries) for _ in range(n)] for _ in range(n)]


@given(square(entries=st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))))
def test_det_matches_permutation_expansion_over_q(rows):
    assert det(Matrix(rows, QQ)) == leibniz([[Fraction(x) for x in r] for r in rows])


@given(square(), st.sampled_from([3, 7, 101]))
def test_det_mod_p_is_reduction_of_integer_det(rows, p):
    f = PrimeField(p)
    assert det(Matrix(rows, f)) == f(leibniz(rows))


@given(square(max_n=4), square(max_n=4))
def test_det_is_multiplicative(a, b):
    n = min(len(a), len(b))
    a = [r[:n] for r in a[:n]]
    b = [r[:n] for r in b[:n]]
    ma, mb = Matrix(a, QQ), Matrix(b, QQ)
    assert det(ma @ mb) == det(ma) * det(mb)


@given(int_matrices(), st.sampled_from(["Q", 5, 101]))
def test_rank_nullity_and_kernel(rows, fld):
    f = QQ if fld == "Q" else PrimeField(fld)
    m = Matrix(rows, f)
    ker = nullspace(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m @ v)
    if ker:
        assert rank(Matrix(ker, f)) == len(ker)


@given(int_matrices())
def test_rank_agrees_between_bareiss_and_gauss_jordan(rows):
    m = Matrix(rows, QQ)
    assert rank(m) == len(rref(m)[1])


@given(int_matrices())
def test_rref_is_reduced(rows):
    red, piv = rref(Matrix(rows, QQ))
    for r, c in enumerate(piv):
        assert red[r, c] == 1
        assert all(red[i, c] == 0 for i in range(red.rows) if i != r)
    assert piv == sorted(piv)


@given(int_matrices(), st.data())
def test_solve_finds_a_solution_when_consistent(rows, data):
    m = Matrix(rows, QQ)
    x = [Fraction(data.draw(small)) for _ in range(m.cols)]
    b = m @ x
    y = solve(m, b)
    assert y is not None and m @ y == b


def test_solve_reports_inconsistency():
    assert solve(Matrix([[1, 0], [2, 0]], QQ), [1, 3]) is None


@given(square(max_n=4), st.sampled_from(["Q", 7]))
def test_inverse_round_trip(rows, fld):
    f = QQ if fld == "Q" else PrimeField(fld)
    m = Matrix(rows, f)
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse_matrix(m)
        return
    assert m @ inverse_matrix(m) == Matrix.identity(m.rows, f)


def test_transpose_and_shape_errors():
    m = Matrix([[1, 2, 3], [4, 5, 6]], QQ)
    assert m.T.T == m and m.T.rows == 3
    with pytest.raises(ShapeError):
        det(m)
    with pytest.raises(ShapeError):
        m @ m
    with pytest.raises(ShapeError):
        Matrix([[1, 2], [3]], QQ)


def test_row_space_membership():
    rows = [[Fraction(1), Fraction(2), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert row_space_contains(rows, [Fraction(1), Fraction(3), Fraction(1)])
    assert not row_space_contains(rows, [Fraction(0), Fraction(0), Fraction(1)])


def test_rref_mod_p_backends_agree(backend):
    f = PrimeField(13)
    rows = [[(3 * i + 5 * j * j + i * j) % 13 for j in range(7)] for i in range(6)]
    red, piv = rref(Matrix(rows, f))
    assert len(piv) == rank(Matrix(rows, f))
    for v in nullspace(Matrix(rows, f)):
        assert all(x == 0 for x in Matrix(rows, f) @ v)
