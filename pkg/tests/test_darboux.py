import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eigenpolys.bispectral import transform_coeffs
from eigenpolys.darboux import (
    Bidiagonal,
    GammaSequence,
    band_defect,
    bidiagonal_to_document,
    conjugate_by_T,
    geronimus_transform,
    is_banded,
    load_bidiagonal,
    truncation_determinants,
    ul_factorize,
)
from eigenpolys.errors import (
    DimensionMismatch,
    PaddingInsufficient,
    SingularPivot,
    SingularTruncation,
    ZeroGamma,
)
from eigenpolys.hermite import gamma_sequence, hermite_recurrence_matrix, hermite_triangle
from eigenpolys.recurrence import BandedHessenberg, polys_from_recurrence

from conftest import small_fractions

HALF = Fraction(1, 2)


def test_hermite_ul_example():
    pair = ul_factorize(hermite_recurrence_matrix(12), 0, 1)
    assert pair.u[:2] == (-1, HALF)
    assert pair.l[:2] == (1, -HALF)
    for i in range(1, 12):
        assert pair.l[i - 1] * pair.l[i] == -Fraction(i, 2)


def test_hermite_ul_matches_gamma_sequence():
    pair = ul_factorize(hermite_recurrence_matrix(20), 0, 1)
    assert pair.l == gamma_sequence(1, 21).values


def test_shift_factorization():
    J = BandedHessenberg.from_function(1, 6, lambda n, k: 0)
    pair = ul_factorize(J, 0, 0)
    assert not any(pair.u) and not any(pair.l)
    assert pair.reconstruct() == J


def test_singular_pivot():
    with pytest.raises(SingularPivot):
        ul_factorize(hermite_recurrence_matrix(5), 0, 0)


def test_singular_truncation_is_opt_in():
    J = hermite_recurrence_matrix(5)
    assert truncation_determinants(J, 0, 3)[0] == 0
    with pytest.raises(SingularTruncation):
        ul_factorize(J, 0, 1, check_truncations=True)
    ul_factorize(J, 1, 1, check_truncations=True)


def test_factorize_needs_tridiagonal():
    with pytest.raises(DimensionMismatch):
        ul_factorize(BandedHessenberg.from_function(2, 4, lambda n, k: 0), 0, 1)


tridiagonal = st.integers(2, 14).flatmap(
    lambda n_max: st.lists(
        st.tuples(small_fractions, small_fractions), min_size=n_max + 1, max_size=n_max + 1
    )
).map(lambda rows: BandedHessenberg(1, tuple((r[1],) if n == 0 else r for n, r in enumerate(rows))))


@settings(max_examples=60, deadline=None)
@given(tridiagonal, small_fractions, small_fractions)
def test_reconstruction(J, C, l1):
    try:
        pair = ul_factorize(J, C, l1)
    except SingularPivot:
        assume(False)
    assert pair.reconstruct() == J
    # the same identity through the dense factors: (UL)_{ij} = u_i L_{ij} + L_{i+1,j}
    size = J.n_max + 1
    L = pair.L.dense(size + 1)
    for i in range(size):
        for j in range(size):
            ul = pair.u[i] * L[i][j] + L[i + 1][j]
            assert ul + (C if i == j else 0) == J.entry(i, j)


def test_geronimus_p1_equals_conjugation():
    J = hermite_recurrence_matrix(32)
    pair = ul_factorize(J, 0, 1)
    J1 = geronimus_transform([pair.U, pair.L], 0, 1)
    assert J1.n_max == 30
    g = gamma_sequence(1, 31)
    D = conjugate_by_T(J, g, 30)
    assert is_banded(D, 1)
    assert D == J1.dense()
    for r in range(30):
        assert D[r][r] == g[r] - g[r + 1]
        if r >= 1:
            assert D[r][r - 1] == Fraction(r, 2) - g[r] * (g[r] - g[r + 1])


def test_geronimus_with_shift():
    J = hermite_recurrence_matrix(20)
    C = Fraction(2, 3)
    pair = ul_factorize(J, C, Fraction(-5, 7))
    J1 = geronimus_transform([pair.U, pair.L], C, 1)
    U, L = pair.U.dense(), pair.L.dense(pair.U.size)
    for i in range(J1.n_max + 1):
        for j in range(J1.n_max + 1):
            lu = sum(L[i][t] * U[t][j] for t in range(len(U)))
            assert J1.entry(i, j) == lu + (C if i == j else 0)


def test_identity_lower_factor():
    U = Bidiagonal("upper", (1,) * 8, (1,) * 7)
    L = Bidiagonal("lower", (1,) * 8, (0,) * 7)
    J1 = geronimus_transform([U, L], 3, 1)
    assert J1.dense() == [[(4 if i == j else 1 if j == i + 1 else 0) for j in range(6)] for i in range(6)]


@settings(max_examples=15, deadline=None)
@given(st.lists(small_fractions, min_size=22, max_size=22))
def test_geronimus_p2_against_sympy(vals):
    U = Bidiagonal("upper", vals[:8], (1,) * 7)
    L1 = Bidiagonal("lower", (1,) * 8, vals[8:15])
    L2 = Bidiagonal("lower", (1,) * 8, vals[15:22])
    C = Fraction(1, 3)
    J2 = geronimus_transform([U, L1, L2], C, 2)
    oracle = (
        sympy.Matrix(L1.dense()) * sympy.Matrix(L2.dense()) * sympy.Matrix(U.dense())
        + sympy.Rational(1, 3) * sympy.eye(8)
    )
    assert J2.n_max == 8 - 3 - 1
    for i in range(J2.n_max + 1):
        for j in range(J2.n_max + 1):
            assert J2.entry(i, j) == Fraction(str(oracle[i, j]))
    J1 = geronimus_transform([U, L1, L2], C, 1)
    oracle1 = (
        sympy.Matrix(L2.dense()) * sympy.Matrix(U.dense()) * sympy.Matrix(L1.dense())
        + sympy.Rational(1, 3) * sympy.eye(8)
    )
    for i in range(J1.n_max + 1):
        for j in range(J1.n_max + 1):
            assert J1.entry(i, j) == Fraction(str(oracle1[i, j]))


def test_geronimus_errors():
    U = Bidiagonal("upper", (1,) * 6, (1,) * 5)
    L = Bidiagonal("lower", (1,) * 6, (0,) * 5)
    with pytest.raises(PaddingInsufficient):
        geronimus_transform([U, L], 0, 1, n_rows=5)
    with pytest.raises(IndexError):
        geronimus_transform([U, L], 0, 2)
    with pytest.raises(DimensionMismatch):
        geronimus_transform([L, U], 0, 1)
    with pytest.raises(PaddingInsufficient):
        U.dense(7)


def test_conjugate_zero_gamma_is_identity():
    J = hermite_recurrence_matrix(10)
    assert conjugate_by_T(J, GammaSequence.constant(0, 11), 10) == J.dense()


def test_conjugate_constant_gamma_breaks_band():
    D = conjugate_by_T(hermite_recurrence_matrix(12), GammaSequence.constant(1, 13), 12)
    for r in range(11):
        assert D[r + 2][r] == -HALF
    assert band_defect(D, 1) == (2, 0, -HALF)


@settings(max_examples=30, deadline=None)
@given(small_fractions.filter(bool), small_fractions.filter(bool), st.integers(3, 12))
def test_general_gamma_stays_tridiagonal(g1, g2, n_max):
    try:
        g = gamma_sequence(g1, n_max + 1, gamma2=g2)
    except ZeroGamma:
        assume(False)
    D = conjugate_by_T(hermite_recurrence_matrix(n_max), g, n_max)
    assert is_banded(D, 1)


@settings(max_examples=30, deadline=None)
@given(small_fractions.filter(bool), st.integers(1, 6))
def test_violating_gamma_breaks_band(g1, m):
    g = gamma_sequence(g1, 9)
    vals = list(g.values)
    # perturb gamma_{m+1} so the defining recurrence fails at index m+1
    vals[m] += 1
    D = conjugate_by_T(hermite_recurrence_matrix(8), GammaSequence(tuple(vals)), 8)
    assert not is_banded(D, 1)


def test_transformed_family_coherence():
    g = gamma_sequence(1, 31)
    D = conjugate_by_T(hermite_recurrence_matrix(30), g, 30)
    rec = polys_from_recurrence(BandedHessenberg.from_dense(D, 1), 30)
    assert rec == transform_coeffs(hermite_triangle(30), g).polys()


def test_conjugate_needs_gammas():
    with pytest.raises(IndexError):
        conjugate_by_T(hermite_recurrence_matrix(5), GammaSequence.constant(1, 5), 5)


def test_bidiagonal_document_round_trip():
    B = Bidiagonal("lower", (1, 1, 1), (HALF, Fraction(-2, 3)))
    assert load_bidiagonal(json.dumps(bidiagonal_to_document(B))) == B
    assert B.dense() == [[1, 0, 0], [HALF, 1, 0], [0, Fraction(-2, 3), 1]]
