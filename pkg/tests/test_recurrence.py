import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenpolys.bispectral import transform_coeffs
from eigenpolys.darboux import GammaSequence
from eigenpolys.eigenpoly import coefficient_triangle
from eigenpolys.errors import DimensionMismatch, ParseError
from eigenpolys.exact import Poly
from eigenpolys.hermite import (
    gamma_sequence,
    hermite_operator,
    hermite_recurrence_matrix,
    hermite_triangle,
)
from eigenpolys.recurrence import (
    BandedHessenberg,
    banded_to_document,
    expand_in_family,
    fit_recurrence,
    fit_recurrence_sweep,
    hessenberg_apply,
    load_banded,
    polys_from_recurrence,
)

from conftest import small_fractions

HALF = Fraction(1, 2)


def test_hermite_generation():
    polys = polys_from_recurrence(hermite_recurrence_matrix(5), 3)
    assert polys == [
        Poly.const(1),
        Poly.x(),
        Poly([-HALF, 0, 1]),
        Poly([0, Fraction(-3, 2), 0, 1]),
    ]


def test_zero_matrix_gives_monomials():
    J = BandedHessenberg.from_function(2, 8, lambda n, k: 0)
    assert polys_from_recurrence(J, 9) == [Poly.monomial(n) for n in range(10)]


def test_p2_example():
    J = BandedHessenberg.from_function(2, 3, lambda n, k: 1 if (n, k) == (2, 0) else 0)
    P = polys_from_recurrence(J, 3)
    # P_3 = x P_2 - alpha_{2,0} P_0 = x^3 - 1
    assert P[3] == Poly([-1, 0, 0, 1])


def test_generation_needs_rows():
    with pytest.raises(IndexError):
        polys_from_recurrence(hermite_recurrence_matrix(3), 5)


def test_hessenberg_apply_examples():
    J = hermite_recurrence_matrix(6)
    P = polys_from_recurrence(J, 6)
    assert hessenberg_apply(J, P, 2) == Poly.x() * P[2] == Poly([0, -HALF, 0, 1])
    Z = BandedHessenberg.from_function(1, 3, lambda n, k: 0)
    assert hessenberg_apply(Z, polys_from_recurrence(Z, 3), 0) == Poly.x()
    bad = BandedHessenberg.from_function(
        1, 6, lambda n, k: 7 if (n, k) == (2, 1) else J.alpha(n, k)
    )
    assert hessenberg_apply(bad, P, 2) != Poly.x() * P[2]
    with pytest.raises(IndexError):
        hessenberg_apply(J, P, 6)


banded = st.integers(1, 3).flatmap(
    lambda p: st.integers(p + 2, 15).flatmap(
        lambda n_max: st.tuples(
            st.just(p),
            st.tuples(
                *[st.lists(small_fractions, min_size=min(n, p) + 1, max_size=min(n, p) + 1)
                  for n in range(n_max + 1)]
            ),
        )
    )
).map(lambda t: BandedHessenberg(t[0], t[1]))


@settings(max_examples=40, deadline=None)
@given(banded)
def test_fit_round_trip(J):
    polys = polys_from_recurrence(J, J.n_max + 1)
    fit = fit_recurrence(polys, J.p)
    assert fit.ok and fit.matrix == J
    for n in range(J.n_max + 1):
        assert hessenberg_apply(J, polys, n) == Poly.x() * polys[n]


def test_fit_hermite():
    fit = fit_recurrence(hermite_triangle(20).polys(), 1)
    assert fit and fit.matrix == hermite_recurrence_matrix(19)


def test_fit_geronimus_family():
    g = gamma_sequence(1, 25)
    family = transform_coeffs(hermite_triangle(25), g).polys()
    assert fit_recurrence(family, 1).ok


def test_fit_constant_gamma_fails():
    family = transform_coeffs(hermite_triangle(25), GammaSequence.constant(1, 25)).polys()
    fit = fit_recurrence(family, 1)
    assert not fit.ok
    n, k, residual = fit.failure
    assert n <= 3 and k < n - 1 and residual != 0


def test_fit_sweep_reports_each_p():
    family = transform_coeffs(hermite_triangle(20), GammaSequence.constant(1, 20)).polys()
    sweep = fit_recurrence_sweep(family, 3)
    assert sorted(sweep) == [0, 1, 2, 3]
    assert not sweep[0].ok and not sweep[1].ok


def test_fit_rejects_bad_family():
    with pytest.raises(DimensionMismatch):
        fit_recurrence([Poly.const(1), Poly([0, 2]), Poly.monomial(2)], 0)
    with pytest.raises(DimensionMismatch):
        fit_recurrence([Poly.const(1), Poly.x()], 1)


def test_bispectral_consistency():
    rec = polys_from_recurrence(hermite_recurrence_matrix(40), 40)
    assert rec == coefficient_triangle(hermite_operator(), 40).polys()


@given(st.lists(small_fractions, max_size=8).map(Poly))
def test_expand_in_family_reconstructs(q):
    basis = hermite_triangle(8).polys()
    c = expand_in_family(q, basis)
    total = Poly()
    for k, ck in enumerate(c):
        total = total + basis[k].scale(ck)
    assert total == q


def test_document_round_trip():
    J = BandedHessenberg.from_function(2, 6, lambda n, k: Fraction(n - 2 * k, 3))
    text = json.dumps(banded_to_document(J))
    assert load_banded(text) == J


def test_load_padded_rows():
    doc = {"p": 2, "rows": [{"n": 0, "alpha": ["0", "0", "1"]}, {"n": 1, "alpha": ["0", "1/2", "0"]}]}
    J = load_banded(doc)
    assert J.rows == ((1,), (HALF, 0))


@pytest.mark.parametrize(
    "doc",
    [
        {"p": 1, "rows": [{"n": 0, "alpha": ["0"]}, {"n": 2, "alpha": ["0", "0"]}]},
        {"p": 1, "rows": [{"n": 0, "alpha": ["1", "0"]}]},
        {"p": -1, "rows": []},
        {"rows": []},
        "[1]",
    ],
)
def test_load_banded_errors(doc):
    with pytest.raises(ParseError):
        load_banded(doc)
