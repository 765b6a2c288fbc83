from fractions import Fraction

import pytest
from hypothesis import strategies as st

from eigenpolys.diffop import DiffOperator
from eigenpolys.hermite import hermite_operator


def laguerre_type() -> DiffOperator:
    # a_1 = 1 - x, a_2 = x: eigenvalues -n
    return DiffOperator.from_coeffs([[0], [1, -1], [0, 1]], name="laguerre")


def quartic() -> DiffOperator:
    # order 4 with lambda_n = n + n(n-1) + n(n-1)(n-2)(n-3), all distinct
    return DiffOperator.from_coeffs(
        [
            [0],
            [1, 1],
            [Fraction(-1, 3), 2, 1],
            [0, -1, 1],
            [1, 0, 0, Fraction(1, 2), 1],
        ],
        name="quartic",
    )


TEST_OPERATORS = {
    "hermite": hermite_operator,
    "laguerre": laguerre_type,
    "quartic": quartic,
}


@pytest.fixture(params=sorted(TEST_OPERATORS))
def operator(request) -> DiffOperator:
    return TEST_OPERATORS[request.param]()


small_fractions = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)
