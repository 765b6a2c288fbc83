"""Exact polynomial eigenfunctions of differential operators, their banded
recurrences, Geronimus transforms, and the determinant tests that decide
whether a transformed family can still be an eigenfamily."""

from .bispectral import (
    det_Delta,
    det_E,
    det_G,
    eigenvalue_bracket,
    necessary_condition,
    transform_coeffs,
)
from .darboux import (
    Bidiagonal,
    BidiagonalPair,
    GammaSequence,
    conjugate_by_T,
    geronimus_transform,
    load_bidiagonal,
    ul_factorize,
)
from .diffop import (
    DeltaTable,
    DiffOperator,
    apply_operator,
    delta_table,
    eigenvalue_difference,
    load_operator,
    spectrum,
)
from .eigenpoly import (
    CoeffTriangle,
    MTruncation,
    coefficient_triangle,
    eigenpoly_backsub,
    eigenpoly_explicit,
    enumerate_compositions,
    m_truncation,
    verify_eigen,
)
from .errors import (
    CapExceeded,
    DegreeViolation,
    DimensionMismatch,
    EigenpolyError,
    EigenvalueCollision,
    OrderZero,
    PaddingInsufficient,
    ParityError,
    ParseError,
    SingularPivot,
    SingularTruncation,
    ZeroGamma,
)
from .exact import Poly, Rational, det, format_rational, parse_rational, poly_arith, poly_derivative
from .hermite import (
    det_E_hermite_closed,
    gamma_sequence,
    hermite_coeff,
    hermite_operator,
    hermite_recurrence_matrix,
    s_value,
    sigma_h,
)
from .recurrence import (
    BandedHessenberg,
    fit_recurrence,
    hessenberg_apply,
    load_banded,
    polys_from_recurrence,
)

__version__ = "0.1.0"
