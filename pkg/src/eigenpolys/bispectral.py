"""Linear transforms ``P_n -> P_n + gamma_n P_{n-1}`` and the determinants
used to decide whether the transformed family can still be an
eigenfamily of a finite-order operator.

All determinants here share one shape: a special first row over a block
whose rows are coefficients ``b_{c, r}`` with a unit subdiagonal, so each
is assembled by :func:`_coefficient_block` and evaluated exactly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .darboux import GammaSequence
from .diffop import DiffOperator, eigenvalue_difference
from .eigenpoly import CoeffTriangle
from .errors import DimensionMismatch
from .exact import Number, binom, det, fact


def transform_coeffs(b: CoeffTriangle, gammas: GammaSequence) -> CoeffTriangle:
    """``b1[n][i] = b[n][i] + gamma_n b[n-1][i]``, rows ``0 .. b.n_max``."""
    if len(gammas) < b.n_max:
        raise DimensionMismatch(
            f"need gamma_1..gamma_{b.n_max}, have {len(gammas)}"
        )
    rows = [b.rows[0]]
    for n in range(1, b.n_max + 1):
        g = gammas[n]
        rows.append(tuple(b(n, i) + g * b(n - 1, i) for i in range(n + 1)))
    return CoeffTriangle(tuple(rows))


def _coefficient_block(
    q: CoeffTriangle, base: int, order: int, first: Callable[[int], Fraction]
) -> list[list[Fraction]]:
    """``order x order`` matrix: row 0 is ``first(c)``, row ``r >= 1`` holds
    ``b_{base+1+c, base+r}`` (so 1 on the subdiagonal, 0 below it)."""
    if order == 0:
        return []
    rows = [[first(c) for c in range(order)]]
    for r in range(1, order):
        rows.append([q(base + 1 + c, base + r) for c in range(order)])
    return rows


def _check(n: int, k: int, n_max: int) -> None:
    if not 1 <= k <= n:
        raise IndexError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > n_max:
        raise IndexError(f"triangle built to n={n_max}, asked {n}")


def g_matrix(b: CoeffTriangle, lambdas: Sequence[Number], n: int, k: int):
    _check(n, k, b.n_max)
    base = n - k
    lam = [Fraction(v) for v in lambdas]
    return _coefficient_block(
        b, base, k, lambda c: (lam[base] - lam[base + 1 + c]) * b(base + 1 + c, base)
    )


def det_G(b: CoeffTriangle, lambdas: Sequence[Number], n: int, k: int) -> Fraction:
    """Order-``k`` determinant whose first row is
    ``(lambda_{n-k} - lambda_{n-k+j}) b_{n-k+j, n-k}``, ``j = 1..k``.

    For a true eigenfamily this equals ``(-1)^k delta_n^{(k)}``.
    """
    if len(lambdas) <= n:
        raise IndexError(f"need lambda_0..lambda_{n}")
    return det(g_matrix(b, lambdas, n, k))


def delta_matrix(q: CoeffTriangle, n: int, k: int, s: int):
    _check(n, k, q.n_max)
    if s < 1:
        raise IndexError("s must be positive")
    base = n - k

    def first(c):
        weight = sum(binom(m, s - 1) for m in range(base, base + c + 1))
        return weight * q(base + 1 + c, base)

    return _coefficient_block(q, base, k, first)


def det_Delta(q: CoeffTriangle, n: int, k: int, s: int) -> Fraction:
    """Order-``k`` determinant with first row
    ``[C(n-k, s-1) + ... + C(n-k+j-1, s-1)] q_{n-k+j, n-k}``, ``j = 1..k``."""
    return det(delta_matrix(q, n, k, s))


def det_E(q: CoeffTriangle, n: int, k: int, s: int) -> Fraction:
    """``E_{k,n,s}``: order ``k - s - 1``, entries ``q_{base+1+c, base+r}``
    with ``base = n - k + s + 1``; order 0 gives 1."""
    if not 0 <= s <= k - 1:
        raise IndexError(f"need 0 <= s <= k-1, got k={k}, s={s}")
    if k > n or n > q.n_max:
        raise IndexError(f"bad indices n={n}, k={k} for triangle to {q.n_max}")
    order = k - s - 1
    base = n - k + s + 1
    return det(_coefficient_block(q, base, order, lambda c: q(base + 1 + c, base)))


def gamma_weighted_E(
    q: CoeffTriangle, gammas: GammaSequence, n: int, k: int, j: int,
    E: Callable[[int], Fraction] | None = None,
) -> Fraction:
    """``sum_{r=1}^{k-j} gamma_{n-k+j+1} ... gamma_{n-k+j+r} E_{k,n,j+r-1}``."""
    E = E or (lambda s: det_E(q, n, k, s))
    start = n - k + j + 1
    total = Fraction(0)
    prod = Fraction(1)
    for r in range(1, k - j + 1):
        prod *= gammas[start + r - 1]
        if not prod:
            break
        total += prod * E(j + r - 1)
    return total


def delta_transform_correction(
    q: CoeffTriangle, gammas: GammaSequence, n: int, k: int, s: int
) -> Fraction:
    """Predicted ``Delta(transformed) - Delta(original)`` for weight index ``s``."""
    _check(n, k, q.n_max)
    cache: dict[int, Fraction] = {}

    def E(t):
        if t not in cache:
            cache[t] = det_E(q, n, k, t)
        return cache[t]

    total = Fraction(0)
    for j in range(k):
        coeff = q(n - k + j, n - k)
        if not coeff:
            continue
        w = binom(n - k + j, s - 1)
        if not w:
            continue
        total += (-1) ** j * w * coeff * gamma_weighted_E(q, gammas, n, k, j, E)
    return total


def eigenvalue_bracket(op: DiffOperator, m: int) -> Fraction:
    """``sum_{s=1}^{min(m+1, N)} C(m, s-1) s! a_{s,s}``, which is ``lambda_{m+1} - lambda_m``."""
    return sum(
        (binom(m, s - 1) * fact(s) * op.leading(s) for s in range(1, min(m + 1, op.order) + 1)),
        Fraction(0),
    )


def necessary_condition(
    op: DiffOperator, b: CoeffTriangle, gammas: GammaSequence, n: int, k: int
) -> Fraction:
    """Value that must vanish when the transformed family is an eigenfamily,
    with the same eigenvalues, of an operator of order below ``k``.

        sum_{j=0}^{k-1} (-1)^j (lambda_{m+1} - lambda_m) b_{m, n-k}
            sum_r gamma_{m+1} ... gamma_{m+r} E_{k,n,j+r-1},   m = n-k+j

    A nonzero value at some ``n >= k`` therefore excludes every such
    operator of order ``< k``.
    """
    _check(n, k, b.n_max)
    if len(gammas) < n:
        raise DimensionMismatch(f"need gamma_1..gamma_{n}, have {len(gammas)}")
    cache: dict[int, Fraction] = {}

    def E(t):
        if t not in cache:
            cache[t] = det_E(b, n, k, t)
        return cache[t]

    total = Fraction(0)
    for j in range(k):
        m = n - k + j
        coeff = b(m, n - k)
        if not coeff:
            continue
        bracket = eigenvalue_bracket(op, m)
        assert bracket == eigenvalue_difference(op, m, m + 1)
        if not bracket:
            continue
        total += (-1) ** j * bracket * coeff * gamma_weighted_E(b, gammas, n, k, j, E)
    return total
