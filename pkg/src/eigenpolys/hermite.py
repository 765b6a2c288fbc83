"""Hermite polynomials and their Geronimus transforms.

The monic Hermite family is the eigenfamily of ``-2x d/dx + d^2/dx^2``
(eigenvalues ``-2n``) and obeys ``x H_n = H_{n+1} + (n/2) H_{n-1}``.
A sequence ``gamma`` makes ``H_n + gamma_n H_{n-1}`` satisfy a three-term
recurrence exactly when it comes from a UL factorization of the Jacobi
matrix, i.e. when ``gamma_m + (m-1)/(2 gamma_{m-1})`` is constant.

``sigma_h`` evaluates the quantity whose nonvanishing rules out a
finite-order operator for the transformed family, in three independent ways.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .bispectral import det_E
from .darboux import GammaSequence
from .diffop import DiffOperator
from .eigenpoly import CoeffTriangle, coefficient_triangle
from .errors import ParityError, ZeroGamma
from .exact import Number, binom, fact
from .recurrence import BandedHessenberg

SIGMA_MODES = ("bruteforce", "sum", "closed")


def hermite_operator() -> DiffOperator:
    return DiffOperator.from_coeffs([[0], [0, -2], [1]], name="hermite")


def hermite_recurrence_matrix(n_max: int) -> BandedHessenberg:
    """Tridiagonal matrix: zero diagonal, ``alpha_{n,n-1} = n/2``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return BandedHessenberg.from_function(
        1, n_max, lambda n, k: Fraction(n, 2) if k == n - 1 else 0
    )


def hermite_coeff(n: int, s: int) -> Fraction:
    """``b_{n, n-2s} = (-1)^s n! / (4^s (n-2s)! s!)``."""
    if s < 0 or 2 * s > n:
        raise IndexError(f"need 0 <= 2s <= n, got n={n}, s={s}")
    return Fraction((-1) ** s * fact(n), 4 ** s * fact(n - 2 * s) * fact(s))


@lru_cache(maxsize=None)
def hermite_triangle(n_max: int) -> CoeffTriangle:
    """Coefficients solved from the operator (not from the closed form)."""
    return coefficient_triangle(hermite_operator(), n_max)


def gamma_sequence(gamma1: Number, m_max: int, gamma2: Number | None = None) -> GammaSequence:
    """``gamma_1 .. gamma_{m_max}`` of a Geronimus transform of the Hermite family.

    Without ``gamma2`` the constrained sequence ``gamma_m gamma_{m+1} = -m/2``
    is produced (``gamma_2 = -1/(2 gamma_1)``).  With ``gamma2`` the general
    recurrence ``gamma_m = gamma_2 + 1/(2 gamma_1) - (m-1)/(2 gamma_{m-1})``
    is used.
    """
    g1 = Fraction(gamma1)
    if g1 == 0:
        raise ZeroGamma("gamma_1 must be nonzero")
    if m_max < 1:
        return GammaSequence(())
    if gamma2 is None:
        const = Fraction(0)
        g2 = -1 / (2 * g1)
    else:
        g2 = Fraction(gamma2)
        const = g2 + 1 / (2 * g1)
    vals = [g1, g2]
    for m in range(3, m_max + 1):
        prev = vals[-1]
        if prev == 0:
            raise ZeroGamma(f"gamma_{m - 1} = 0; gamma_{m} is undefined")
        vals.append(const - Fraction(m - 1, 2) / prev)
    return GammaSequence(tuple(vals[:m_max]))


def gamma_closed_form(gamma1: Number, m: int) -> Fraction:
    """Constrained ``gamma_m`` from running products of odd and even numbers."""
    g1 = Fraction(gamma1)
    if m < 1:
        raise IndexError("gamma is indexed from 1")
    half = m // 2
    odd = 1   # 3 * 5 * ... * (2h - 1) or (2h + 1) as needed
    even = 1  # 2 * 4 * ...
    if m % 2 == 0:
        for t in range(3, 2 * half, 2):
            odd *= t
        for t in range(2, 2 * half - 1, 2):
            even *= t
        return -Fraction(odd, even) / (2 * g1)
    for t in range(2, 2 * half + 1, 2):
        even *= t
    for t in range(3, 2 * half, 2):
        odd *= t
    return Fraction(even, odd) * g1


def det_E_hermite_closed(n: int, k: int, j: int, r: int) -> Fraction:
    """``E_{k,n,j+r-1}`` over the Hermite triangle; its order is ``k-j-r``."""
    order = k - j - r
    if order < 0 or r < 1 or j < 0 or k > n:
        raise IndexError(f"invalid indices n={n}, k={k}, j={j}, r={r}")
    if order % 2:
        return Fraction(0)
    return Fraction(fact(n), fact(n - order) * fact(order // 2) * 2 ** order)


def s_value(M: int, m: int, mode: str = "sum") -> Fraction:
    """``S_M(m)`` either summed term by term or from the product formula."""
    if m < 1 or M < 0:
        raise IndexError(f"need m >= 1 and M >= 0, got m={m}, M={M}")
    if mode == "sum":
        total = Fraction(0)
        for r in range(M + 1):
            total += (
                Fraction(-1, 4) ** r
                * Fraction(fact(2 * m + 2 * r - 1), fact(r) * fact(m + r - 1))
                * binom(m - 1 + M, m - 1 + r)
            )
        return total
    if mode == "closed":
        num = 1
        for t in range(1, M + 1):
            num *= 2 * t - 3
        s1 = Fraction(num, fact(M) * 2 ** M)
        return Fraction(fact(2 * m - 1), fact(m - 1)) * s1
    raise ValueError(f"unknown mode {mode!r}")


@lru_cache(maxsize=None)
def _hermite_E(n: int, order: int) -> Fraction:
    # E_{k,n,s} only depends on n and its order k - s - 1
    return det_E(hermite_triangle(n), n, order + 1, 0)


def _even_j_weight(n: int, k: int, j: int) -> Fraction:
    return Fraction((-1) ** (j // 2) * fact(n - k + j), 2 ** j * fact(n - k) * fact(j // 2))


def _sigma_bruteforce(n: int, k: int, g: GammaSequence) -> Fraction:
    total = Fraction(0)
    for j in range(0, k, 2):
        inner = Fraction(0)
        prod = Fraction(1)
        for r in range(1, k - j + 1):
            prod *= g[n - k + j + r]
            inner += prod * _hermite_E(n, k - j - r)
        total += _even_j_weight(n, k, j) * inner
    return total


def _sigma_sum(n: int, k: int, g: GammaSequence) -> Fraction:
    total = Fraction(0)
    for j in range(0, k, 2):
        inner = Fraction(0)
        for s in range(0, k - j, 2):
            prod = g.product(n - k + j + 1, n - s)
            inner += prod * Fraction(fact(n), fact(n - s) * fact(s // 2) * 2 ** s)
        total += _even_j_weight(n, k, j) * inner
    return total


def _check_closed(n: int, k: int) -> None:
    if n % 2 or not k % 2:
        raise ParityError(f"closed form needs n even and k odd, got n={n}, k={k}")


def sigma_closed(n: int, k: int, gamma1: Number) -> Fraction:
    """Product-formula value ``n! (-1)^((k+1)/2) S_{(k-1)/2}((n-k+1)/2)
    / (gamma_1 (n/2)! (n-k)! 2^n)``."""
    _check_closed(n, k)
    g1 = Fraction(gamma1)
    pre = Fraction((-1) ** ((k + 1) // 2) * fact(n), fact(n // 2) * fact(n - k) * 2 ** n) / g1
    return pre * s_value((k - 1) // 2, (n - k + 1) // 2, mode="closed")


def sigma_double_sum(n: int, k: int, gamma1: Number) -> Fraction:
    """The intermediate double-sum closed form that precedes :func:`sigma_closed`.

    ``n! / (gamma_1 (n-k)! 2^n) * sum_r (n-k+2r)! / (4^r ((n-k-1)/2 + r)! r!)
    * sum_{q <= (k-1)/2 - r} (-1)^(q+1) / (q! (n/2 - q)!)``
    """
    _check_closed(n, k)
    g1 = Fraction(gamma1)
    h = (k - 1) // 2
    total = Fraction(0)
    for r in range(h + 1):
        outer = Fraction(fact(n - k + 2 * r), 4 ** r * fact((n - k - 1) // 2 + r) * fact(r))
        inner = sum(
            (Fraction((-1) ** (q + 1), fact(q) * fact(n // 2 - q)) for q in range(h - r + 1)),
            Fraction(0),
        )
        total += outer * inner
    return Fraction(fact(n), fact(n - k) * 2 ** n) / g1 * total


def sigma_h(n: int, k: int, gamma1: Number, mode: str = "sum") -> Fraction:
    """Hermite reduction of the necessary condition for the constrained
    Geronimus sequence starting at ``gamma1``.

    ``bruteforce`` evaluates the ``E`` determinants on the Hermite triangle,
    ``sum`` substitutes their closed form, ``closed`` uses the ``S_M(m)``
    product formula (``n`` even, ``k`` odd only).  The closed form can differ
    from the other two in sign; compare magnitudes.
    """
    if not 1 <= k <= n:
        raise IndexError(f"need 1 <= k <= n, got n={n}, k={k}")
    if mode == "closed":
        return sigma_closed(n, k, gamma1)
    g = gamma_sequence(gamma1, n)
    if mode == "bruteforce":
        return _sigma_bruteforce(n, k, g)
    if mode == "sum":
        return _sigma_sum(n, k, g)
    raise ValueError(f"unknown mode {mode!r}")


def sigma_row(n: int, k: int, gamma1: Number) -> dict:
    """All available evaluations for one ``(n, k)`` grid cell."""
    brute = sigma_h(n, k, gamma1, "bruteforce")
    summed = sigma_h(n, k, gamma1, "sum")
    closed = sigma_closed(n, k, gamma1) if (n % 2 == 0 and k % 2 == 1) else None
    return {
        "n": n,
        "k": k,
        "sigma_bruteforce": brute,
        "sigma_sum": summed,
        "sigma_closed": closed,
        "nonzero": summed != 0,
    }
