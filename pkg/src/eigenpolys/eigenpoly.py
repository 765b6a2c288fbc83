"""Monic eigenpolynomials of a differential operator.

Two independent routes produce the same coefficients:

* :func:`eigenpoly_backsub` solves the upper triangular system
  ``(M_{n+1} - lambda_n I) b = 0`` from the bottom row up, normalized by
  ``b_{n,n} = 1``.  This is the production path.
* :func:`eigenpoly_explicit` sums products of delta entries over all
  compositions of ``n - i``.  The term count grows like an N-step Fibonacci
  number, so it is capped and only used as a cross-check.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .diffop import DeltaTable, DiffOperator, apply_operator, delta_table, spectrum
from .errors import CapExceeded, DimensionMismatch, EigenvalueCollision
from .exact import Number, Poly

DEFAULT_CAP = 25


def default_cap() -> int:
    """Composition enumeration cap; the ``BSL_CAP`` environment variable wins."""
    raw = os.environ.get("BSL_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_CAP


@dataclass(frozen=True)
class CoeffTriangle:
    """Coefficients ``b[n][i]`` of a monic family ``P_0, ..., P_{n_max}``."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for n, r in enumerate(rows):
            if len(r) != n + 1 or r[n] != 1:
                raise DimensionMismatch(f"row {n} is not a monic degree-{n} polynomial")

    @classmethod
    def from_polys(cls, polys: Sequence[Poly]) -> "CoeffTriangle":
        rows = []
        for n, p in enumerate(polys):
            if p.degree != n or not p.is_monic():
                raise DimensionMismatch(f"P_{n} = {p} is not monic of degree {n}")
            rows.append(p.coeffs)
        return cls(tuple(rows))

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, i: int) -> Fraction:
        """``b_{n,i}``, zero when ``i > n`` or ``i < 0``."""
        if i > n or i < 0:
            return Fraction(0)
        if n > self.n_max or n < 0:
            raise IndexError(f"triangle built to n={self.n_max}, asked {n}")
        return self.rows[n][i]

    def poly(self, n: int) -> Poly:
        return Poly(self.rows[n])

    def polys(self) -> list[Poly]:
        return [Poly(r) for r in self.rows]


@dataclass(frozen=True)
class MTruncation:
    """Leading ``(n+1) x (n+1)`` block of the upper triangular delta matrix."""

    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    def dense(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def m_truncation(dt: DeltaTable, n: int) -> MTruncation:
    """Entry ``(m, m + k)`` is ``delta_{m+k}^{(k)}``; zero below the diagonal."""
    if n > dt.n_max:
        raise IndexError(f"delta table built to n={dt.n_max}, asked {n}")
    rows = []
    for m in range(n + 1):
        rows.append(
            tuple(dt(c, c - m) if c >= m else Fraction(0) for c in range(n + 1))
        )
    return MTruncation(n, tuple(rows))


def eigen_residual(mt: MTruncation, lam: Number, b: Sequence[Number]) -> list[Fraction]:
    """``(M_{n+1} - lam I) b`` for a coefficient vector ``b``."""
    size = mt.n + 1
    if len(b) != size:
        raise DimensionMismatch(f"need {size} coefficients, got {len(b)}")
    out = []
    for m in range(size):
        acc = -Fraction(lam) * b[m]
        row = mt.rows[m]
        for c in range(m, size):
            if row[c]:
                acc += row[c] * b[c]
        out.append(acc)
    return out


def _backsub(dt: DeltaTable, lams: Sequence[Fraction], N: int, n: int) -> list[Fraction]:
    lam_n = lams[n]
    b = [Fraction(0)] * (n + 1)
    b[n] = Fraction(1)
    for m in range(n - 1, -1, -1):
        pivot = lams[m] - lam_n
        if pivot == 0:
            raise EigenvalueCollision(
                f"lambda_{m} = lambda_{n} = {lam_n}; P_{n} is not unique"
            )
        acc = Fraction(0)
        for k in range(1, min(N, n - m) + 1):
            d = dt(m + k, k)
            if d:
                acc += d * b[m + k]
        b[m] = -acc / pivot
    return b


def eigenpoly_backsub(op: DiffOperator, n: int) -> Poly:
    """Monic ``P_n`` with ``L P_n = lambda_n P_n`` by back substitution."""
    if n < 0:
        raise IndexError("degree must be nonnegative")
    dt = delta_table(op, n)
    return Poly(_backsub(dt, dt.eigenvalues, op.order, n))


def coefficient_triangle(op: DiffOperator, n_max: int) -> CoeffTriangle:
    """All eigenpolynomials ``P_0 .. P_{n_max}`` sharing one delta table."""
    dt = delta_table(op, n_max)
    lams = dt.eigenvalues
    return CoeffTriangle(
        tuple(tuple(_backsub(dt, lams, op.order, n)) for n in range(n_max + 1))
    )


def _compositions(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, min(total, max_part) + 1):
        for rest in _compositions(total - first, max_part):
            yield (first,) + rest


def enumerate_compositions(total: int, max_part: int) -> list[tuple[int, ...]]:
    """Ordered tuples of positive integers ``<= max_part`` summing to ``total``."""
    if total < 1 or max_part < 1:
        raise ValueError("total and max_part must be positive")
    return list(_compositions(total, max_part))


def explicit_coefficient(
    dt: DeltaTable,
    lams: Sequence[Fraction],
    n: int,
    i: int,
    max_part: int,
) -> Fraction:
    """One coefficient ``b_{n,i}`` from the composition sum.

    Each part ``i_s`` of a composition contributes
    ``delta^{(i_s)}_{pos + i_s} / (lambda_n - lambda_pos)`` where ``pos``
    is the running index before that part (starting at ``i``).
    """
    if i == n:
        return Fraction(1)
    lam_n = lams[n]
    total = Fraction(0)
    for parts in _compositions(n - i, max_part):
        term = Fraction(1)
        pos = i
        for part in parts:
            num = dt(pos + part, part)
            if not num:
                term = Fraction(0)
                break
            den = lam_n - lams[pos]
            if den == 0:
                raise EigenvalueCollision(f"lambda_{pos} = lambda_{n}")
            term *= num / den
            pos += part
        total += term
    return total


def eigenpoly_explicit(
    op: DiffOperator, n: int, cap: int | None = None, max_part: int | None = None
) -> Poly:
    """``P_n`` from the explicit composition formula.

    ``max_part`` defaults to the operator order: parts larger than ``N``
    pick up a vanishing delta entry and contribute nothing.
    """
    cap = default_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")
    if n < 0:
        raise IndexError("degree must be nonnegative")
    dt = delta_table(op, n)
    lams = spectrum(op, n).eigenvalues
    # a collision makes some denominator vanish; report it up front
    if lams[n] in lams[:n]:
        raise EigenvalueCollision(f"lambda_{n} = {lams[n]} repeats an earlier eigenvalue")
    mp = max(op.order, 1) if max_part is None else max_part
    return Poly(explicit_coefficient(dt, lams, n, i, mp) for i in range(n + 1))


def verify_eigen(op: DiffOperator, p: Poly, lam: Number) -> bool:
    return apply_operator(op, p) == p.scale(lam)
