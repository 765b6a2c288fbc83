"""Differential operators with polynomial coefficients.

An operator of order ``N`` is ``sum_i a_i(x) d^i/dx^i`` with
``deg a_i <= i``.  The zeroth-order term is always normalized away so
that the constant polynomial is an eigenfunction with eigenvalue 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._docs import read_document
from .errors import DegreeViolation, OrderZero, ParseError
from .exact import Poly, binom, fact, format_rational


@dataclass(frozen=True)
class DiffOperator:
    """``coeffs[i]`` is the polynomial multiplying the i-th derivative.

    ``coeffs[0]`` is always zero.  ``coeffs == (Poly(),)`` is the zero
    operator of order 0, accepted here for degenerate experiments but
    rejected by :func:`load_operator`.
    """

    coeffs: tuple[Poly, ...]
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        for i, a in enumerate(coeffs):
            if a.degree > i:
                raise DegreeViolation(
                    f"deg(a_{i}) = {a.degree} exceeds {i}"
                )
        if not coeffs or not coeffs[0].is_zero():
            raise ValueError("a_0 must be the zero polynomial; use from_coeffs")
        if len(coeffs) > 1 and coeffs[-1].is_zero():
            raise ValueError("highest coefficient a_N is zero; trim it")

    @classmethod
    def from_coeffs(
        cls, coeffs: Sequence, name: str = "", allow_zero: bool = False
    ) -> "DiffOperator":
        """Build from ``a_0 .. a_N`` (Polys or coefficient lists).

        A constant ``a_0`` is dropped, which shifts every eigenvalue by the
        same amount; a note records the shift.  Trailing zero rows are trimmed.
        The zero operator (order 0) is refused unless ``allow_zero``.
        """
        polys = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        notes = []
        if not polys:
            raise OrderZero("no coefficients given")
        if polys[0].degree > 0:
            raise DegreeViolation(f"deg(a_0) = {polys[0].degree} exceeds 0")
        if not polys[0].is_zero():
            notes.append(
                f"a_0 = {format_rational(polys[0].coeff(0))} subtracted; "
                "eigenvalues shifted so that lambda_0 = 0"
            )
            polys[0] = Poly()
        for i, a in enumerate(polys):
            if a.degree > i:
                raise DegreeViolation(f"deg(a_{i}) = {a.degree} exceeds {i}")
        while len(polys) > 1 and polys[-1].is_zero():
            polys.pop()
        if len(polys) < 2 and not allow_zero:
            raise OrderZero("all a_i with i >= 1 vanish")
        return cls(tuple(polys), name=name, notes=tuple(notes))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def a(self, i: int, j: int) -> Fraction:
        """Coefficient of ``x**j`` in ``a_i``; zero beyond the order."""
        if i < 0 or i >= len(self.coeffs) or j < 0:
            return Fraction(0)
        return self.coeffs[i].coeff(j)

    def leading(self, i: int) -> Fraction:
        return self.a(i, i)

    def __call__(self, p: Poly) -> Poly:
        return apply_operator(self, p)


def load_operator(source) -> DiffOperator:
    """Load an operator document (mapping, JSON text or path).

    Schema: ``{"name": str?, "order": N, "coeffs": [[c00], [c10, c11], ...]}``
    with ascending ``"p/q"`` coefficients; rows missing at the end are zero.
    """
    doc = read_document(source, "operator document")
    if "coeffs" not in doc:
        raise ParseError("operator document lacks 'coeffs'")
    rows = doc["coeffs"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("'coeffs' must be a list of lists")
    polys = [Poly.from_strings(r) for r in rows]
    declared = doc.get("order")
    if declared is not None:
        if not isinstance(declared, int) or isinstance(declared, bool) or declared < 0:
            raise ParseError(f"bad order {declared!r}")
        if any(not p.is_zero() for p in polys[declared + 1:]):
            raise ParseError(
                f"coefficients given beyond declared order {declared}"
            )
        polys = polys[: declared + 1]
        polys += [Poly()] * (declared + 1 - len(polys))
    op = DiffOperator.from_coeffs(polys, name=str(doc.get("name", "")))
    if declared is not None and op.order < declared:
        op = DiffOperator(
            op.coeffs,
            name=op.name,
            notes=op.notes + (f"declared order {declared} reduced to {op.order}",),
        )
    return op


def operator_to_document(op: DiffOperator) -> dict:
    doc = {"order": op.order, "coeffs": [a.to_strings() for a in op.coeffs]}
    if op.name:
        doc = {"name": op.name, **doc}
    return doc


@dataclass(frozen=True)
class DeltaTable:
    """Triangle ``delta[n][k]`` for ``0 <= k <= n <= n_max``."""

    n_max: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __call__(self, n: int, k: int) -> Fraction:
        if k < 0 or k > n:
            return Fraction(0)
        if n > self.n_max:
            raise IndexError(f"delta table built to n={self.n_max}, asked {n}")
        return self.rows[n][k]

    @property
    def eigenvalues(self) -> tuple[Fraction, ...]:
        return tuple(row[0] for row in self.rows)


def delta_table(op: DiffOperator, n_max: int) -> DeltaTable:
    """``delta[n][k] = sum_{i=k}^{n} C(n, i) i! a_{i, i-k}``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    N = op.order
    rows = []
    for n in range(n_max + 1):
        row = []
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k, min(n, N) + 1):
                a = op.a(i, i - k)
                if a:
                    acc += binom(n, i) * fact(i) * a
            row.append(acc)
        rows.append(tuple(row))
    return DeltaTable(n_max, tuple(rows))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[Fraction, ...]
    distinct: bool

    def __getitem__(self, n: int) -> Fraction:
        return self.eigenvalues[n]

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigenvalue(op: DiffOperator, n: int) -> Fraction:
    return sum(
        (binom(n, i) * fact(i) * op.leading(i) for i in range(1, min(n, op.order) + 1)),
        Fraction(0),
    )


def spectrum(op: DiffOperator, n_max: int) -> Spectrum:
    """Eigenvalues ``lambda_0 .. lambda_{n_max}`` and whether they are usable.

    ``distinct`` is true when ``lambda_1, ..., lambda_{n_max}`` are pairwise
    different and none of them is 0 (= ``lambda_0``); this is what makes the
    monic eigenpolynomials unique.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    lams = tuple(eigenvalue(op, n) for n in range(n_max + 1))
    return Spectrum(lams, len(set(lams)) == len(lams))


def apply_operator(op: DiffOperator, p: Poly) -> Poly:
    out = Poly()
    for i in range(1, op.order + 1):
        ai = op.coeffs[i]
        if ai.is_zero():
            continue
        d = p.derivative(i)
        if not d.is_zero():
            out = out + ai * d
    return out


def eigenvalue_difference(op: DiffOperator, i: int, j: int) -> Fraction:
    """``lambda_j - lambda_i`` through cumulative binomial weights.

    Each leading coefficient ``a_{s,s}`` enters with weight
    ``s! * sum_{m=i}^{j-1} C(m, s-1)``.
    """
    if not 0 <= i < j:
        raise IndexError(f"need 0 <= i < j, got i={i}, j={j}")
    total = Fraction(0)
    for s in range(1, min(j, op.order) + 1):
        a = op.leading(s)
        if not a:
            continue
        weight = sum(binom(m, s - 1) for m in range(i, j))
        total += weight * fact(s) * a
    return total
