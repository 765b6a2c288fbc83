"""Exact rational scalars, dense polynomials and determinants.

Scalars are :class:`fractions.Fraction`, which already keeps every value
normalized (positive denominator, coprime parts).  This module adds the
``"p/q"`` text form used by all documents, an immutable dense polynomial
type and an exact determinant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm
from typing import Iterable, Sequence, Union

from .errors import ParseError

Rational = Fraction
Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (sign allowed on ``p`` only).

    Integers and Fractions pass through unchanged, which lets documents mix
    JSON numbers and strings.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient with ``binom(n, k) = 0`` outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def fact(n: int) -> int:
    return factorial(n)


class Poly:
    """Dense univariate polynomial over the rationals, ascending powers.

    The zero polynomial has no coefficients; otherwise the last stored
    coefficient is nonzero.  Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, value: Number) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeff(i)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-a for a in self._c)

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "Poly":
        c = Fraction(c)
        return Poly(c * a for a in self._c)

    def shift_degree(self, k: int = 1) -> "Poly":
        """Multiply by ``x**k``."""
        if not self._c:
            return self
        return Poly([0] * k + list(self._c))

    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        c = self._c
        # d^order x^j = j!/(j-order)! x^(j-order)
        return Poly(
            c[j] * (fact(j) // fact(j - order)) for j in range(order, len(c))
        )

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def to_strings(self) -> list[str]:
        return [format_rational(a) for a in self._c]

    @classmethod
    def from_strings(cls, items: Sequence) -> "Poly":
        return cls(parse_rational(s) for s in items)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for j in range(len(self._c) - 1, -1, -1):
            a = self._c[j]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if j == 0:
                body = format_rational(mag)
            else:
                mono = "x" if j == 1 else f"x^{j}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot treat {value!r} as a polynomial")


def poly_arith(lhs: Poly, rhs, kind: str) -> Poly:
    """Dispatch form of the ring operations: ``add``, ``sub``, ``mul``, ``scale``.

    For ``scale`` the right operand is the scalar.
    """
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "scale":
        return lhs.scale(rhs)
    raise ValueError(f"unknown kind {kind!r}")


def poly_derivative(p: Poly, order: int) -> Poly:
    return p.derivative(order)


def det(rows: Sequence[Sequence[Number]]) -> Fraction:
    """Exact determinant of a square rational matrix.

    Each row is scaled to integers, then fraction-free (Bareiss) elimination
    runs over Python ints; the scaling is divided back out at the end.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    scale = 1
    a = []
    for r in rows:
        fr = [Fraction(v) for v in r]
        d = 1
        for v in fr:
            d = lcm(d, v.denominator)
        scale *= d
        a.append([int(v * d) for v in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)
