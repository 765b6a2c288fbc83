"""Banded Hessenberg matrices and the polynomial families they generate.

Row ``n`` of a matrix with ``p`` subdiagonals encodes

    x P_n = P_{n+1} + sum_{k=n-p}^{n} alpha[n][k] P_k,

with ``P_0 = 1`` and ``P_k = 0`` for negative ``k``.  The superdiagonal is
implicitly 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._docs import read_document
from .errors import DimensionMismatch, ParseError
from .exact import Number, Poly, format_rational, parse_rational


@dataclass(frozen=True)
class BandedHessenberg:
    """Rows ``0 .. n_max`` of a lower Hessenberg matrix with unit superdiagonal.

    ``rows[n]`` lists ``alpha_{n, max(0, n-p)} .. alpha_{n, n}``.
    """

    p: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("bandwidth must be nonnegative")
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.rows)
        for n, r in enumerate(rows):
            if len(r) != min(n, self.p) + 1:
                raise DimensionMismatch(
                    f"row {n} needs {min(n, self.p) + 1} entries, has {len(r)}"
                )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_function(cls, p: int, n_max: int, alpha) -> "BandedHessenberg":
        """Build from a callable ``alpha(n, k)`` evaluated inside the band."""
        return cls(
            p,
            tuple(
                tuple(Fraction(alpha(n, k)) for k in range(max(0, n - p), n + 1))
                for n in range(n_max + 1)
            ),
        )

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]], p: int) -> "BandedHessenberg":
        """Read the band out of a square truncation, checking its shape.

        The last row's superdiagonal lies outside a square truncation and is
        taken on trust.
        """
        size = len(rows)
        out = []
        for n in range(size):
            row = rows[n]
            for j in range(size):
                v = Fraction(row[j])
                if j == n + 1:
                    if v != 1:
                        raise DimensionMismatch(f"superdiagonal entry ({n},{j}) is {v}")
                elif j > n + 1 or j < n - p:
                    if v != 0:
                        raise DimensionMismatch(
                            f"entry ({n},{j}) = {v} lies outside bandwidth {p}"
                        )
            out.append(tuple(Fraction(row[k]) for k in range(max(0, n - p), n + 1)))
        return cls(p, tuple(out))

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def alpha(self, n: int, k: int) -> Fraction:
        """``alpha_{n,k}``; zero outside the band."""
        if n < 0 or n > self.n_max:
            raise IndexError(f"matrix has rows 0..{self.n_max}, asked {n}")
        lo = max(0, n - self.p)
        if k < lo or k > n:
            return Fraction(0)
        return self.rows[n][k - lo]

    def entry(self, i: int, j: int) -> Fraction:
        """Matrix entry including the unit superdiagonal."""
        if j == i + 1:
            return Fraction(1)
        return self.alpha(i, j)

    def dense(self, size: int | None = None) -> list[list[Fraction]]:
        size = self.n_max + 1 if size is None else size
        if size > self.n_max + 1:
            raise IndexError(f"only {self.n_max + 1} rows available")
        return [[self.entry(i, j) for j in range(size)] for i in range(size)]

    def truncate(self, n_max: int) -> "BandedHessenberg":
        if n_max > self.n_max:
            raise IndexError(f"only rows 0..{self.n_max} available")
        return BandedHessenberg(self.p, self.rows[: n_max + 1])


def load_banded(source) -> BandedHessenberg:
    """``{"p": int, "rows": [{"n": int, "alpha": [...]}, ...]}``.

    ``alpha`` lists ``alpha_{n,n-p} .. alpha_{n,n}``; for ``n < p`` either the
    short row or one padded with leading zeros is accepted.  Rows must cover
    ``0 .. n_max`` without gaps.
    """
    doc = read_document(source, "banded document")
    try:
        p = doc["p"]
        raw_rows = doc["rows"]
    except (KeyError, TypeError) as exc:
        raise ParseError("banded document needs 'p' and 'rows'") from exc
    if not isinstance(p, int) or p < 0:
        raise ParseError(f"bad bandwidth {p!r}")
    by_n = {}
    for entry in raw_rows:
        n = entry["n"]
        vals = [parse_rational(v) for v in entry["alpha"]]
        want = min(n, p) + 1
        if len(vals) == p + 1 and want < p + 1:
            if any(vals[: p + 1 - want]):
                raise ParseError(f"row {n}: entries before column 0 must be zero")
            vals = vals[p + 1 - want:]
        if len(vals) != want:
            raise ParseError(f"row {n}: expected {want} entries, got {len(vals)}")
        by_n[n] = tuple(vals)
    if sorted(by_n) != list(range(len(by_n))):
        raise ParseError("rows must cover 0..n_max without gaps")
    return BandedHessenberg(p, tuple(by_n[n] for n in range(len(by_n))))


def banded_to_document(J: BandedHessenberg) -> dict:
    return {
        "p": J.p,
        "rows": [
            {"n": n, "alpha": [format_rational(v) for v in row]}
            for n, row in enumerate(J.rows)
        ],
    }


def polys_from_recurrence(J: BandedHessenberg, n_max: int) -> list[Poly]:
    """``P_0 .. P_{n_max}``; needs matrix rows ``0 .. n_max - 1``."""
    if n_max - 1 > J.n_max:
        raise IndexError(
            f"P_{n_max} needs row {n_max - 1}; matrix has rows 0..{J.n_max}"
        )
    x = Poly.x()
    polys = [Poly.const(1)]
    for n in range(n_max):
        nxt = x * polys[n] - polys[n].scale(J.alpha(n, n))
        for k in range(max(0, n - J.p), n):
            a = J.alpha(n, k)
            if a:
                nxt = nxt - polys[k].scale(a)
        polys.append(nxt)
    return polys


def hessenberg_apply(J: BandedHessenberg, polys: Sequence[Poly], n: int) -> Poly:
    """Row ``n`` of ``J`` applied to the family: ``sum_k alpha_{n,k} P_k + P_{n+1}``."""
    if n + 1 >= len(polys):
        raise IndexError(f"need P_{n + 1}, family has {len(polys)} members")
    out = polys[n + 1]
    for k in range(max(0, n - J.p), n + 1):
        a = J.alpha(n, k)
        if a:
            out = out + polys[k].scale(a)
    return out


def expand_in_family(q: Poly, polys: Sequence[Poly]) -> list[Fraction]:
    """Coordinates of ``q`` in the monic basis ``P_0, P_1, ...``.

    Repeated leading-term elimination; ``deg q`` must be below ``len(polys)``.
    """
    if q.degree >= len(polys):
        raise IndexError(f"degree {q.degree} exceeds the basis")
    c = [Fraction(0)] * (max(q.degree, -1) + 1)
    r = q
    for d in range(q.degree, -1, -1):
        lead = r.coeff(d)
        if lead:
            c[d] = lead
            r = r - polys[d].scale(lead)
    return c


@dataclass(frozen=True)
class RecurrenceFit:
    """Outcome of :func:`fit_recurrence`.

    On success ``matrix`` holds the recovered coefficients.  On failure
    ``failure`` is ``(n, k, residual)``: the first row ``n`` whose expansion
    has a nonzero component ``residual`` along ``P_k`` with ``k < n - p``.
    """

    p: int
    matrix: BandedHessenberg | None
    failure: tuple[int, int, Fraction] | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self) -> bool:
        return self.ok


def fit_recurrence(polys: Sequence[Poly], p: int) -> RecurrenceFit:
    """Test whether a monic family obeys a ``(p+2)``-term recurrence.

    Row ``n`` expands ``x P_n - P_{n+1}`` in ``P_0 .. P_n``; the components
    inside the band are the recurrence coefficients and everything below it
    must vanish.  Rows ``0 .. len(polys) - 2`` are tested.
    """
    if p < 0:
        raise ValueError("bandwidth must be nonnegative")
    if len(polys) < p + 3:
        raise DimensionMismatch(f"need at least {p + 3} polynomials, got {len(polys)}")
    for n, P in enumerate(polys):
        if P.degree != n or not P.is_monic():
            raise DimensionMismatch(f"P_{n} = {P} is not monic of degree {n}")
    x = Poly.x()
    rows = []
    for n in range(len(polys) - 1):
        c = expand_in_family(x * polys[n] - polys[n + 1], polys)
        c += [Fraction(0)] * (n + 1 - len(c))
        lo = max(0, n - p)
        for k in range(lo):
            if c[k]:
                return RecurrenceFit(p, None, (n, k, c[k]))
        rows.append(tuple(c[lo: n + 1]))
    return RecurrenceFit(p, BandedHessenberg(p, tuple(rows)))


def fit_recurrence_sweep(polys: Sequence[Poly], p_max: int) -> dict[int, RecurrenceFit]:
    """Fit every bandwidth ``0 .. p_max`` the family is long enough for."""
    return {p: fit_recurrence(polys, p) for p in range(p_max + 1) if len(polys) >= p + 3}
