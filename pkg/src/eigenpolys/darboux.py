"""UL factorization, Geronimus transforms and conjugation by ``T``.

``T`` is the unit lower bidiagonal matrix with subdiagonal
``gamma_1, gamma_2, ...``; it maps a family ``P_n`` to
``P_n + gamma_n P_{n-1}``.  ``T^{-1}`` only exists as a formal table, so
``T J T^{-1}`` is computed entrywise from ``D T = T J`` and never through
an inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._docs import read_document
from .errors import (
    DimensionMismatch,
    PaddingInsufficient,
    ParseError,
    SingularPivot,
    SingularTruncation,
)
from .exact import Number, det, format_rational, parse_rational
from .recurrence import BandedHessenberg


@dataclass(frozen=True)
class GammaSequence:
    """``gamma_1 .. gamma_m``, indexed from 1; ``seq[0]`` is 0 by convention."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def of(cls, values: Sequence[Number]) -> "GammaSequence":
        return cls(tuple(values))

    @classmethod
    def constant(cls, value: Number, m: int) -> "GammaSequence":
        return cls((Fraction(value),) * m)

    def __getitem__(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(0)
        if n < 0 or n > len(self.values):
            raise IndexError(f"gamma_{n} requested, sequence has 1..{len(self.values)}")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)

    def product(self, start: int, stop: int) -> Fraction:
        """``gamma_start * ... * gamma_stop`` (empty product is 1)."""
        out = Fraction(1)
        for i in range(start, stop + 1):
            out *= self[i]
        return out

    def all_nonzero(self) -> bool:
        return all(self.values)


@dataclass(frozen=True)
class Bidiagonal:
    """Truncated bidiagonal matrix.

    ``kind == "upper"``: ``diag[i]`` at ``(i, i)`` and ``offdiag[i]`` at
    ``(i, i+1)``.  ``kind == "lower"``: ``offdiag[i]`` sits at ``(i+1, i)``.
    """

    kind: str
    diag: tuple[Fraction, ...]
    offdiag: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in ("upper", "lower"):
            raise DimensionMismatch(f"unknown bidiagonal kind {self.kind!r}")
        object.__setattr__(self, "diag", tuple(Fraction(v) for v in self.diag))
        object.__setattr__(self, "offdiag", tuple(Fraction(v) for v in self.offdiag))

    @property
    def size(self) -> int:
        """Largest square truncation fully determined by the stored entries."""
        return min(len(self.diag), len(self.offdiag) + 1)

    def dense(self, size: int | None = None) -> list[list[Fraction]]:
        size = self.size if size is None else size
        if size > self.size:
            raise PaddingInsufficient(f"factor known only to size {self.size}")
        out = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            out[i][i] = self.diag[i]
            if i + 1 < size:
                if self.kind == "upper":
                    out[i][i + 1] = self.offdiag[i]
                else:
                    out[i + 1][i] = self.offdiag[i]
        return out


def load_bidiagonal(source) -> Bidiagonal:
    """``{"kind": "upper"|"lower", "diag": [...], "offdiag": [...]}``."""
    doc = read_document(source, "bidiagonal document")
    try:
        return Bidiagonal(
            doc["kind"],
            tuple(parse_rational(v) for v in doc["diag"]),
            tuple(parse_rational(v) for v in doc["offdiag"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError("bidiagonal document needs kind, diag, offdiag") from exc


def bidiagonal_to_document(B: Bidiagonal) -> dict:
    return {
        "kind": B.kind,
        "diag": [format_rational(v) for v in B.diag],
        "offdiag": [format_rational(v) for v in B.offdiag],
    }


@dataclass(frozen=True)
class BidiagonalPair:
    """``J - C I = U L`` on rows ``0 .. n_max``.

    ``U`` has diagonal ``u_0 .. u_{n_max}`` and unit superdiagonal; ``L`` has
    unit diagonal and subdiagonal ``l_1 .. l_{n_max+1}``.
    """

    U: Bidiagonal
    L: Bidiagonal
    C: Fraction
    n_max: int

    @property
    def u(self) -> tuple[Fraction, ...]:
        return self.U.diag

    @property
    def l(self) -> tuple[Fraction, ...]:
        """``(l_1, l_2, ...)``; ``l[i-1]`` is ``l_i``."""
        return self.L.offdiag

    def reconstruct(self) -> BandedHessenberg:
        """``C I + U L`` on rows ``0 .. n_max`` from the closed entry formulas."""
        u, l, C = self.u, self.l, self.C
        rows = []
        for i in range(self.n_max + 1):
            diag = C + u[i] + l[i]
            rows.append((u[i] * l[i - 1], diag) if i else (diag,))
        return BandedHessenberg(1, tuple(rows))


def truncation_determinants(J: BandedHessenberg, C: Number, n_max: int) -> list[Fraction]:
    """``det(C I_n - J_n)`` for ``n = 1 .. n_max + 1``."""
    C = Fraction(C)
    dense = J.dense(n_max + 1)
    out = []
    for n in range(1, n_max + 2):
        out.append(
            det([[(C if i == j else 0) - dense[i][j] for j in range(n)] for i in range(n)])
        )
    return out


def ul_factorize(
    J: BandedHessenberg,
    C: Number,
    l1: Number,
    n_max: int | None = None,
    check_truncations: bool = False,
) -> BidiagonalPair:
    """Factor a tridiagonal ``J - C I = U L`` with free parameter ``l_1``.

    Matching entries row by row gives ``u_0 = alpha_00 - C - l_1`` and, for
    ``i >= 1``, ``u_i = alpha_{i,i-1} / l_i``,
    ``l_{i+1} = alpha_{i,i} - C - u_i``.  When ``l_i`` and
    ``alpha_{i,i-1}`` both vanish, ``u_i`` is free and is taken as 0.

    With ``check_truncations`` every ``det(C I_n - J_n)`` must be nonzero,
    the classical sufficient condition for a factorization to exist.  It is
    off by default: a free ``l_1`` often factors matrices that fail it (the
    Hermite matrix with ``C = 0`` has ``det J_1 = 0``).
    """
    if J.p != 1:
        raise DimensionMismatch(f"UL factorization needs a tridiagonal matrix, p = {J.p}")
    n_max = J.n_max if n_max is None else n_max
    if n_max > J.n_max:
        raise IndexError(f"matrix has rows 0..{J.n_max}, asked {n_max}")
    C = Fraction(C)
    if check_truncations:
        for n, d in enumerate(truncation_determinants(J, C, n_max), start=1):
            if d == 0:
                raise SingularTruncation(f"det(C I_{n} - J_{n}) = 0")
    l = [Fraction(l1)]
    u = [J.alpha(0, 0) - C - l[0]]
    for i in range(1, n_max + 1):
        sub = J.alpha(i, i - 1)
        li = l[i - 1]
        if li == 0:
            if sub != 0:
                raise SingularPivot(f"l_{i} = 0 but alpha_{i},{i - 1} = {sub}")
            ui = Fraction(0)
        else:
            ui = sub / li
        u.append(ui)
        l.append(J.alpha(i, i) - C - ui)
    U = Bidiagonal("upper", tuple(u), (Fraction(1),) * n_max)
    L = Bidiagonal("lower", (Fraction(1),) * (n_max + 2), tuple(l))
    return BidiagonalPair(U, L, C, n_max)


def _matmul(A: list[list[Fraction]], B: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(A)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for k in range(n):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(n):
                    if Bk[j]:
                        Oi[j] += a * Bk[j]
    return out


def geronimus_transform(
    factors: Sequence[Bidiagonal], C: Number, s: int, n_rows: int | None = None
) -> BandedHessenberg:
    """``C I + L^(p-s+1) ... L^(p) U L^(1) ... L^(p-s)`` on a trusted block.

    ``factors`` is ``[U, L^(1), ..., L^(p)]``.  A product of ``p + 1``
    truncated factors is only reliable on its first ``size - (p + 1)`` rows,
    where ``size`` is the smallest factor truncation; ``n_rows`` (default: all
    trusted rows) beyond that raises :class:`PaddingInsufficient`.
    """
    if len(factors) < 2:
        raise DimensionMismatch("need U and at least one lower factor")
    U, lowers = factors[0], list(factors[1:])
    if U.kind != "upper" or any(f.kind != "lower" for f in lowers):
        raise DimensionMismatch("factors must be [upper, lower, ..., lower]")
    p = len(lowers)
    if not 1 <= s <= p:
        raise IndexError(f"s must lie in 1..{p}, got {s}")
    size = min(f.size for f in factors)
    trusted = size - (p + 1)
    n_rows = trusted if n_rows is None else n_rows
    if n_rows > trusted or n_rows < 1:
        raise PaddingInsufficient(
            f"{n_rows} rows requested; factors of size {size} trust {trusted}"
        )
    order = lowers[p - s:] + [U] + lowers[: p - s]
    prod = order[0].dense(size)
    for f in order[1:]:
        prod = _matmul(prod, f.dense(size))
    C = Fraction(C)
    block = [
        [prod[i][j] + (C if i == j else 0) for j in range(n_rows)] for i in range(n_rows)
    ]
    return BandedHessenberg.from_dense(block, p)


def conjugate_by_T(
    J: BandedHessenberg, gammas: GammaSequence, n_max: int
) -> list[list[Fraction]]:
    """Rows ``0 .. n_max`` of ``T J T^{-1}`` as a dense square block.

    Comparing entries of ``D T = T J`` gives, for ``j <= i``,

        D[i][j] = J[i][j] + gamma_i J[i-1][j] - gamma_{j+1} D[i][j+1]

    with ``D[i][i+1] = 1``; each row is filled from the diagonal leftwards.
    Needs ``gamma_1 .. gamma_{n_max+1}``.
    """
    if n_max > J.n_max:
        raise IndexError(f"matrix has rows 0..{J.n_max}, asked {n_max}")
    if n_max + 1 > len(gammas):
        raise IndexError(f"need gamma_1..gamma_{n_max + 1}, have {len(gammas)}")
    size = n_max + 1
    D = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        g_i = gammas[i]
        right = Fraction(1)  # D[i][i+1]
        if i + 1 < size:
            D[i][i + 1] = right
        for j in range(i, -1, -1):
            val = J.entry(i, j)
            if i > 0 and g_i:
                val += g_i * J.entry(i - 1, j)
            val -= gammas[j + 1] * right
            D[i][j] = val
            right = val
    return D


def band_defect(D: Sequence[Sequence[Number]], p: int):
    """First entry below the ``p``-th subdiagonal that is nonzero, as ``(i, j, value)``."""
    for i, row in enumerate(D):
        for j in range(0, max(0, i - p)):
            if row[j]:
                return (i, j, Fraction(row[j]))
    return None


def is_banded(D: Sequence[Sequence[Number]], p: int) -> bool:
    return band_defect(D, p) is None
