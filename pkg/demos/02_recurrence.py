"""The same family seen from the index side: a banded recurrence.

Run:  python demos/02_recurrence.py
"""
from fractions import Fraction

from eigenpolys import (
    BandedHessenberg,
    coefficient_triangle,
    fit_recurrence,
    hermite_operator,
    hermite_recurrence_matrix,
    hessenberg_apply,
    polys_from_recurrence,
)
from eigenpolys.exact import Poly

# A tridiagonal matrix with zero diagonal and subdiagonal n/2 generates the
# same polynomials as the differential operator of demo 01.
J = hermite_recurrence_matrix(12)
from_recurrence = polys_from_recurrence(J, 12)
from_operator = coefficient_triangle(hermite_operator(), 12).polys()
print("recurrence family == eigenfamily:", from_recurrence == from_operator)

# Each row of J, applied to the family, is multiplication by x.
print("row 5 check:", hessenberg_apply(J, from_recurrence, 5) == Poly.x() * from_recurrence[5])

# Going backwards: recover the recurrence from the polynomials alone.
fit = fit_recurrence(from_operator, p=1)
print("fitted p=1:", fit.ok, "alpha_{4,3} =", fit.matrix.alpha(4, 3))

# A wider band: p = 2 with a single nonzero coefficient alpha_{2,0} = 1.
J2 = BandedHessenberg.from_function(2, 5, lambda n, k: Fraction(1) if (n, k) == (2, 0) else 0)
for n, p in enumerate(polys_from_recurrence(J2, 5)):
    print(f"  P_{n} = {p}")

# A family that is not generated by any three-term recurrence: the fit
# reports the first row whose residual falls outside the band.
bent = [p + q for p, q in zip(from_operator[1:], from_operator)]
bent = [from_operator[0]] + bent
fit = fit_recurrence(bent, p=1)
print("P_n + P_{n-1} with p=1:", "ok" if fit.ok else f"fails at row {fit.failure[0]}, "
      f"component P_{fit.failure[1]} = {fit.failure[2]}")
