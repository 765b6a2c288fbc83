"""Geronimus transforms of the Hermite matrix.

Factor J - C I = U L, swap the factors, and compare with conjugating J by
the bidiagonal T that sends P_n to P_n + gamma_n P_{n-1}.

Run:  python demos/03_geronimus_hermite.py
"""
from eigenpolys import (
    BandedHessenberg,
    GammaSequence,
    conjugate_by_T,
    fit_recurrence,
    gamma_sequence,
    geronimus_transform,
    hermite_recurrence_matrix,
    polys_from_recurrence,
    transform_coeffs,
    ul_factorize,
)
from eigenpolys.darboux import band_defect
from eigenpolys.hermite import hermite_triangle

N = 12
J = hermite_recurrence_matrix(N + 2)

# l_1 is a free parameter of the factorization; it becomes gamma_1.
pair = ul_factorize(J, C=0, l1=1)
print("u:", [str(v) for v in pair.u[:6]])
print("l:", [str(v) for v in pair.l[:6]])
print("C I + U L == J:", pair.reconstruct() == J)

# Swapping the factors gives the transformed (still tridiagonal) matrix.
J1 = geronimus_transform([pair.U, pair.L], C=0, s=1)
gammas = gamma_sequence(1, N + 1)
D = conjugate_by_T(J, gammas, N)
print("T J T^-1 == L U on the trusted block:", D == J1.dense())

# The new matrix generates exactly the transformed family.
family = transform_coeffs(hermite_triangle(N), gammas)
print("generated == transformed:",
      polys_from_recurrence(BandedHessenberg.from_dense(D, 1), N) == family.polys())
for n in range(4):
    print(f"  Q_{n} = {family.poly(n)}")

# Any other choice of gamma breaks the band: a constant sequence already
# puts a nonzero entry on the second subdiagonal.
bad = conjugate_by_T(J, GammaSequence.constant(1, N + 1), N)
print("constant gamma, first entry off the band:", band_defect(bad, 1))
print("fit with p=1:", fit_recurrence(
    transform_coeffs(hermite_triangle(N), GammaSequence.constant(1, N)).polys(), 1).failure)
