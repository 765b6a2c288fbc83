"""Eigenpolynomials of a second-order operator, computed two ways.

Run:  python demos/01_eigenpolynomials.py
"""
from pathlib import Path

from eigenpolys import (
    delta_table,
    eigenpoly_backsub,
    eigenpoly_explicit,
    load_operator,
    spectrum,
    verify_eigen,
)

DATA = Path(__file__).parent / "data"

# An operator document lists a_0, a_1, a_2, ... as ascending coefficient
# strings.  Here a_1 = -2x and a_2 = 1.
H = load_operator(DATA / "hermite.json")
print(f"operator {H.name!r} of order {H.order}")

# The diagonal of the delta table is the spectrum; it must be free of
# repeats for the monic eigenpolynomials to be unique.
sp = spectrum(H, 8)
print("eigenvalues:", [str(v) for v in sp.eigenvalues], "distinct:", sp.distinct)

dt = delta_table(H, 6)
print("delta_6^(k), k = 0..6:", [str(dt(6, k)) for k in range(7)])

# Back substitution is the production path; the composition sum is an
# independent cross-check with exponentially many terms.
for n in range(7):
    p = eigenpoly_backsub(H, n)
    assert p == eigenpoly_explicit(H, n)
    assert verify_eigen(H, p, sp[n])
    print(f"P_{n} = {p}")

# The same machinery works for any admissible operator, e.g. a_1 = 1 - x, a_2 = x.
L = load_operator(DATA / "laguerre.json")
print("\nLaguerre-type spectrum:", [str(v) for v in spectrum(L, 5).eigenvalues])
print("P_4 =", eigenpoly_backsub(L, 4))
