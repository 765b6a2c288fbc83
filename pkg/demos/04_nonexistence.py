"""No finite-order operator for the Geronimus-transformed Hermite family.

The determinant condition must vanish at every (n, k) for an operator of
order below k to exist.  For the Hermite case it reduces to -2 Sigma_H(n, k),
which is evaluated here three independent ways.

Run:  python demos/04_nonexistence.py
"""
from fractions import Fraction

from eigenpolys import gamma_sequence, hermite_operator, necessary_condition, sigma_h
from eigenpolys.hermite import hermite_triangle, sigma_row

H = hermite_operator()
b = hermite_triangle(12)
g = gamma_sequence(1, 12)

print("condition at (4, 3):", necessary_condition(H, b, g, 4, 3))
print("-2 * Sigma_H(4, 3):  ", -2 * sigma_h(4, 3, 1, "bruteforce"))

print("\n n  k  bruteforce  sum  closed")
for n in range(4, 13, 2):
    for k in range(3, n + 1, 2):
        row = sigma_row(n, k, 1)
        print(f"{n:2} {k:2}  {row['sigma_bruteforce']}  {row['sigma_sum']}  {row['sigma_closed']}")

# The product-formula ("closed") value matches the others in magnitude; its
# sign differs by (-1)^((k-1)/2).  Nonvanishing is what matters.
assert all(
    sigma_h(n, k, 1) != 0 and abs(sigma_h(n, k, 1)) == abs(sigma_h(n, k, 1, "closed"))
    for n in range(4, 25, 2) for k in range(3, n + 1, 2)
)
print("\nSigma_H(n, k) != 0 for all even n, odd k, 3 <= k <= n <= 24")

# gamma_1 only scales the value.
print("gamma_1 = 2/3:", sigma_h(6, 3, Fraction(2, 3)), "=", sigma_h(6, 3, 1) / Fraction(2, 3))
