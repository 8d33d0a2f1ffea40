"""A cosine sequence is fixed by its value at 1: C(n) = T_n(C(1)).

T_n has exact integer coefficients from the binomial(n, 2k) expansion.
The sum of their absolute values bounds ||T_n(y)|| for ||y|| <= M, which is
how a bound on [-1, 1] propagates to every bounded interval.
"""
import numpy as np

from cosinelab import (cheb_coeffs, cheb_explicit, cheb_norm_bound, cheb_recurrence,
                       extend_cosine_sequence, matrix_cos, operator_norm)

for n in range(6):
    print(f"T_{n}: coefficients (x^0 .. x^n) = {cheb_coeffs(n).coeffs}")

# %% three ways to get T_5(0.3)
x = 0.3
print(cheb_explicit(5, x).real, cheb_recurrence(5, x).real, np.cos(5 * np.arccos(x)))

# %% extend a matrix cosine sequence from C(1) alone
rng = np.random.default_rng(1)
a = rng.standard_normal((3, 3))
a /= np.linalg.norm(a, 2)
c1 = matrix_cos(a, 1.0)
for n in (2, 5, 10, 20):
    err = operator_norm(extend_cosine_sequence(c1, n) - matrix_cos(a, n))
    print(f"n = {n:2d}: ||T_n(C(1)) - C(n)|| = {err:.2e}")

# %% norm bound growth
for n in (4, 8, 16):
    print(f"sup ||T_{n}(y)|| over ||y|| <= 1.2 is at most {cheb_norm_bound(n, 1.2):.4g}")
