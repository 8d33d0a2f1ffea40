"""Matrix functions in the spectral-norm algebra.

Cosine by scaling and doubling, principal square root by Denman-Beavers,
and two spectral-radius estimates that can disagree with the norm.
"""
import numpy as np

from cosinelab import (matrix_cos, matrix_sqrt_newton, operator_norm,
                       spectral_radius_eig, spectral_radius_gelfand)

# %% A Jordan block: spectrum {1} but norm larger than 1
j = np.array([[1.0, 1.0], [0.0, 1.0]])
print("||J|| =", operator_norm(j), " rho(J) =", spectral_radius_eig(j))
print("Gelfand estimate:", spectral_radius_gelfand(j, k_max=12))

# %% cos(J) has the closed form [[cos 1, -sin 1], [0, cos 1]]
print("cos(J) =\n", matrix_cos(j, 1.0).real)
print("closed form:\n", np.array([[np.cos(1), -np.sin(1)], [0, np.cos(1)]]))

# %% cos is even by construction, and cos(0 a) is the identity
a = np.random.default_rng(0).standard_normal((4, 4))
print("even:", np.array_equal(matrix_cos(a, 0.3), matrix_cos(a, -0.3)))
print("C(0) = 1:", np.array_equal(matrix_cos(a, 0.0), np.eye(4)))

# %% principal square root
x = np.diag([4.0, 9.0])
print("sqrt(diag(4, 9)) =", np.diag(matrix_sqrt_newton(x)).real)
