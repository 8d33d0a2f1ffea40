"""The binomial series for sqrt(1 - x) on the closed unit ball.

Because every |alpha_n| t^n term is positive, the tail after N terms is
exactly (1 - sqrt(1 - t)) minus the partial sum.  No heuristic stop is needed.
"""
import numpy as np

from cosinelab import (alpha_coeffs, bound_rhs, halfplane_check, matrix_sqrt_newton,
                       matrix_sqrt_series, operator_norm)

c = alpha_coeffs(6)
print("alpha_0..6:", c.alpha)
print("sum |alpha_n| up to 10^6:", alpha_coeffs(10**6).abs_partial[-1])

rng = np.random.default_rng(2)
x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
for r in (0.5, 0.9, 0.99):
    xr = x * (r / np.linalg.norm(x, 2))
    res = matrix_sqrt_series(xr)
    dev = operator_norm(np.eye(5) - res.value)
    newton = operator_norm(res.value - matrix_sqrt_newton(np.eye(5) - xr))
    print(f"||x|| = {r}: {res.terms:5d} terms, ||1 - sqrt|| = {dev:.4f} <= {bound_rhs(r):.4f}, "
          f"vs Newton {newton:.1e}")

print("spectrum of the root in the right half-plane:", halfplane_check(x * (0.95 / np.linalg.norm(x, 2))))

# %% at ||x|| = 1 the series still converges, slowly; the result is flagged
res = matrix_sqrt_series(np.eye(2), tol=1e-6, max_terms=5000)
print("boundary: converged =", res.converged, " tail bound =", res.tail)
