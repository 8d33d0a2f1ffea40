"""Cosine families and their conformance residuals.

Matrix generators give C(t) = cos(t a).  Scalar cos and cosh are the
continuous scalar solutions.  Hamel-type families live on the group
Z + Z sqrt(2) with exact integer coordinates and are discontinuous on purpose.
"""
import numpy as np

from cosinelab import (Generator, Hamel, HamelSpec, ScalarCosh, commutation_residual,
                       convergents, dalembert_residual, product_identity_residual)

rng = np.random.default_rng(3)
g = Generator(rng.standard_normal((6, 6)) * 0.5)
st = rng.uniform(-3, 3, size=(200, 2))
print("generator d'Alembert residual:", max(dalembert_residual(g, s, t) for s, t in st))
print("product identity residual:   ", max(product_identity_residual(g, s, t) for s, t in st))
print("commutation residual:        ", max(commutation_residual(g, s, t) for s, t in st))
print("cosh residual:", dalembert_residual(ScalarCosh(1.3), 0.4, 1.1))

# %% Hamel family: phi(p + q sqrt2) = q, C = cos(phi)
spec = HamelSpec()
h = Hamel(spec)
s, t = spec.point(3, -2), spec.point(-1, 5)
print("C(3 - 2 sqrt2) =", h(s)[0, 0], "= cos 2 =", np.cos(2))
print("Hamel d'Alembert residual:", dalembert_residual(h, s, t))

# %% group elements p - q sqrt2 -> 0 along convergents, yet phi = -q does not
for p, q in convergents(spec.xi, 8):
    pt = spec.point(p, -q)
    print(f"  {p:4d} - {q:4d} sqrt2 = {float(pt):+.3e}   C = {h(pt)[0, 0]:+.4f}")
