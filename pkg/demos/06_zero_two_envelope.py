"""Half-angle reconstruction and the explicit zero-two envelope.

C(t/2) = sqrt(1 - (1 - C(t))/2) when ||C(t) - 1|| <= 2 and
rho(C(t/2) - 1) < 1.  Iterating gives ||C(t) - 1|| <= u_n on |t| <= eta 2^-n
with u_0 = 2 and u_{n+1} = 1 - sqrt(1 - u_n/2), so u_n shrinks by about 4 per step.
"""
import math

import numpy as np

from cosinelab import (Generator, ScalarCos, contraction_sequence, dyadic_refine,
                       fixed_point_scan, spectral_zero_two_check)

seq = contraction_sequence(10)
print("u_n:", ["%.3g" % u for u in seq.values])
print("ratios:", ["%.4f" % r for r in seq.ratios])

# %% a random generator: every row sits under the envelope
rng = np.random.default_rng(4)
a = rng.standard_normal((4, 4))
a /= np.linalg.norm(a, 2)
tr = dyadic_refine(Generator(a), 1.0, 8)
print(f"eta = {tr.eta}")
for s in tr.steps:
    print(f"  n={s.n}  gap={s.norm_gap:.3e}  u_n={s.envelope:.3e}  dev={s.deviation:.1e}  {s.status}")

# %% the hypothesis on C(t/2) is needed: cos(2t) at t = pi
tr = dyadic_refine(ScalarCos(2), math.pi, 4)
for s in tr.steps:
    print(f"  n={s.n}  rho={s.precondition_rho:.2f}  deviation={s.deviation:.2f}  {s.status}  flagged={s.flagged}")

# %% l <= 1 - sqrt(1 - l/2) has no solution in (0, 2]
print("fixed-point scan violations:", fixed_point_scan().violations)
print("spectral check diag(100):", spectral_zero_two_check(np.diag([100.0])))
