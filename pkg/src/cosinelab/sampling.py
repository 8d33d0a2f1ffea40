"""Seeded random inputs for trial suites.

All randomness goes through :func:`make_rng`, a NumPy ``Generator`` backed by
PCG64.  PCG64 output is specified bit-for-bit and does not depend on the
platform, so a seed pins every trial input.
"""

import os

import numpy as np

SEED_ENV = "COSINE_LAB_SEED"
DEFAULT_SEED = 20140101


def resolve_seed(seed=None):
    """Explicit seed, else ``$COSINE_LAB_SEED``, else the package default."""
    if seed is not None:
        return int(seed) & (2**64 - 1)
    env = os.environ.get(SEED_ENV)
    if env:
        return int(env, 0) & (2**64 - 1)
    return DEFAULT_SEED


def make_rng(seed=None):
    return np.random.Generator(np.random.PCG64(resolve_seed(seed)))


def random_matrix(rng, dim, norm=None, real=False):
    """Complex Gaussian ``dim x dim`` matrix, rescaled to spectral norm ``norm``.

    With ``norm=None`` the raw Gaussian draw is returned.
    """
    x = rng.standard_normal((dim, dim))
    if not real:
        x = x + 1j * rng.standard_normal((dim, dim))
    x = np.asarray(x, dtype=np.complex128)
    if norm is not None:
        s = np.linalg.norm(x, 2)
        x = x * (norm / s) if s > 0 else x
    return x


def random_generator(rng, max_dim=8, max_norm=2.0):
    """Generator matrix with random dimension in [1, max_dim] and norm in (0, max_norm]."""
    dim = int(rng.integers(1, max_dim + 1))
    norm = float(rng.uniform(0.0, max_norm)) or max_norm
    return random_matrix(rng, dim, norm)
