import numpy as np
import pytest

from cosinelab.sampling import make_rng


@pytest.fixture
def rng():
    return make_rng(12345)


def jordan(lam, dim):
    j = np.diag(np.full(dim, lam, dtype=complex))
    j += np.diag(np.ones(dim - 1), 1)
    return j


def power_norm(x, iters=500):
    """Largest singular value by power iteration on x^H x (independent of LAPACK svd)."""
    v = np.ones(x.shape[1], dtype=complex)
    g = x.conj().T @ x
    for _ in range(iters):
        w = g @ v
        n = np.linalg.norm(w)
        if n == 0:
            return 0.0
        v = w / n
    return float(np.sqrt(np.linalg.norm(g @ v)))
