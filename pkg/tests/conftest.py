import numpy as np
import pytest
from scipy.linalg import expm

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)


def kron_on(op, qubit, n):
    """Oracle embedding: qubit 0 is the rightmost Kronecker factor."""
    factors = [op if q == qubit else I2 for q in reversed(range(n))]
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def dense_mixer(axes, n, shifted=False):
    b = sum(kron_on(a[0] * X + a[1] * Y + a[2] * Z, j, n) for j, a in enumerate(axes))
    return 0.5 * (n * np.eye(2**n) - b) if shifted else b


def dense_circuit(psi, costs, b_dense, gammas, betas):
    c = np.diag(np.asarray(costs, dtype=complex))
    for g, b in zip(gammas, betas):
        psi = expm(-1j * b * b_dense) @ (expm(-1j * g * c) @ psi)
    return psi


def align_phase(a, ref):
    """Remove the global phase of ``a`` relative to ``ref`` using its largest amplitude."""
    k = int(np.argmax(np.abs(ref)))
    return a * (ref[k] / a[k]) / abs(ref[k] / a[k])


def random_state(n, rng):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
