import numpy as np
import pytest
from scipy.linalg import expm

from optocorr import SystemParams, params_from_config


@pytest.fixture
def base_params() -> SystemParams:
    """Baseline operating point (package defaults)."""
    return params_from_config({})


def random_symplectic(n_modes: int, rng: np.random.Generator) -> np.ndarray:
    """exp(Omega K) with symmetric K is symplectic in the qpqp ordering."""
    omega = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    k = rng.normal(scale=0.3, size=(2 * n_modes, 2 * n_modes))
    k = 0.5 * (k + k.T)
    return expm(omega @ k)


def random_physical_cm(n_modes: int, rng: np.random.Generator,
                       min_nu: float = 0.5) -> np.ndarray:
    """V = S diag(nu) S^T with symplectic eigenvalues nu >= 1/2."""
    s = random_symplectic(n_modes, rng)
    nus = min_nu + rng.exponential(scale=0.4, size=n_modes)
    d = np.diag(np.repeat(nus, 2))
    return s @ d @ s.T


def random_stable_system(n: int, rng: np.random.Generator):
    """Random (A, D) with A strictly stable and D positive semidefinite."""
    a = rng.normal(size=(n, n))
    shift = np.max(np.linalg.eigvals(a).real)
    a = a - (shift + 0.3 + rng.uniform(0.0, 1.0)) * np.eye(n)
    b = rng.normal(size=(n, n))
    d = b @ b.T
    return a, d


def tmsv_cm(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum in the half-unit convention."""
    ch = 0.5 * np.cosh(2.0 * r)
    sh = 0.5 * np.sinh(2.0 * r)
    z = np.diag([1.0, -1.0])
    v = np.zeros((4, 4))
    v[:2, :2] = ch * np.eye(2)
    v[2:, 2:] = ch * np.eye(2)
    v[:2, 2:] = sh * z
    v[2:, :2] = sh * z
    return v
