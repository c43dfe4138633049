"""Linear stability certificate for 1D continuous Galerkin with SAT.

For ``u_t + a u_x = 0`` on ``[0, 1]`` discretised as
``M dU/dt + a Q U = Pi U`` the energy ``U^T M U`` is non-increasing if

    (Pi + Pi^T) - (a Q + (a Q)^T)

has no positive eigenvalue. With nodes on both interval ends,
``Q + Q^T = diag(-1, 0, ..., 0, 1)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ValidationError

__all__ = [
    "StabilityCertificate",
    "build_1d_operators",
    "boundary_matrix",
    "inflow_penalty",
    "certify",
    "energy_rate",
    "EIG_TOL",
]

EIG_TOL = 1e-12


@dataclass(frozen=True)
class StabilityCertificate:
    test_matrix: np.ndarray
    eigenvalues: np.ndarray
    tol: float = EIG_TOL

    @property
    def max_eigenvalue(self):
        return float(self.eigenvalues.max())

    @property
    def stable(self):
        return self.max_eigenvalue <= self.tol

    @property
    def verdict(self):
        return "STABLE" if self.stable else "UNSTABLE"


def _local_lagrange(p):
    """Coefficient matrix of equispaced Lagrange polynomials on ``[0, 1]``."""
    nodes = np.linspace(0.0, 1.0, p + 1)
    vander = np.vander(nodes, p + 1, increasing=True)
    return np.linalg.inv(vander)  # column j: monomial coefficients of phi_j


def build_1d_operators(p, n_elements):
    """Global mass ``M`` and convection ``Q_ij = int phi_i phi_j'`` matrices
    for continuous equispaced Lagrange elements on a uniform grid of [0, 1]."""
    if not 1 <= p <= 4:
        raise ConfigurationError(f"degree must lie in [1, 4], got {p}")
    if n_elements < 1:
        raise ConfigurationError("need at least one element")
    coef = _local_lagrange(p)
    x, w = np.polynomial.legendre.leggauss(p + 1)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    powers = np.arange(p + 1)
    phi = (x[:, None] ** powers) @ coef
    dpow = np.where(powers > 0, powers * x[:, None] ** np.maximum(powers - 1, 0), 0.0)
    dphi = dpow @ coef
    h = 1.0 / n_elements
    m_loc = h * np.einsum("q,qi,qj->ij", w, phi, phi)
    q_loc = np.einsum("q,qi,qj->ij", w, phi, dphi)  # h cancels against 1/h
    N = n_elements * p + 1
    M = np.zeros((N, N))
    Q = np.zeros((N, N))
    for e in range(n_elements):
        sl = slice(e * p, e * p + p + 1)
        M[sl, sl] += m_loc
        Q[sl, sl] += q_loc
    return M, Q


def boundary_matrix(N):
    B = np.zeros((N, N))
    B[0, 0] = -1.0
    B[-1, -1] = 1.0
    return B


def inflow_penalty(N, tau):
    """``tau E_00``: penalty acting on the inflow DoF only."""
    Pi = np.zeros((N, N))
    Pi[0, 0] = tau
    return Pi


def certify(M, Q, a, Pi, tol=EIG_TOL):
    M = np.asarray(M, dtype=float)
    Q = np.asarray(Q, dtype=float)
    Pi = np.asarray(Pi, dtype=float)
    if not (M.shape == Q.shape == Pi.shape and M.ndim == 2 and M.shape[0] == M.shape[1]):
        raise ValidationError(f"shape mismatch: M {M.shape}, Q {Q.shape}, Pi {Pi.shape}")
    if np.abs(M - M.T).max() > 1e-12:
        raise ValidationError("mass matrix is not symmetric")
    QA = a * Q
    T = (Pi + Pi.T) - (QA + QA.T)
    T = 0.5 * (T + T.T)
    return StabilityCertificate(T, np.linalg.eigvalsh(T), tol)


def energy_rate(U, Q, a, Pi):
    """``d/dt (U^T M U)`` for ``M dU/dt = -a Q U + Pi U``."""
    U = np.asarray(U, dtype=float)
    return float(U @ ((Pi + Pi.T) - a * (Q + Q.T)) @ U)
