"""Semidiscrete operator ``M dU/dt = -(F + R) + SAT``.

``F`` is the assembled Galerkin residual, ``R`` the scattered entropy
correction (optional) and ``SAT`` the weak boundary penalty (optional).
The correction is evaluated from the same state as the residual, so every
Runge-Kutta stage satisfies the element entropy identity.
"""

import numpy as np

from .entropy_fix import corrections, entropy_errors
from .sat import BoundaryOperatorSpec, SatOperator
from .spatial import Discretization, assemble_mass, default_orders

__all__ = ["SemiDiscrete"]


class SemiDiscrete:
    def __init__(
        self,
        law,
        mesh,
        basis,
        volume_order=None,
        edge_order=None,
        mass_mode="exact",
        correction=False,
        sat=BoundaryOperatorSpec(),
    ):
        dv, de = default_orders(mesh.degree, law)
        self.law = law
        self.mesh = mesh
        self.disc = Discretization(mesh, basis, volume_order or dv, edge_order or de)
        self.basis = self.disc.basis
        self.mass = assemble_mass(mesh, self.basis, mass_mode)
        self.correction = bool(correction)
        self.sat = SatOperator(law, self.disc, sat) if sat is not None else None
        self._nodal = self.basis.values(self.basis.nodes)  # (n_nodes, n)
        self.last_degenerate = 0

    def residual(self, U):
        """Per-element (corrected) residuals, shape ``(E, n)``."""
        phi = self.disc.residuals(self.law, U)
        if self.correction:
            err = entropy_errors(self.law, self.disc, U, phi)
            V = self.law.entropy_variable(np.asarray(U)[self.disc.elements])
            r, degenerate = corrections(V, err)
            self.last_degenerate = int(degenerate.sum())
            phi = phi + r
        return phi

    def forcing(self, U):
        """Right-hand side before inversion of the mass matrix."""
        b = -self.disc.scatter(self.residual(U))
        if self.sat is not None:
            b += self.sat(U)
        return b

    def __call__(self, U):
        return self.mass.solve(self.forcing(U))

    # --- diagnostics

    def entropy(self, U):
        """``int eta(u_h)`` by volume quadrature."""
        return self.disc.integrate(self.law.entropy(self.disc.volume_values(U)))

    def energy(self, U):
        """Discrete energy ``U^T M U``."""
        U = np.asarray(U)
        return float(U @ (self.mass @ U))

    def nodal_values(self, U):
        """Field values at the DoF points."""
        local = np.asarray(U)[self.disc.elements] @ self._nodal.T
        out = np.empty(self.mesh.n_dofs)
        out[self.disc.elements] = local
        return out
