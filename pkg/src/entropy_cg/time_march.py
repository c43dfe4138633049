"""Explicit Runge-Kutta schemes in Shu-Osher form and CFL step control."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericalError

__all__ = ["TimeScheme", "get_scheme", "compute_dt", "step", "SCHEMES"]


@dataclass(frozen=True)
class TimeScheme:
    """Stage ``i`` is ``sum_k alpha[i][k] u_k + dt * beta[i][k] L(u_k)``,
    ``k`` running over the initial state and all earlier stages."""

    name: str
    order: int
    alpha: tuple
    beta: tuple

    @property
    def stages(self):
        return len(self.alpha)

    def butcher(self):
        """Equivalent Butcher tableau ``(A, b, c)``."""
        s = self.stages
        # express every stage value u_i = u_0 + dt * sum_j a_ij L(u_j)
        coef = np.zeros((s + 1, s + 1))
        for i in range(1, s + 1):
            a, b = self.alpha[i - 1], self.beta[i - 1]
            for k in range(len(a)):
                coef[i] += a[k] * coef[k]
                coef[i, k] += b[k]
        A = coef[1:s, :s]
        A = np.vstack([np.zeros(s), A])
        return A, coef[s, :s], A.sum(axis=1)

    def is_ssp(self):
        return all(x >= 0 for row in self.alpha for x in row) and all(x >= 0 for row in self.beta for x in row)


SCHEMES = {
    "ssprk33": TimeScheme(
        "ssprk33",
        3,
        alpha=((1.0,), (0.75, 0.25), (1 / 3, 0.0, 2 / 3)),
        beta=((1.0,), (0.0, 0.25), (0.0, 0.0, 2 / 3)),
    ),
    # Spiteri & Ruuth optimal five-stage fourth-order SSP method
    "ssprk54": TimeScheme(
        "ssprk54",
        4,
        alpha=(
            (1.0,),
            (0.444370493651235, 0.555629506348765),
            (0.620101851488403, 0.0, 0.379898148511597),
            (0.178079954393132, 0.0, 0.0, 0.821920045606868),
            (0.0, 0.0, 0.517231671970585, 0.096059710526147, 0.386708617503269),
        ),
        beta=(
            (0.391752226571890,),
            (0.0, 0.368410593050371),
            (0.0, 0.0, 0.251891774271694),
            (0.0, 0.0, 0.0, 0.544974750228521),
            (0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906),
        ),
    ),
    "rk44": TimeScheme(
        "rk44",
        4,
        alpha=((1.0,), (1.0, 0.0), (1.0, 0.0, 0.0), (-1 / 3, 1 / 3, 2 / 3, 1 / 3)),
        beta=((0.5,), (0.0, 0.5), (0.0, 0.0, 1.0), (0.0, 0.0, 0.0, 1 / 6)),
    ),
}


def get_scheme(name):
    try:
        return SCHEMES[name]
    except KeyError:
        raise ConfigurationError(f"unknown time scheme {name!r}; expected one of {tuple(SCHEMES)}") from None


def compute_dt(cfl, mesh, state, law):
    """``cfl * h_min / lambda_max`` with ``h_min`` the smallest inscribed-circle
    diameter and ``lambda_max`` the largest ``|f'(U_s)|`` over all DoFs."""
    if cfl <= 0:
        raise ConfigurationError(f"CFL number must be positive, got {cfl}")
    U = np.asarray(getattr(state, "values", state))
    h_min = float(mesh.inradius_diameters().min())
    speed = np.linalg.norm(law.jacobian(U, mesh.dof_coords), axis=-1)
    lam = max(float(speed.max()), 1e-12)
    return cfl * h_min / lam


def step(scheme, state, dt, rhs):
    """Advance ``state`` by one step of ``scheme``; ``rhs(U)`` returns dU/dt."""
    if isinstance(scheme, str):
        scheme = get_scheme(scheme)
    u0 = np.asarray(state, dtype=float)
    # stages are stored as increments over u0; since every row of alpha sums
    # to one this equals the convex combination and keeps steady states bitwise
    du = [np.zeros_like(u0)]
    L = []
    for i, (a, b) in enumerate(zip(scheme.alpha, scheme.beta)):
        L.append(rhs(u0 + du[-1]))
        inc = np.zeros_like(u0)
        for k, (ak, bk) in enumerate(zip(a, b)):
            if ak != 0.0 and k > 0:
                inc += ak * du[k]
            if bk != 0.0:
                inc += (dt * bk) * L[k]
        new = u0 + inc
        if not np.all(np.isfinite(new)):
            raise NumericalError(f"non-finite state in stage {i + 1} of {scheme.name}")
        du.append(inc)
    return new
