"""Scalar 2D conservation laws with their entropy machinery.

All built-in laws use the square entropy ``eta = u**2 / 2``, so the entropy
variable coincides with the state. Entropy fluxes are normalised to
``g(0) = 0``.

Every evaluation accepts arrays; vector-valued quantities carry a trailing
axis of length 2. ``x`` is the physical position, shape ``(..., 2)``, and is
only used by spatially varying laws.
"""

import re

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "ConservationLaw",
    "Advection",
    "Rotation",
    "Burgers2D",
    "CosFlux",
    "builtin_law",
    "normal_flux",
    "normal_entropy_flux",
    "BUILTIN_LAWS",
]


class ConservationLaw:
    """Square-entropy scalar law. Subclasses provide ``flux``, ``jacobian``,
    ``entropy_flux`` and optionally ``closed_form_F``."""

    name = "law"
    spatially_varying = False

    def flux(self, u, x=None):
        raise NotImplementedError

    def jacobian(self, u, x=None):
        raise NotImplementedError

    def entropy_flux(self, u, x=None):
        raise NotImplementedError

    def entropy(self, u):
        return 0.5 * np.asarray(u) ** 2

    def entropy_hessian(self, u):
        return np.ones_like(np.asarray(u, dtype=float))

    def entropy_variable(self, u):
        return np.asarray(u, dtype=float)

    def state_from_variable(self, v):
        return np.asarray(v, dtype=float)

    def potential(self, v, x=None):
        """Flux potential ``Theta(V) = V f(V) - g(V)``."""
        v = np.asarray(v, dtype=float)
        u = self.state_from_variable(v)
        return v[..., None] * self.flux(u, x) - self.entropy_flux(u, x)

    def closed_form_F(self, v, n, x=None):
        """``int_0^1 t f'(tV).n dt`` in closed form, or ``None`` if unavailable."""
        return None

    def __repr__(self):
        return f"{type(self).__name__}()"


def _stack(a, b):
    a, b = np.broadcast_arrays(a, b)
    return np.stack([a, b], axis=-1)


class Advection(ConservationLaw):
    name = "advection"

    def __init__(self, a=1.0, b=0.0):
        self.velocity = np.array([float(a), float(b)])

    def flux(self, u, x=None):
        return np.asarray(u, dtype=float)[..., None] * self.velocity

    def jacobian(self, u, x=None):
        return np.broadcast_to(self.velocity, np.shape(u) + (2,)).copy()

    def entropy_flux(self, u, x=None):
        return 0.5 * np.asarray(u, dtype=float)[..., None] ** 2 * self.velocity

    def closed_form_F(self, v, n, x=None):
        n = np.asarray(n, dtype=float)
        return np.broadcast_to(0.5 * (n @ self.velocity), np.broadcast_shapes(np.shape(v), n.shape[:-1])).copy()

    def __repr__(self):
        return f"Advection(a={self.velocity[0]!r}, b={self.velocity[1]!r})"


class Rotation(ConservationLaw):
    """Solid-body rotation with one clockwise revolution per unit time,
    velocity ``2 pi (y, -x)``; divergence free."""

    name = "rotation"
    spatially_varying = True

    @staticmethod
    def velocity(x):
        x = np.asarray(x, dtype=float)
        return 2.0 * np.pi * np.stack([x[..., 1], -x[..., 0]], axis=-1)

    def flux(self, u, x=None):
        return np.asarray(u, dtype=float)[..., None] * self.velocity(x)

    def jacobian(self, u, x=None):
        return np.broadcast_to(self.velocity(x), np.shape(u) + (2,)).copy()

    def entropy_flux(self, u, x=None):
        return 0.5 * np.asarray(u, dtype=float)[..., None] ** 2 * self.velocity(x)

    def closed_form_F(self, v, n, x=None):
        an = np.sum(self.velocity(x) * np.asarray(n, dtype=float), axis=-1)
        return np.broadcast_to(0.5 * an, np.broadcast_shapes(np.shape(v), an.shape)).copy()


class Burgers2D(ConservationLaw):
    """``f(u) = (u^2/2, u^2/2)``, ``g(u) = (u^3/3, u^3/3)``."""

    name = "burgers2d"

    def flux(self, u, x=None):
        h = 0.5 * np.asarray(u, dtype=float) ** 2
        return _stack(h, h)

    def jacobian(self, u, x=None):
        u = np.asarray(u, dtype=float)
        return _stack(u, u)

    def entropy_flux(self, u, x=None):
        c = np.asarray(u, dtype=float) ** 3 / 3.0
        return _stack(c, c)

    def closed_form_F(self, v, n, x=None):
        n = np.asarray(n, dtype=float)
        return np.asarray(v, dtype=float) * (n[..., 0] + n[..., 1]) / 3.0


class CosFlux(ConservationLaw):
    """``f(u) = (cos u, u)`` with ``g(u) = (u cos u - sin u, u^2/2)``."""

    name = "cosflux"
    series_threshold = 1e-4

    def flux(self, u, x=None):
        u = np.asarray(u, dtype=float)
        return _stack(np.cos(u), u)

    def jacobian(self, u, x=None):
        u = np.asarray(u, dtype=float)
        return _stack(-np.sin(u), np.ones_like(u))

    def entropy_flux(self, u, x=None):
        u = np.asarray(u, dtype=float)
        return _stack(u * np.cos(u) - np.sin(u), 0.5 * u**2)

    def closed_form_F(self, v, n, x=None):
        v = np.asarray(v, dtype=float)
        n = np.asarray(n, dtype=float)
        small = np.abs(v) < self.series_threshold
        vs = np.where(small, 1.0, v)
        exact = (vs * np.cos(vs) - np.sin(vs)) / vs**2
        v2 = v * v
        series = v * (-1.0 / 3.0 + v2 * (1.0 / 30.0 - v2 / 840.0))
        return n[..., 0] * np.where(small, series, exact) + 0.5 * n[..., 1]


BUILTIN_LAWS = ("advection", "rotation", "burgers2d", "cosflux")

_ADVECTION = re.compile(r"^advection(?:\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\))?$")


def builtin_law(name, **params):
    """Look up a built-in law.

    ``name`` is one of ``advection``, ``advection(a,b)``, ``rotation``,
    ``burgers2d`` or ``cosflux``. Advection speeds may also be passed as
    keyword arguments ``a`` and ``b``.
    """
    key = str(name).strip().lower().replace(" ", "")
    m = _ADVECTION.match(key)
    if m:
        if m.group(1) is not None:
            try:
                return Advection(float(m.group(1)), float(m.group(2)))
            except ValueError:
                raise ConfigurationError(f"bad advection speed in {name!r}") from None
        return Advection(params.get("a", 1.0), params.get("b", 0.0))
    if params:
        raise ConfigurationError(f"law {name!r} takes no parameters")
    if key == "rotation":
        return Rotation()
    if key == "burgers2d":
        return Burgers2D()
    if key == "cosflux":
        return CosFlux()
    raise ConfigurationError(f"unknown conservation law {name!r}; expected one of {BUILTIN_LAWS}")


def normal_flux(law, u, n, x=None):
    return np.sum(law.flux(u, x) * np.asarray(n, dtype=float), axis=-1)


def normal_entropy_flux(law, u, n, x=None):
    return np.sum(law.entropy_flux(u, x) * np.asarray(n, dtype=float), axis=-1)
