"""Lagrange and Bernstein bases on the reference triangle.

Both families are indexed by multi-indices ``(i, j, k)`` with
``i + j + k = p``, where the exponents belong to the barycentric coordinates
``(l0, l1, l2)`` of vertices ``v0 = (0,0)``, ``v1 = (1,0)``, ``v2 = (0,1)``.
The local ordering is

* the three vertices,
* the ``p - 1`` interior points of edge ``(v0, v1)``, ``(v1, v2)``,
  ``(v2, v0)``, each walked from its first to its second vertex,
* the interior points, lexicographic in ``(i, j)``.

Lagrange nodes sit at the equispaced points ``(i, j, k) / p``.
"""

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .errors import ConfigurationError, DomainError, GeometryError

__all__ = [
    "BasisSet",
    "make_basis",
    "reference_multi_indices",
    "eval_basis",
    "eval_gradients",
    "LOCAL_EDGES",
]

FAMILIES = ("lagrange", "bernstein")
MAX_DEGREE = 4

#: local edges as (first vertex, second vertex)
LOCAL_EDGES = ((0, 1), (1, 2), (2, 0))

# gradient of barycentric coordinates with respect to reference (xi, eta)
_DLAMBDA = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


def reference_multi_indices(p):
    """Multi-indices of the degree-``p`` layout in local DoF order."""
    if p < 1:
        raise ConfigurationError(f"degree must be >= 1, got {p}")
    idx = []
    for v in range(3):
        m = [0, 0, 0]
        m[v] = p
        idx.append(tuple(m))
    for a, b in LOCAL_EDGES:
        for s in range(1, p):
            m = [0, 0, 0]
            m[a] = p - s
            m[b] = s
            idx.append(tuple(m))
    for i in range(1, p - 1):
        for j in range(1, p - i):
            idx.append((i, j, p - i - j))
    return np.array(idx, dtype=int)


@dataclass(frozen=True)
class BasisSet:
    family: str
    degree: int
    multi_indices: np.ndarray = field(repr=False)

    @property
    def cardinality(self):
        return len(self.multi_indices)

    @property
    def nodes(self):
        """Barycentric coordinates of the equispaced reference DoF points."""
        return self.multi_indices / self.degree

    def edge_dofs(self, edge):
        """Local DoF indices on local ``edge`` ordered along the edge."""
        a, b = LOCAL_EDGES[edge]
        p = self.degree
        inner = list(range(3 + edge * (p - 1), 3 + (edge + 1) * (p - 1)))
        return [a] + inner + [b]

    def values(self, lam):
        """Basis values at barycentric points ``lam`` of shape ``(..., 3)``."""
        lam = np.asarray(lam, dtype=float)
        if self.family == "bernstein":
            return _bernstein(self.multi_indices, self.degree, lam)
        return _lagrange(self.multi_indices, self.degree, lam)

    def barycentric_gradients(self, lam):
        """Derivatives w.r.t. the three barycentric coordinates, ``(..., n, 3)``."""
        lam = np.asarray(lam, dtype=float)
        if self.family == "bernstein":
            return _bernstein_grad(self.multi_indices, self.degree, lam)
        return _lagrange_grad(self.multi_indices, self.degree, lam)

    def reference_gradients(self, lam):
        """Gradients w.r.t. reference ``(xi, eta)``, shape ``(..., n, 2)``."""
        return self.barycentric_gradients(lam) @ _DLAMBDA


def make_basis(family, degree):
    if family not in FAMILIES:
        raise ConfigurationError(f"unknown basis family {family!r}; expected one of {FAMILIES}")
    if not 1 <= degree <= MAX_DEGREE:
        raise ConfigurationError(f"degree must lie in [1, {MAX_DEGREE}], got {degree}")
    return BasisSet(family, int(degree), reference_multi_indices(int(degree)))


# --- Lagrange: product of shifted 1D factors  prod_{m<i} (p*l - m) / (m + 1)


def _lagrange_factor(t, i):
    out = np.ones_like(t)
    for m in range(i):
        out = out * (t - m) / (m + 1)
    return out


def _lagrange_factor_deriv(t, i):
    out = np.zeros_like(t)
    for skip in range(i):
        term = np.full_like(t, 1.0 / (skip + 1))
        for m in range(i):
            if m != skip:
                term = term * (t - m) / (m + 1)
        out = out + term
    return out


def _lagrange(idx, p, lam):
    t = p * lam
    vals = np.ones(lam.shape[:-1] + (len(idx),))
    for n, m in enumerate(idx):
        for c in range(3):
            vals[..., n] *= _lagrange_factor(t[..., c], m[c])
    return vals


def _lagrange_grad(idx, p, lam):
    out = np.empty(lam.shape[:-1] + (len(idx), 3))
    t = p * lam
    for n, m in enumerate(idx):
        f = [_lagrange_factor(t[..., c], m[c]) for c in range(3)]
        df = [p * _lagrange_factor_deriv(t[..., c], m[c]) for c in range(3)]
        out[..., n, 0] = df[0] * f[1] * f[2]
        out[..., n, 1] = f[0] * df[1] * f[2]
        out[..., n, 2] = f[0] * f[1] * df[2]
    return out


# --- Bernstein: p! / (i! j! k!) l0^i l1^j l2^k


def _multinomial(p, m):
    return factorial(p) / (factorial(m[0]) * factorial(m[1]) * factorial(m[2]))


def _bernstein(idx, p, lam):
    vals = np.empty(lam.shape[:-1] + (len(idx),))
    for n, m in enumerate(idx):
        vals[..., n] = _multinomial(p, m) * lam[..., 0] ** m[0] * lam[..., 1] ** m[1] * lam[..., 2] ** m[2]
    return vals


def _bernstein_grad(idx, p, lam):
    out = np.zeros(lam.shape[:-1] + (len(idx), 3))
    for n, m in enumerate(idx):
        c = _multinomial(p, m)
        for d in range(3):
            if m[d] == 0:
                continue
            e = list(m)
            e[d] -= 1
            out[..., n, d] = c * m[d] * lam[..., 0] ** e[0] * lam[..., 1] ** e[1] * lam[..., 2] ** e[2]
    return out


def _check_point(point, tol=1e-12):
    lam = np.asarray(point, dtype=float)
    if lam.shape[-1] != 3:
        raise DomainError("expected barycentric coordinates with 3 components")
    if np.any(lam < -tol) or np.any(np.abs(lam.sum(axis=-1) - 1.0) > tol):
        raise DomainError(f"point {point} lies outside the reference triangle")
    return lam


def eval_basis(basis, point):
    """Values of all basis functions at a barycentric point."""
    return basis.values(_check_point(point))


def affine_map(vertices):
    """Jacobian ``J`` and signed area of the map from the reference triangle."""
    v = np.asarray(vertices, dtype=float)
    jac = np.column_stack([v[1] - v[0], v[2] - v[0]])
    area = 0.5 * np.linalg.det(jac)
    return jac, area


def eval_gradients(basis, point, vertices):
    """Physical gradients of all basis functions, shape ``(n, 2)``.

    ``vertices`` are the three corner coordinates of the (straight) triangle.
    """
    lam = _check_point(point)
    jac, area = affine_map(vertices)
    if abs(area) < 1e-14:
        raise GeometryError(f"degenerate triangle with area {area:.3e}")
    return basis.reference_gradients(lam) @ np.linalg.inv(jac)
