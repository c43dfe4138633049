"""Continuous Galerkin residuals, global right-hand side and mass matrix.

The element residual of DoF ``s`` in element ``K`` is

    Phi_s^K = oint_{dK} phi_s f(u_h).n  -  int_K grad(phi_s) . f(u_h),

both integrals evaluated by quadrature. Because ``u_h`` is continuous, the
element-boundary flux is single valued and interior edge contributions cancel
after assembly.

:class:`Discretization` caches all geometric quantities for one mesh, basis
and pair of quadrature orders; the module-level functions are thin
conveniences around it.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .basis import LOCAL_EDGES, make_basis
from .errors import ConfigurationError, NumericalError, ValidationError
from .quadrature import MAX_ORDER, segment_rule, triangle_rule

__all__ = [
    "Discretization",
    "StateField",
    "ElementResidual",
    "MassMatrix",
    "default_orders",
    "element_residual",
    "assemble_rhs",
    "assemble_mass",
    "apply_inverse_mass",
    "interpolate",
]


def default_orders(p, law=None):
    """Default (volume, edge) quadrature orders: ``2p + 1`` capped at the
    highest tabulated rule; non-polynomial fluxes use the highest rule."""
    if law is not None and getattr(law, "name", "") == "cosflux":
        return MAX_ORDER, MAX_ORDER
    o = min(2 * p + 1, MAX_ORDER)
    return o, o


@dataclass(frozen=True, eq=False)
class StateField:
    values: np.ndarray
    mesh: object
    basis: object

    def __post_init__(self):
        if len(self.values) != self.mesh.n_dofs:
            raise ValidationError(f"state has {len(self.values)} entries, mesh has {self.mesh.n_dofs} DoFs")
        if not np.all(np.isfinite(self.values)):
            raise NumericalError("state contains non-finite values")


@dataclass(frozen=True)
class ElementResidual:
    element: int
    values: np.ndarray  # per-DoF sub-residuals

    @property
    def total(self):
        return float(self.values.sum())


class Discretization:
    """Precomputed quadrature data of one (mesh, basis) pair."""

    def __init__(self, mesh, basis, volume_order=None, edge_order=None):
        if isinstance(basis, str):
            basis = make_basis(basis, mesh.degree)
        if basis.degree != mesh.degree:
            raise ConfigurationError(f"basis degree {basis.degree} does not match mesh degree {mesh.degree}")
        dv, de = default_orders(mesh.degree)
        self.mesh = mesh
        self.basis = basis
        self.volume_rule = triangle_rule(volume_order or dv)
        self.edge_rule = segment_rule(edge_order or de)
        self.elements = mesh.elements
        self.n_dofs = mesh.n_dofs

        verts = mesh.vertices[mesh.triangles]  # (E, 3, 2)
        jac = np.stack([verts[:, 1] - verts[:, 0], verts[:, 2] - verts[:, 0]], axis=2)  # (E, 2, 2)
        self.areas = mesh.areas
        self.jac_inv = np.linalg.inv(jac)

        vr = self.volume_rule
        self.phi_vol = basis.values(vr.points)  # (nq, n)
        gref = basis.reference_gradients(vr.points)  # (nq, n, 2)
        self.grad_vol = np.einsum("qnk,ekd->eqnd", gref, self.jac_inv)
        self.x_vol = np.einsum("qc,ecd->eqd", vr.points, verts)
        self.w_vol = 2.0 * self.areas[:, None] * vr.weights[None, :]  # (E, nq)

        self._edge_setup(self.edge_rule)
        verts_e = np.stack([verts[:, [a for a, _ in LOCAL_EDGES]], verts[:, [b for _, b in LOCAL_EDGES]]], axis=2)
        d = verts_e[:, :, 1] - verts_e[:, :, 0]  # (E, 3, 2)
        self.edge_length = np.linalg.norm(d, axis=2)
        self.edge_normal = np.stack([d[..., 1], -d[..., 0]], axis=-1) / self.edge_length[..., None]

        self.face_element = mesh.face_element
        self.face_edge = mesh.face_local_edge
        self.face_normal = mesh.face_normal
        self.face_length = mesh.face_length

    def _edge_setup(self, rule):
        s = rule.points
        lam = np.zeros((3, len(s), 3))
        for le, (a, b) in enumerate(LOCAL_EDGES):
            lam[le, :, a] = 1.0 - s
            lam[le, :, b] = s
        self.edge_lam = lam
        self.phi_edge = self.basis.values(lam)  # (3, ns, n)
        verts = self.mesh.vertices[self.mesh.triangles]
        self.x_edge = np.einsum("lsc,ecd->elsd", lam, verts)  # (E, 3, ns, 2)
        self.w_edge = rule.weights

    # --- evaluation helpers

    def local(self, U):
        return np.asarray(U)[self.elements]

    def volume_values(self, U):
        return self.local(U) @ self.phi_vol.T  # (E, nq)

    def edge_values(self, U):
        return np.einsum("lsn,en->els", self.phi_edge, self.local(U))

    def scatter(self, local_values):
        """Sum per-element contributions into global DoFs in element order."""
        return np.bincount(self.elements.ravel(), weights=np.ravel(local_values), minlength=self.n_dofs)

    def boundary_integral(self, law, U, kind="flux", which=slice(None)):
        """``oint_{dK} q(u_h).n`` per element, ``q`` the flux or entropy flux."""
        fn = law.flux if kind == "flux" else law.entropy_flux
        ue = np.einsum("lsn,en->els", self.phi_edge, np.asarray(U)[self.elements[which]])
        q = fn(ue, self.x_edge[which])  # (E, 3, ns, 2)
        qn = np.einsum("elsd,eld->els", q, self.edge_normal[which])
        return np.einsum("els,s,el->e", qn, self.w_edge, self.edge_length[which])

    def residuals(self, law, U, which=slice(None)):
        """Element residuals, shape ``(E, n)``; ``which`` selects elements."""
        Ul = np.asarray(U)[self.elements[which]]
        uq = Ul @ self.phi_vol.T
        fq = law.flux(uq, self.x_vol[which])  # (E, nq, 2)
        vol = np.einsum("eqnd,eqd,eq->en", self.grad_vol[which], fq, self.w_vol[which])
        ue = np.einsum("lsn,en->els", self.phi_edge, Ul)
        fe = law.flux(ue, self.x_edge[which])
        fn = np.einsum("elsd,eld->els", fe, self.edge_normal[which])
        surf = np.einsum("lsn,els,s,el->en", self.phi_edge, fn, self.w_edge, self.edge_length[which])
        phi = surf - vol
        if not np.all(np.isfinite(phi)):
            bad = np.flatnonzero(~np.isfinite(phi).all(axis=1))[0]
            bad = int(np.arange(len(self.elements))[which][bad])
            raise NumericalError(f"non-finite residual in element {bad}")
        return phi

    def rhs(self, law, U):
        return self.scatter(self.residuals(law, U))

    def mass_matrix(self, mode="exact"):
        return assemble_mass(self.mesh, self.basis, mode)

    def integrate(self, values_q):
        """Integrate volume-quadrature samples ``(E, nq)`` over the mesh."""
        return float(np.sum(values_q * self.w_vol))


def element_residual(law, mesh, element, state, orders=None, basis="lagrange"):
    disc = _disc(mesh, basis, orders, law)
    U = np.asarray(getattr(state, "values", state))
    return ElementResidual(int(element), disc.residuals(law, U, [element])[0])


def assemble_rhs(law, mesh, state, orders=None, basis="lagrange"):
    """Global residual ``F_s = sum_K Phi_s^K``."""
    disc = _disc(mesh, basis, orders, law)
    return disc.rhs(law, np.asarray(getattr(state, "values", state)))


def _disc(mesh, basis, orders, law=None):
    if orders is None:
        orders = default_orders(mesh.degree, law)
    return Discretization(mesh, basis, *orders)


MASS_MODES = ("exact", "under_integrated")


class MassMatrix:
    """Sparse symmetric mass matrix with a cached sparse LU factorisation."""

    def __init__(self, matrix, mode):
        self.matrix = sp.csc_matrix(matrix)
        self.mode = mode
        self._lu = None

    @property
    def shape(self):
        return self.matrix.shape

    def toarray(self):
        return self.matrix.toarray()

    def __matmul__(self, x):
        return self.matrix @ x

    def solve(self, b, rtol=1e-12):
        b = np.asarray(b, dtype=float)
        if self._lu is None:
            try:
                self._lu = spla.splu(self.matrix)
            except RuntimeError as exc:
                raise NumericalError(f"mass matrix factorisation failed: {exc}") from exc
        x = self._lu.solve(b)
        bnorm = np.linalg.norm(b)
        for _ in range(3):
            r = b - self.matrix @ x
            res = np.linalg.norm(r)
            if not np.isfinite(res):
                break
            if res <= rtol * bnorm or bnorm == 0.0:
                return x
            x = x + self._lu.solve(r)
        res = np.linalg.norm(b - self.matrix @ x)
        if not np.isfinite(res) or res > rtol * max(bnorm, 1e-300):
            raise NumericalError(f"mass solve did not converge: relative residual {res / max(bnorm, 1e-300):.3e}")
        return x


def assemble_mass(mesh, basis, mode="exact"):
    """Consistent mass matrix; ``under_integrated`` uses a rule of order
    ``2p - 1`` so that only the top-degree products are misintegrated."""
    if mode not in MASS_MODES:
        raise ConfigurationError(f"unknown mass mode {mode!r}; expected one of {MASS_MODES}")
    if isinstance(basis, str):
        basis = make_basis(basis, mesh.degree)
    p = mesh.degree
    order = min(2 * p, MAX_ORDER) if mode == "exact" else 2 * p - 1
    rule = triangle_rule(order)
    phi = basis.values(rule.points)  # (nq, n)
    local = np.einsum("q,qi,qj->ij", rule.weights, phi, phi)
    vals = 2.0 * mesh.areas[:, None, None] * local[None]
    rows = np.repeat(mesh.elements, mesh.elements.shape[1], axis=1)
    cols = np.tile(mesh.elements, (1, mesh.elements.shape[1]))
    M = sp.coo_matrix((vals.ravel(), (rows.ravel(), cols.ravel())), shape=(mesh.n_dofs,) * 2).tocsc()
    M.sum_duplicates()
    return MassMatrix(M, mode)


def apply_inverse_mass(M, vector):
    return M.solve(vector)


def interpolate(func, mesh, basis):
    """Coefficients of the interpolant of ``func(x, y)`` at the DoF points.

    For Bernstein bases the nodal values are converted element by element;
    shared DoFs receive identical coefficients because edge coefficients only
    depend on edge nodal values.
    """
    if isinstance(basis, str):
        basis = make_basis(basis, mesh.degree)
    xy = mesh.dof_coords
    nodal = np.asarray(func(xy[:, 0], xy[:, 1]), dtype=float) * np.ones(len(xy))
    if basis.family == "lagrange":
        return nodal
    V = basis.values(basis.nodes)  # V[tau, sigma] = phi_sigma(x_tau)
    coeffs = np.linalg.solve(V, nodal[mesh.elements].T).T
    out = np.empty(mesh.n_dofs)
    out[mesh.elements] = coeffs
    return out
