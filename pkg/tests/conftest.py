"""Independent oracles shared by the test modules.

Nothing here goes through the package's quadrature tables: edge integrals use
numpy's Gauss-Legendre nodes at a fixed high point count, and triangle moments
use the closed-form factorial formula.
"""

from math import factorial

import numpy as np
import pytest

from entropy_cg.basis import LOCAL_EDGES


def triangle_moment(a, b):
    """``int x^a y^b`` over the reference triangle (0,0), (1,0), (0,1)."""
    return factorial(a) * factorial(b) / factorial(a + b + 2)


def edge_oracle(mesh, basis, U, element, integrand, npts=5):
    """``oint_{dK} integrand(u_h, x) . n ds`` with an ``npts`` Gauss rule per edge.

    ``integrand(u, x)`` returns the vector field (..., 2). Five points are
    exact to degree 9, which covers every polynomial flux up to ``p = 4``;
    for non-polynomial fluxes it is an order-8 approximation.
    """
    t, w = np.polynomial.legendre.leggauss(npts)
    t, w = 0.5 * (t + 1.0), 0.5 * w
    verts = mesh.vertices[mesh.triangles[element]]
    coeffs = np.asarray(U)[mesh.elements[element]]
    total = 0.0
    for a, b in LOCAL_EDGES:
        lam = np.zeros((npts, 3))
        lam[:, a] = 1.0 - t
        lam[:, b] = t
        u = basis.values(lam) @ coeffs
        x = lam @ verts
        d = verts[b] - verts[a]
        L = np.hypot(*d)
        n = np.array([d[1], -d[0]]) / L
        total += L * np.sum(w * (integrand(u, x) @ n))
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def collapsed_rule(n=8):
    """Duffy-collapsed Gauss rule on the reference triangle, barycentric points.

    Exact for polynomials of degree ``2n - 2`` and independent of the
    package's symmetric tables.
    """
    x, w = np.polynomial.legendre.leggauss(n)
    x, w = 0.5 * (x + 1.0), 0.5 * w
    s, t = np.meshgrid(x, x, indexing="ij")
    ws = np.outer(w, w) * (1.0 - s)
    xi, eta = s.ravel(), (t * (1.0 - s)).ravel()
    return np.column_stack([1.0 - xi - eta, xi, eta]), ws.ravel()


def residual_oracle(law, mesh, basis, U, element, n=8):
    """``oint phi f.n - int grad phi . f`` with collapsed and Gauss rules."""
    verts = mesh.vertices[mesh.triangles[element]]
    coeffs = np.asarray(U)[mesh.elements[element]]
    jac = np.column_stack([verts[1] - verts[0], verts[2] - verts[0]])
    area2 = np.linalg.det(jac)
    lam, w = collapsed_rule(n)
    u = basis.values(lam) @ coeffs
    x = lam @ verts
    grads = basis.reference_gradients(lam) @ np.linalg.inv(jac)  # (q, n, 2)
    vol = area2 * np.einsum("q,qnd,qd->n", w, grads, law.flux(u, x))
    t, wt = np.polynomial.legendre.leggauss(n)
    t, wt = 0.5 * (t + 1.0), 0.5 * wt
    surf = np.zeros(len(coeffs))
    for a, b in LOCAL_EDGES:
        lam = np.zeros((n, 3))
        lam[:, a], lam[:, b] = 1.0 - t, t
        phi = basis.values(lam)
        ue = phi @ coeffs
        d = verts[b] - verts[a]
        L = np.hypot(*d)
        nrm = np.array([d[1], -d[0]]) / L
        surf += L * np.einsum("q,qn,q->n", wt, phi, law.flux(ue, lam @ verts) @ nrm)
    return surf - vol


#: one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
