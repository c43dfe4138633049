import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from entropy_cg.basis import make_basis
from entropy_cg.entropy_fix import (
    corrected_residual,
    correction_term,
    corrections,
    element_entropy_error,
    entropy_errors,
)
from entropy_cg.flux import builtin_law
from entropy_cg.mesh import generate_disk_mesh
from entropy_cg.spatial import Discretization

from conftest import edge_oracle, residual_oracle


def test_constant_state_error_vanishes():
    mesh = generate_disk_mesh(3, 2)
    disc = Discretization(mesh, "lagrange")
    U = np.full(mesh.n_dofs, -0.4)
    for name in ("advection(1,0)", "burgers2d", "cosflux"):
        law = builtin_law(name)
        err = entropy_errors(law, disc, U, disc.residuals(law, U))
        np.testing.assert_allclose(err, 0.0, atol=1e-13)


def test_p1_advection_is_elementwise_entropy_conservative(rng):
    mesh = generate_disk_mesh(3, 1)
    disc = Discretization(mesh, "lagrange")
    law = builtin_law("advection(1,0)")
    for _ in range(100):
        U = rng.normal(size=mesh.n_dofs)
        assert np.abs(entropy_errors(law, disc, U, disc.residuals(law, U))).max() <= 1e-12


def test_burgers_p2_error_against_high_order_oracle(rng):
    mesh = generate_disk_mesh(2, 2)
    basis = make_basis("lagrange", 2)
    disc = Discretization(mesh, basis, 8, 8)
    law = builtin_law("burgers2d")
    for _ in range(10):
        U = rng.uniform(-1, 1, mesh.n_dofs)
        e = int(rng.integers(mesh.n_elements))
        res = disc.residuals(law, U, [e])[0]
        got = element_entropy_error(law, disc, e, U, res)
        V = U[mesh.elements[e]]
        oracle = edge_oracle(mesh, basis, U, e, law.entropy_flux) - V @ residual_oracle(law, mesh, basis, U, e)
        assert got == pytest.approx(oracle, abs=1e-10)


def test_burgers_error_is_pure_quadrature_error(rng):
    """Exactly integrated, a CG residual with square entropy carries no entropy
    error; the default edge rule under-integrates ``phi f`` for Burgers."""
    mesh = generate_disk_mesh(2, 2)
    law = builtin_law("burgers2d")
    U = rng.uniform(-1, 1, mesh.n_dofs)
    exact = Discretization(mesh, "lagrange", 8, 8)
    np.testing.assert_allclose(entropy_errors(law, exact, U, exact.residuals(law, U)), 0.0, atol=1e-13)
    default = Discretization(mesh, "lagrange")
    assert np.abs(entropy_errors(law, default, U, default.residuals(law, U))).max() > 1e-6


def test_degenerate_element():
    rep = correction_term([0.7, 0.7, 0.7], 3.0)
    assert rep.degenerate
    np.testing.assert_array_equal(rep.r, 0.0)


def test_worked_correction():
    rep = correction_term([1.0, 2.0, 3.0], 2.0)
    assert (rep.v_mean, rep.alpha, rep.degenerate) == (2.0, 1.0, False)
    np.testing.assert_allclose(rep.r, [-1.0, 0.0, 1.0], atol=1e-16)


@given(arrays(float, st.integers(3, 15), elements=st.floats(-10, 10)))
def test_zero_error_gives_zero_correction(V):
    np.testing.assert_allclose(correction_term(V, 0.0).r, 0.0, atol=1e-15)


@given(
    arrays(float, st.integers(3, 15), elements=st.floats(-10, 10)),
    st.floats(-1e3, 1e3),
)
def test_correction_identities(V, error):
    rep = correction_term(V, error)
    if rep.degenerate:
        np.testing.assert_array_equal(rep.r, 0.0)
        return
    assert abs(rep.r.sum()) <= 1e-13 * max(1.0, np.abs(rep.r).max())
    assert V @ rep.r == pytest.approx(error, rel=1e-10, abs=1e-12)


def test_zero_correction_leaves_residual():
    res = np.array([0.1, -0.3, 0.2])
    np.testing.assert_array_equal(corrected_residual(res, np.zeros(3)), res)


@pytest.mark.parametrize("name", ["burgers2d", "cosflux", "rotation"])
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_corrected_residual_satisfies_entropy_identity(name, seed):
    rng = np.random.default_rng(seed)
    mesh = generate_disk_mesh(2, 2)
    disc = Discretization(mesh, "lagrange", 8, 8)
    law = builtin_law(name)
    U = rng.uniform(-1, 1, mesh.n_dofs)
    phi = disc.residuals(law, U)
    err = entropy_errors(law, disc, U, phi)
    V = law.entropy_variable(U[mesh.elements])
    r, degenerate = corrections(V, err)
    hat = phi + r
    g = disc.boundary_integral(law, U, "entropy")
    ok = ~degenerate
    np.testing.assert_allclose(np.einsum("en,en->e", V, hat)[ok], g[ok], atol=1e-12)
    np.testing.assert_allclose(hat.sum(axis=1), phi.sum(axis=1), atol=1e-14)
