import numpy as np
import pytest

from entropy_cg.errors import ConfigurationError, NumericalError
from entropy_cg.flux import builtin_law
from entropy_cg.mesh import generate_disk_mesh, generate_square_mesh
from entropy_cg.time_march import SCHEMES, compute_dt, get_scheme, step


def decay(u):
    return -u


def test_ssprk33_taylor_step():
    got = step("ssprk33", np.array([1.0]), 0.1, decay)[0]
    assert abs(got - (1 - 0.1 + 0.005 - 0.1**3 / 6)) <= 1e-16


@pytest.mark.parametrize("name", list(SCHEMES))
def test_zero_rhs_is_bitwise_identity(name, rng):
    u = rng.normal(size=50)
    out = step(name, u, 0.37, np.zeros_like)
    assert out.tobytes() == u.tobytes()


@pytest.mark.parametrize("name", ["ssprk33", "ssprk54"])
def test_ssp_tableaux_are_convex(name):
    scheme = SCHEMES[name]
    assert scheme.is_ssp()
    for a in scheme.alpha:
        assert sum(a) == pytest.approx(1.0, abs=1e-14)


def test_rk44_is_not_ssp():
    assert not SCHEMES["rk44"].is_ssp()


@pytest.mark.parametrize("name", list(SCHEMES))
def test_order_conditions(name):
    scheme = SCHEMES[name]
    A, b, c = scheme.butcher()
    tol = 1e-13
    assert b.sum() == pytest.approx(1, abs=tol)
    assert b @ c == pytest.approx(1 / 2, abs=tol)
    assert b @ c**2 == pytest.approx(1 / 3, abs=tol)
    assert b @ A @ c == pytest.approx(1 / 6, abs=tol)
    if scheme.order >= 4:
        assert b @ c**3 == pytest.approx(1 / 4, abs=tol)
        assert b @ (c * (A @ c)) == pytest.approx(1 / 8, abs=tol)
        assert b @ A @ c**2 == pytest.approx(1 / 12, abs=tol)
        assert b @ A @ A @ c == pytest.approx(1 / 24, abs=tol)


@pytest.mark.parametrize("name", list(SCHEMES))
def test_observed_convergence_order(name):
    scheme = SCHEMES[name]
    errs = []
    for n in (10, 20, 40):
        u = np.array([1.0])
        for _ in range(n):
            u = step(scheme, u, 1.0 / n, decay)
        errs.append(abs(u[0] - np.exp(-1.0)))
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    assert np.all(np.abs(orders - scheme.order) < 0.2)


def test_non_finite_stage_raises():
    with pytest.raises(NumericalError, match="stage 1"):
        step("ssprk33", np.ones(3), 1.0, lambda u: u * np.inf)


def test_unknown_scheme():
    with pytest.raises(ConfigurationError):
        get_scheme("euler")


def test_dt_for_zero_cosflux_state():
    mesh = generate_disk_mesh(4, 2)
    dt = compute_dt(0.3, mesh, np.zeros(mesh.n_dofs), builtin_law("cosflux"))
    assert dt == pytest.approx(0.3 * mesh.inradius_diameters().min(), rel=1e-15)


def test_dt_advection_speed_is_one(rng):
    mesh = generate_square_mesh(4, 1)
    dt = compute_dt(1.0, mesh, rng.normal(size=mesh.n_dofs), builtin_law("advection(1,0)"))
    # inscribed diameter of the right isosceles triangle with legs h
    h = 0.25
    assert dt == pytest.approx(2 * h / (2 + np.sqrt(2)), rel=1e-14)


def test_dt_burgers_speed():
    mesh = generate_square_mesh(2, 1)
    U = np.zeros(mesh.n_dofs)
    U[3] = -2.0
    dt = compute_dt(1.0, mesh, U, builtin_law("burgers2d"))
    assert mesh.inradius_diameters().min() / dt == pytest.approx(2 * np.sqrt(2), abs=1e-14)


def test_dt_rejects_non_positive_cfl():
    mesh = generate_square_mesh(1, 1)
    with pytest.raises(ConfigurationError):
        compute_dt(0.0, mesh, np.zeros(4), builtin_law("burgers2d"))
