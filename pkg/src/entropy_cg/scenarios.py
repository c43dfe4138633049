"""Built-in test problems and the time loop driving them."""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, NumericalError
from .flux import builtin_law
from .io import EntropyReport, SchemeConfig, write_entropy_csv, write_vtk
from .mesh import generate_disk_mesh, generate_square_mesh, import_mesh
from .sat import BoundaryOperatorSpec
from .solver import SemiDiscrete
from .spatial import Discretization, interpolate
from .time_march import compute_dt, get_scheme, step

__all__ = ["Scenario", "SCENARIOS", "RunResult", "get_scenario", "run_scenario", "entropy_change", "build_problem"]


def _bump(x0, y0):
    return lambda x, y: np.exp(-40.0 * ((x - x0) ** 2 + (y - y0) ** 2))


def _cut_bump(x, y):
    r = np.sqrt((x - 0.3) ** 2 + (y - 0.3) ** 2)
    return np.where(r < 0.25, np.exp(-40.0 * r**2), 0.0)


@dataclass(frozen=True)
class Scenario:
    name: str
    law: str
    domain: str  # "square" or "disk"
    initial: object
    t_end: float
    mesh_n: int


SCENARIOS = {
    "advect_bump": Scenario("advect_bump", "advection(1,0)", "square", _cut_bump, 0.5, 16),
    "rotation": Scenario("rotation", "rotation", "disk", _bump(0.0, 0.5), 1.0, 18),
    "burgers_bump": Scenario("burgers_bump", "burgers2d", "disk", _bump(0.5, 0.5), 0.3, 13),
    "cosflux": Scenario("cosflux", "cosflux", "disk", _bump(0.0, 0.0), 0.2, 13),
}


def get_scenario(name):
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ConfigurationError(f"unknown scenario {name!r}; expected one of {tuple(SCENARIOS)}") from None


@dataclass
class RunResult:
    config: SchemeConfig
    report: EntropyReport
    state: np.ndarray  # last valid state
    time: float
    steps: int
    status: str = "completed"  # or "aborted"
    message: str = ""
    snapshots: list = field(default_factory=list)

    @property
    def aborted(self):
        return self.status == "aborted"


def build_problem(config):
    """Mesh, semidiscrete operator and scenario for a configuration."""
    scen = get_scenario(config.scenario)
    p = config.degree
    if config.mesh_file:
        try:
            text = Path(config.mesh_file).read_text()
        except OSError as exc:
            raise ConfigurationError(f"cannot read mesh file {config.mesh_file}: {exc}") from None
        mesh = import_mesh(text, p)
    elif scen.domain == "square":
        mesh = generate_square_mesh(config.mesh_n or scen.mesh_n, p)
    else:
        mesh = generate_disk_mesh(config.mesh_n or scen.mesh_n, p)
    law = builtin_law(scen.law)
    if config.sat_mode == "off":
        sat = None
    elif config.sat_mode == "closed_form":
        sat = BoundaryOperatorSpec("closed_form", config.sat_order)
    else:
        sat = BoundaryOperatorSpec("quadrature", config.sat_order)
    op = SemiDiscrete(
        law,
        mesh,
        config.basis,
        volume_order=config.volume_order,
        edge_order=config.edge_order,
        mass_mode=config.mass_mode,
        correction=config.correction,
        sat=sat,
    )
    return scen, mesh, op


def run_scenario(config, initial=None, keep_snapshots=False):
    """Integrate one scenario; numerical failures end the run with status
    ``aborted`` and keep the last valid state."""
    scen, mesh, op = build_problem(config)
    scheme = get_scheme(config.time_scheme)
    law = op.law
    U = interpolate(initial or scen.initial, mesh, op.basis)
    t_end = config.t_end if config.t_end is not None else (None if config.max_steps else scen.t_end)
    max_steps = config.max_steps
    out_dir = Path(config.out_dir) if config.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    report = EntropyReport()
    result = RunResult(config, report, U, 0.0, 0)

    def record(n, t, U):
        nodal = op.nodal_values(U)
        report.record(n, t, op.entropy(U), nodal.min(), nodal.max())
        if keep_snapshots:
            result.snapshots.append((n, t, U.copy()))
        if out_dir is not None:
            write_vtk(mesh, U, out_dir / f"{config.scenario}_{n:06d}.vtk", op.basis)

    t, n = 0.0, 0
    record(n, t, U)
    while True:
        if max_steps is not None and n >= max_steps:
            break
        if t_end is not None and t >= t_end * (1 - 1e-14):
            break
        dt = compute_dt(config.cfl, mesh, U, law)
        if t_end is not None:
            dt = min(dt, t_end - t)
        try:
            U_new = step(scheme, U, dt, op)
        except NumericalError as exc:
            result.status = "aborted"
            result.message = f"step {n + 1}: {exc}"
            break
        if not t + dt > t:
            result.status = "aborted"
            result.message = f"step {n + 1}: time step {dt:.3e} no longer advances t = {t!r}"
            break
        U, t, n = U_new, t + dt, n + 1
        result.state, result.time, result.steps = U, t, n
        if n % config.output_every == 0:
            record(n, t, U)
    if report.step[-1] != n:
        record(n, t, U)
    if out_dir is not None:
        write_entropy_csv(report, out_dir / f"{config.scenario}_entropy.csv")
    return result


def entropy_change(state_t, state_0, mesh, law, quad_order=None, basis="lagrange"):
    """``int eta(u_h(t)) - int eta(u_h(0))`` by volume quadrature."""
    disc = Discretization(mesh, basis, quad_order)
    a = disc.integrate(law.entropy(disc.volume_values(np.asarray(state_t))))
    b = disc.integrate(law.entropy(disc.volume_values(np.asarray(state_0))))
    return a - b

