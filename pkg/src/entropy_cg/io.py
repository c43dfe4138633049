"""Run configuration, entropy CSV and legacy VTK output."""

import csv
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .basis import make_basis
from .errors import ConfigurationError

__all__ = [
    "SchemeConfig",
    "EntropyReport",
    "parse_config",
    "load_config",
    "write_entropy_csv",
    "read_entropy_csv",
    "write_vtk",
    "refined_cells",
    "CSV_HEADER",
]

CSV_HEADER = ("time", "entropy", "entropy_change", "min_u", "max_u")


@dataclass
class SchemeConfig:
    """Parameters of one run. ``mesh_n`` counts subdivisions per side for
    square scenarios and rings for disk scenarios."""

    scenario: str
    basis: str = "lagrange"
    degree: int = 3
    volume_order: int | None = None
    edge_order: int | None = None
    sat_order: int = 5
    mass_mode: str = "exact"
    correction: bool = True
    sat_mode: str = "quadrature"
    cfl: float = 0.1
    time_scheme: str = "ssprk33"
    t_end: float | None = None
    max_steps: int | None = None
    output_every: int = 10
    mesh_n: int | None = None
    mesh_file: str | None = None
    out_dir: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not 1 <= self.degree <= 4:
            raise ConfigurationError(f"degree must lie in [1, 4], got {self.degree}")
        for name in ("volume_order", "edge_order", "sat_order", "cfl", "t_end", "max_steps", "output_every", "mesh_n"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ConfigurationError(f"{name} must be positive, got {v}")
        if self.basis not in ("lagrange", "bernstein"):
            raise ConfigurationError(f"unknown basis {self.basis!r}")
        if self.mass_mode not in ("exact", "under_integrated"):
            raise ConfigurationError(f"unknown mass_mode {self.mass_mode!r}")
        if self.sat_mode not in ("closed_form", "quadrature", "off"):
            raise ConfigurationError(f"unknown sat_mode {self.sat_mode!r}")


_BOOL = {"true": True, "yes": True, "on": True, "1": True, "false": False, "no": False, "off": False, "0": False}
_INT_KEYS = {"degree", "volume_order", "edge_order", "sat_order", "max_steps", "output_every", "mesh_n"}
_FLOAT_KEYS = {"cfl", "t_end"}


def parse_config(text):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(SchemeConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key == "correction":
                values[key] = _BOOL[value.lower()]
            else:
                values[key] = value
        except (ValueError, KeyError):
            raise ConfigurationError(f"line {lineno}: bad value {value!r} for {key!r}") from None
    if "scenario" not in values:
        raise ConfigurationError("missing required key 'scenario'")
    return SchemeConfig(**values)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


@dataclass
class EntropyReport:
    time: list = field(default_factory=list)
    entropy: list = field(default_factory=list)
    entropy_change: list = field(default_factory=list)
    min_u: list = field(default_factory=list)
    max_u: list = field(default_factory=list)
    step: list = field(default_factory=list)

    def record(self, step, t, entropy, u_min, u_max):
        if self.time and not t > self.time[-1]:
            raise ValueError(f"timestamps must increase: {t} after {self.time[-1]}")
        change = 0.0 if not self.entropy else entropy - self.entropy[0]
        self.step.append(int(step))
        self.time.append(float(t))
        self.entropy.append(float(entropy))
        self.entropy_change.append(float(change))
        self.min_u.append(float(u_min))
        self.max_u.append(float(u_max))

    def __len__(self):
        return len(self.time)

    def rows(self):
        return list(zip(self.time, self.entropy, self.entropy_change, self.min_u, self.max_u))


def _fmt(x):
    return format(x, ".17g")


def write_entropy_csv(report, path):
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for row in report.rows():
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write entropy CSV {path}: {exc}") from exc


def read_entropy_csv(path):
    report = EntropyReport()
    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if tuple(header) != CSV_HEADER:
            raise ConfigurationError(f"unexpected CSV header {header}")
        for row in r:
            t, s, c, lo, hi = (float(v) for v in row)
            report.time.append(t)
            report.entropy.append(s)
            report.entropy_change.append(c)
            report.min_u.append(lo)
            report.max_u.append(hi)
    return report


def refined_cells(p):
    """Sub-triangles of the degree-``p`` reference lattice as local DoF indices."""
    basis = make_basis("lagrange", p)
    lookup = {tuple(m): n for n, m in enumerate(basis.multi_indices.tolist())}

    def at(a, b):
        return lookup[(p - a - b, a, b)]

    cells = []
    for b in range(p):
        for a in range(p - b):
            cells.append((at(a, b), at(a + 1, b), at(a, b + 1)))
            if a + b + 2 <= p:
                cells.append((at(a + 1, b), at(a + 1, b + 1), at(a, b + 1)))
    return np.array(cells, dtype=int)


def write_vtk(mesh, state, path, basis="lagrange", title="entropy_cg solution"):
    """Legacy ASCII unstructured grid; every element is split into ``p**2``
    linear sub-triangles through its DoF points, point data ``u``."""
    if isinstance(basis, str):
        basis = make_basis(basis, mesh.degree)
    U = np.asarray(getattr(state, "values", state), dtype=float)
    local = U[mesh.elements] @ basis.values(basis.nodes).T
    nodal = np.empty(mesh.n_dofs)
    nodal[mesh.elements] = local
    sub = refined_cells(mesh.degree)
    cells = mesh.elements[:, sub].reshape(-1, 3)
    lines = [
        "# vtk DataFile Version 2.0",
        title,
        "ASCII",
        "DATASET UNSTRUCTURED_GRID",
        f"POINTS {mesh.n_dofs} double",
    ]
    lines += [f"{x!r} {y!r} 0.0" for x, y in mesh.dof_coords.tolist()]
    lines.append(f"CELLS {len(cells)} {4 * len(cells)}")
    lines += [f"3 {i} {j} {k}" for i, j, k in cells.tolist()]
    lines.append(f"CELL_TYPES {len(cells)}")
    lines += ["5"] * len(cells)
    lines += [f"POINT_DATA {mesh.n_dofs}", "SCALARS u double 1", "LOOKUP_TABLE default"]
    lines += [repr(float(v)) for v in nodal]
    path = Path(path)
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write VTK file {path}: {exc}") from exc
