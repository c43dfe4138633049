"""Entropy-stable continuous Galerkin for scalar 2D conservation laws.

Residual-distribution element residuals, an element-local entropy
correction, a nonlinear SAT boundary penalty and strong-stability-preserving
Runge-Kutta time stepping, plus a 1D linear stability certificate.
"""

__version__ = "0.1.0"

from .basis import BasisSet, eval_basis, eval_gradients, make_basis
from .certify import StabilityCertificate, build_1d_operators, certify, inflow_penalty
from .entropy_fix import CorrectionReport, correction_term, corrections, element_entropy_error
from .errors import (
    ConfigurationError,
    DomainError,
    EntropyCGError,
    GeometryError,
    MeshParseError,
    NumericalError,
    ValidationError,
)
from .flux import Advection, Burgers2D, ConservationLaw, CosFlux, Rotation, builtin_law
from .io import EntropyReport, SchemeConfig, load_config, parse_config, write_entropy_csv, write_vtk
from .mesh import Mesh, build_mesh, generate_disk_mesh, generate_square_mesh, import_mesh, read_mesh
from .quadrature import QuadratureRule, segment_rule, triangle_rule
from .sat import BoundaryOperatorSpec, SatOperator, clamp_Pi, eval_F, sat_contribution
from .scenarios import SCENARIOS, RunResult, entropy_change, run_scenario
from .solver import SemiDiscrete
from .spatial import Discretization, assemble_mass, assemble_rhs, element_residual, interpolate
from .time_march import SCHEMES, TimeScheme, compute_dt, get_scheme, step
