"""Command-line driver.

Exit status: 0 success, 1 validation or usage error, 2 numerical abort.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .certify import build_1d_operators, certify, inflow_penalty
from .errors import EntropyCGError
from .io import load_config
from .mesh import format_mesh, generate_disk_mesh, generate_square_mesh
from .scenarios import run_scenario

EXIT_OK, EXIT_INVALID, EXIT_ABORT = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _parser():
    parser = _Parser(prog="entropy-cg", description="Entropy-stable continuous Galerkin with SAT boundaries.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a scenario from a config file")
    run.add_argument("config")

    cert = sub.add_parser("certify", help="1D linear stability certificate")
    cert.add_argument("--degree", type=int, required=True)
    cert.add_argument("--elements", type=int, required=True)
    cert.add_argument("--speed", type=float, default=1.0)
    cert.add_argument("--tau", type=float, required=True)

    mg = sub.add_parser("mesh-gen", help="write a generated mesh in the ASCII format")
    mg.add_argument("--n", type=int, required=True, help="subdivisions per side (square) or rings (disk)")
    mg.add_argument("--out", required=True)
    mg.add_argument("--shape", choices=("square", "disk"), default="square")

    sub.add_parser("version", help="print the package version")
    return parser


def _cmd_run(args, out):
    config = load_config(args.config)
    result = run_scenario(config)
    rep = result.report
    print(f"scenario {config.scenario}: {result.steps} steps, t = {result.time!r}", file=out)
    print(f"final entropy change {rep.entropy_change[-1]!r}, u in [{rep.min_u[-1]!r}, {rep.max_u[-1]!r}]", file=out)
    if result.aborted:
        print(f"ABORTED: {result.message}", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_OK


def _cmd_certify(args, out):
    M, Q = build_1d_operators(args.degree, args.elements)
    cert = certify(M, Q, args.speed, inflow_penalty(len(M), args.tau))
    eig = " ".join(format(float(v), ".6g") for v in np.sort(cert.eigenvalues))
    print(f"eigenvalues: {eig}", file=out)
    print(f"max eigenvalue: {cert.max_eigenvalue:.6g}", file=out)
    print(cert.verdict, file=out)
    return EXIT_OK


def _cmd_mesh_gen(args, out):
    gen = generate_square_mesh if args.shape == "square" else generate_disk_mesh
    mesh = gen(args.n, 1)
    try:
        Path(args.out).write_text(format_mesh(mesh))
    except OSError as exc:
        raise EntropyCGError(f"cannot write {args.out}: {exc}") from None
    print(f"wrote {mesh.n_elements} triangles to {args.out}", file=out)
    return EXIT_OK


def cli_main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    handlers = {"run": _cmd_run, "certify": _cmd_certify, "mesh-gen": _cmd_mesh_gen}
    if args.command == "version":
        print(__version__, file=out)
        return EXIT_OK
    try:
        return handlers[args.command](args, out)
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (EntropyCGError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
