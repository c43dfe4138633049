import io
import subprocess
import sys

import pytest

from entropy_cg import __version__
from entropy_cg.cli import cli_main
from entropy_cg.mesh import import_mesh


def run(argv):
    out = io.StringIO()
    return cli_main(argv, out=out), out.getvalue()


def test_certify_stable():
    code, text = run(["certify", "--degree", "1", "--elements", "1", "--speed", "1", "--tau", "-1"])
    assert code == 0
    assert "eigenvalues: -1 -1" in text
    assert text.strip().endswith("STABLE") and "UNSTABLE" not in text


def test_certify_unstable():
    code, text = run(["certify", "--degree", "1", "--elements", "1", "--speed", "1", "--tau", "0"])
    assert code == 0
    assert "max eigenvalue: 1\n" in text
    assert text.strip().endswith("UNSTABLE")


def test_run_missing_config(capsys):
    code, _ = run(["run", "missing.cfg"])
    assert code == 1
    assert "not found" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["explode"], ["certify", "--degree", "1"], ["version", "--loud"], []])
def test_usage_errors(argv, capsys):
    code, _ = run(argv)
    assert code == 1
    assert "usage:" in capsys.readouterr().err


def test_certify_bad_degree(capsys):
    code, _ = run(["certify", "--degree", "7", "--elements", "1", "--tau", "0"])
    assert code == 1
    assert "degree" in capsys.readouterr().err


def test_version():
    assert run(["version"]) == (0, __version__ + "\n")


@pytest.mark.parametrize("shape,n,count", [("square", 3, 18), ("disk", 2, 24)])
def test_mesh_gen(tmp_path, shape, n, count):
    out = tmp_path / "m.txt"
    code, text = run(["mesh-gen", "--n", str(n), "--out", str(out), "--shape", shape])
    assert code == 0 and f"{count} triangles" in text
    assert import_mesh(out.read_text(), 2).n_elements == count


def test_run_config(tmp_path):
    cfg = tmp_path / "a.cfg"
    cfg.write_text(f"scenario = burgers_bump\ndegree = 1\nmesh_n = 3\nmax_steps = 3\nout_dir = {tmp_path / 'out'}\n")
    code, text = run(["run", str(cfg)])
    assert code == 0 and "3 steps" in text
    assert (tmp_path / "out" / "burgers_bump_entropy.csv").exists()


def test_run_invalid_config(tmp_path, capsys):
    cfg = tmp_path / "a.cfg"
    cfg.write_text("scenario = burgers_bump\nspeed = 3\n")
    assert run(["run", str(cfg)])[0] == 1
    assert "unknown key" in capsys.readouterr().err


def test_run_numerical_abort(tmp_path, capsys):
    cfg = tmp_path / "a.cfg"
    cfg.write_text("scenario = advect_bump\ndegree = 3\nmesh_n = 2\nmass_mode = under_integrated\nmax_steps = 3\n")
    assert run(["run", str(cfg)])[0] == 2
    assert "ABORTED" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "entropy_cg", "version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == __version__
