import numpy as np
import pytest

from entropy_cg.errors import ConfigurationError, MeshParseError, ValidationError
from entropy_cg.mesh import (
    build_mesh,
    format_mesh,
    generate_disk_mesh,
    generate_square_mesh,
    import_mesh,
)

UNIT_SQUARE = """4 2
0 0
1 0
1 1
0 1
0 1 2
0 2 3
"""


@pytest.mark.parametrize("n,p,n_tri,n_dof", [(1, 1, 2, 4), (2, 1, 8, 9), (2, 2, 8, 25)])
def test_square_counts(n, p, n_tri, n_dof):
    mesh = generate_square_mesh(n, p)
    assert (mesh.n_elements, mesh.n_dofs) == (n_tri, n_dof)


@pytest.mark.parametrize("n", [1, 2, 5])
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_shared_dofs_match_coordinate_hashing(n, p):
    """Each distinct physical DoF point gets exactly one global number."""
    mesh = generate_square_mesh(n, p)
    assert mesh.n_dofs == (n * p + 1) ** 2
    keys = {}
    for e in range(mesh.n_elements):
        for g in mesh.elements[e]:
            key = tuple(np.round(mesh.dof_coords[g], 12))
            assert keys.setdefault(key, g) == g
    assert len(keys) == mesh.n_dofs


@pytest.mark.parametrize("p", [2, 3, 4])
def test_local_dofs_sit_at_reference_lattice(p):
    mesh = generate_disk_mesh(3, p)
    from entropy_cg.basis import make_basis

    bary = make_basis("lagrange", p).nodes
    for e in range(mesh.n_elements):
        expect = bary @ mesh.vertices[mesh.triangles[e]]
        np.testing.assert_allclose(mesh.dof_coords[mesh.elements[e]], expect, atol=1e-14)


def test_import_matches_generator_up_to_permutation():
    imported = import_mesh(UNIT_SQUARE, 1)
    generated = generate_square_mesh(1, 1)

    def shapes(m):
        return sorted(tuple(sorted(map(tuple, m.vertices[t].tolist()))) for t in m.triangles)

    assert shapes(imported) == shapes(generated)
    assert imported.n_dofs == generated.n_dofs


def test_format_round_trip():
    mesh = generate_disk_mesh(4, 2)
    again = import_mesh(format_mesh(mesh), 2)
    np.testing.assert_array_equal(again.vertices, mesh.vertices)
    np.testing.assert_array_equal(again.elements, mesh.elements)


def test_out_of_range_vertex_rejected():
    text = UNIT_SQUARE.replace("0 2 3", "0 2 7")
    with pytest.raises(ValidationError, match="outside"):
        import_mesh(text, 1)


@pytest.mark.parametrize(
    "text,line",
    [
        ("4 2\n0 0\n1 0\nx 1\n0 1\n0 1 2\n0 2 3\n", 4),
        ("4 2\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2\n", 7),
        ("4 3\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n", 7),
        ("four two\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MeshParseError) as info:
        import_mesh(text, 1)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_clockwise_triangle_rejected():
    with pytest.raises(ValidationError, match="counter-clockwise"):
        build_mesh([[0, 0], [1, 0], [0, 1]], [[0, 2, 1]], 1)


def test_hanging_node_rejected():
    # big triangle on the left, two small ones on the right share a midpoint
    verts = [[0, 0], [1, 0], [1, 1], [1, 0.5], [2, 0.5]]
    tris = [[0, 1, 2], [1, 4, 3], [3, 4, 2]]
    with pytest.raises(ValidationError, match="non-conformal"):
        build_mesh(verts, tris, 1)


def test_edge_shared_three_times_rejected():
    verts = [[0, 0], [1, 0], [0.5, 1], [0.5, -1], [0.5, 2]]
    tris = [[0, 1, 2], [1, 0, 3], [0, 1, 4]]
    with pytest.raises(ValidationError):
        build_mesh(verts, tris, 1)


@pytest.mark.parametrize("p", [0, 5])
def test_degree_out_of_range(p):
    with pytest.raises(ConfigurationError):
        generate_square_mesh(2, p)


def test_square_normals_axis_aligned():
    mesh = generate_square_mesh(4, 2)
    allowed = {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    got = {tuple(np.round(n, 14) + 0.0) for n in mesh.face_normal}
    assert got == allowed
    assert len(mesh.boundary_faces) == 16


@pytest.mark.parametrize("mesh", [generate_square_mesh(5, 1), generate_disk_mesh(6, 1)], ids=["square", "disk"])
def test_closed_boundary_normals(mesh):
    np.testing.assert_allclose(np.linalg.norm(mesh.face_normal, axis=1), 1.0, atol=1e-13)
    total = (mesh.face_normal * mesh.face_length[:, None]).sum(axis=0)
    np.testing.assert_allclose(total, 0.0, atol=1e-12)


def test_disk_normals_point_outward():
    mesh = generate_disk_mesh(8, 1)
    mid = mesh.face_vertices().mean(axis=1)
    assert np.all(np.einsum("bd,bd->b", mesh.face_normal, mid) > 0)


def test_large_disk_boundary_on_circle():
    mesh = generate_disk_mesh(24, 1)
    assert mesh.n_elements >= 3400
    h = mesh.face_length.max()
    r = np.linalg.norm(mesh.face_vertices(), axis=2)
    assert np.all(np.abs(r - 1.0) <= 2 * h)
    np.testing.assert_allclose(r, 1.0, atol=1e-14)


@pytest.mark.parametrize("rings,expected", [(13, 1014), (18, 1944)])
def test_disk_sizes_used_by_scenarios(rings, expected):
    assert generate_disk_mesh(rings, 1).n_elements == expected


def test_total_area():
    assert generate_square_mesh(3, 1).areas.sum() == pytest.approx(1.0, abs=1e-14)
    disk = generate_disk_mesh(12, 1)
    # inscribed polygon area of the outer ring
    m = 72
    assert disk.areas.sum() == pytest.approx(0.5 * m * np.sin(2 * np.pi / m), rel=1e-12)
