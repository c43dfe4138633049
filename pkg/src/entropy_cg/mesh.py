"""Conformal triangulations with continuous high-order DoF layouts.

Global DoF numbering: mesh vertices first, then ``p - 1`` DoFs per edge
(walked from the lower to the higher vertex index, edges numbered by first
appearance), then the interior DoFs of every element in element order.
"""

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .basis import LOCAL_EDGES, reference_multi_indices
from .errors import ConfigurationError, MeshParseError, ValidationError

__all__ = [
    "Mesh",
    "BoundaryFace",
    "build_mesh",
    "generate_square_mesh",
    "generate_disk_mesh",
    "import_mesh",
    "read_mesh",
    "format_mesh",
    "boundary_faces_with_normals",
]


@dataclass(frozen=True)
class BoundaryFace:
    element: int
    local_edge: int
    normal: tuple
    length: float


@dataclass(frozen=True, eq=False)
class Mesh:
    vertices: np.ndarray  # (nv, 2)
    triangles: np.ndarray  # (nt, 3) vertex indices, counter-clockwise
    degree: int
    elements: np.ndarray  # (nt, nloc) global DoF indices in reference order
    dof_coords: np.ndarray  # (ndof, 2)
    face_element: np.ndarray  # (nb,)
    face_local_edge: np.ndarray  # (nb,)
    face_normal: np.ndarray  # (nb, 2)
    face_length: np.ndarray  # (nb,)
    areas: np.ndarray = field(repr=False)

    @property
    def n_elements(self):
        return len(self.triangles)

    @property
    def n_dofs(self):
        return len(self.dof_coords)

    @property
    def nodes(self):
        return self.dof_coords

    @property
    def boundary_faces(self):
        return boundary_faces_with_normals(self)

    def element_vertices(self, e):
        return self.vertices[self.triangles[e]]

    def inradius_diameters(self):
        v = self.vertices[self.triangles]
        sides = np.linalg.norm(v[:, [1, 2, 0]] - v, axis=2)
        return 4.0 * self.areas / sides.sum(axis=1)

    def face_vertices(self):
        """Start/end vertex coordinates of every boundary face, ``(nb, 2, 2)``."""
        edges = np.array(LOCAL_EDGES)[self.face_local_edge]
        tri = self.triangles[self.face_element]
        a = tri[np.arange(len(tri)), edges[:, 0]]
        b = tri[np.arange(len(tri)), edges[:, 1]]
        return np.stack([self.vertices[a], self.vertices[b]], axis=1)


def _signed_areas(vertices, triangles):
    v = vertices[triangles]
    d1 = v[:, 1] - v[:, 0]
    d2 = v[:, 2] - v[:, 0]
    return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def _check_hanging_nodes(vertices, boundary_edges):
    bverts = np.unique(np.asarray(boundary_edges).ravel())
    pts = vertices[bverts]
    for a, b in boundary_edges:
        pa, pb = vertices[a], vertices[b]
        d = pb - pa
        L2 = d @ d
        rel = pts - pa
        t = rel @ d / L2
        dist = np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0]) / np.sqrt(L2)
        hit = (t > 1e-10) & (t < 1 - 1e-10) & (dist < 1e-10 * np.sqrt(L2))
        if np.any(hit):
            v = bverts[np.argmax(hit)]
            raise ValidationError(f"non-conformal connectivity: vertex {v} hangs on edge ({a}, {b})")


def build_mesh(vertices, triangles, p):
    """Validate a vertex/triangle list and lay out degree-``p`` DoFs."""
    if not 1 <= p <= 4:
        raise ConfigurationError(f"degree must lie in [1, 4], got {p}")
    vertices = np.asarray(vertices, dtype=float)
    triangles = np.asarray(triangles, dtype=int)
    if vertices.ndim != 2 or vertices.shape[1] != 2:
        raise ValidationError("vertices must be 2D")
    if triangles.ndim != 2 or triangles.shape[1] != 3 or len(triangles) == 0:
        raise ValidationError("triangles must be a non-empty (nt, 3) index array")
    nv = len(vertices)
    bad = np.flatnonzero((triangles < 0).any(axis=1) | (triangles >= nv).any(axis=1))
    if bad.size:
        raise ValidationError(f"triangle {bad[0]} references a vertex outside [0, {nv})")
    dup = np.flatnonzero(
        (triangles[:, 0] == triangles[:, 1])
        | (triangles[:, 1] == triangles[:, 2])
        | (triangles[:, 0] == triangles[:, 2])
    )
    if dup.size:
        raise ValidationError(f"triangle {dup[0]} repeats a vertex")
    areas = _signed_areas(vertices, triangles)
    bad = np.flatnonzero(areas <= 0)
    if bad.size:
        raise ValidationError(
            f"triangle {bad[0]} has non-positive signed area {areas[bad[0]]:.3e} "
            "(vertices must be counter-clockwise)"
        )

    # directed edge -> (element, local edge)
    directed = {}
    for e, tri in enumerate(triangles):
        for le, (a, b) in enumerate(LOCAL_EDGES):
            key = (int(tri[a]), int(tri[b]))
            if key in directed:
                raise ValidationError(
                    f"non-conformal connectivity: edge {key} is traversed twice in the same direction"
                )
            directed[key] = (e, le)
    undirected = defaultdict(list)
    for (a, b), owner in directed.items():
        undirected[(min(a, b), max(a, b))].append(owner)
    boundary = []
    for key, owners in undirected.items():
        if len(owners) > 2:
            raise ValidationError(f"non-conformal connectivity: edge {key} shared by {len(owners)} triangles")
        if len(owners) == 1:
            boundary.append(key)
    if boundary:
        _check_hanging_nodes(vertices, boundary)

    mi = reference_multi_indices(p)
    nloc = len(mi)
    elements = np.empty((len(triangles), nloc), dtype=int)
    elements[:, :3] = triangles
    next_dof = nv
    edge_start = {}
    for e, tri in enumerate(triangles):
        for le, (a, b) in enumerate(LOCAL_EDGES):
            va, vb = int(tri[a]), int(tri[b])
            key = (min(va, vb), max(va, vb))
            if key not in edge_start:
                edge_start[key] = next_dof
                next_dof += p - 1
            g = np.arange(edge_start[key], edge_start[key] + p - 1)
            if va > vb:
                g = g[::-1]
            elements[e, 3 + le * (p - 1): 3 + (le + 1) * (p - 1)] = g
    n_int = nloc - 3 * p
    if n_int:
        elements[:, 3 * p:] = next_dof + np.arange(len(triangles) * n_int).reshape(-1, n_int)
        next_dof += len(triangles) * n_int

    # DoF coordinates through the affine map of each element
    bary = mi / p
    v = vertices[triangles]
    local_xy = np.einsum("qc,ecd->eqd", bary, v)
    dof_coords = np.empty((next_dof, 2))
    dof_coords[elements] = local_xy

    fe, fl, fn, flen = [], [], [], []
    for key in boundary:
        a, b = key
        owner = directed.get((a, b)) or directed[(b, a)]
        e, le = owner
        tri = triangles[e]
        pa = vertices[tri[LOCAL_EDGES[le][0]]]
        pb = vertices[tri[LOCAL_EDGES[le][1]]]
        d = pb - pa
        L = float(np.hypot(d[0], d[1]))
        fe.append(e)
        fl.append(le)
        # counter-clockwise element: outward normal is the edge direction rotated clockwise
        fn.append((d[1] / L, -d[0] / L))
        flen.append(L)
    order = np.lexsort((np.array(fl), np.array(fe))) if fe else np.array([], dtype=int)
    return Mesh(
        vertices=vertices,
        triangles=triangles,
        degree=int(p),
        elements=elements,
        dof_coords=dof_coords,
        face_element=np.array(fe, dtype=int)[order],
        face_local_edge=np.array(fl, dtype=int)[order],
        face_normal=np.array(fn, dtype=float).reshape(-1, 2)[order],
        face_length=np.array(flen, dtype=float)[order],
        areas=areas,
    )


def generate_square_mesh(n, p):
    """Uniform mesh of ``[0, 1]^2``; each cell is split along its
    lower-left to upper-right diagonal."""
    if not 1 <= p <= 4:
        raise ConfigurationError(f"degree must lie in [1, 4], got {p}")
    if n < 1:
        raise ConfigurationError(f"need at least one subdivision, got {n}")
    x = np.linspace(0.0, 1.0, n + 1)
    X, Y = np.meshgrid(x, x)
    vertices = np.column_stack([X.ravel(), Y.ravel()])
    tris = []
    for j in range(n):
        for i in range(n):
            a = i + (n + 1) * j
            b, c, d = a + 1, a + n + 2, a + n + 1
            tris += [(a, b, c), (a, c, d)]
    return build_mesh(vertices, np.array(tris), p)


def generate_disk_mesh(n_rings, p, radius=1.0):
    """Delaunay mesh of the disk from ``n_rings`` concentric rings.

    Ring ``k`` carries ``6 k`` points, which gives roughly ``6 n_rings**2``
    triangles; boundary vertices lie exactly on the circle.
    """
    from scipy.spatial import Delaunay

    if n_rings < 1:
        raise ConfigurationError("need at least one ring")
    pts = [(0.0, 0.0)]
    for k in range(1, n_rings + 1):
        r = radius * k / n_rings
        m = 6 * k
        theta = 2 * np.pi * (np.arange(m) + 0.5 * (k % 2)) / m
        pts += list(zip(r * np.cos(theta), r * np.sin(theta)))
    pts = np.array(pts)
    tri = Delaunay(pts).simplices.copy()
    areas = _signed_areas(pts, tri)
    flip = areas < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    keep = np.abs(areas) > 1e-12 * radius**2
    return build_mesh(pts, tri[keep], p)


def _parse_numbers(line, lineno, count, kind):
    parts = line.split()
    if len(parts) != count:
        raise MeshParseError(f"expected {count} values, found {len(parts)}", lineno)
    try:
        return [kind(s) for s in parts]
    except ValueError:
        raise MeshParseError(f"cannot parse {line.strip()!r} as {kind.__name__} values", lineno) from None


def read_mesh(text):
    """Parse the ASCII vertex/triangle format into plain arrays."""
    lines = [
        (no, ln) for no, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise MeshParseError("empty mesh document", 1)
    no, ln = lines[0]
    nv, nt = _parse_numbers(ln, no, 2, int)
    if nv < 3 or nt < 1:
        raise MeshParseError(f"invalid header counts nv={nv}, nt={nt}", no)
    if len(lines) < 1 + nv + nt:
        last = lines[-1][0]
        raise MeshParseError(f"expected {nv} vertices and {nt} triangles, document ends early", last)
    if len(lines) > 1 + nv + nt:
        raise MeshParseError("trailing content after the triangle list", lines[1 + nv + nt][0])
    verts = [_parse_numbers(ln, no, 2, float) for no, ln in lines[1:1 + nv]]
    tris = [_parse_numbers(ln, no, 3, int) for no, ln in lines[1 + nv:]]
    return np.array(verts), np.array(tris, dtype=int)


def import_mesh(text, p):
    vertices, triangles = read_mesh(text)
    return build_mesh(vertices, triangles, p)


def format_mesh(mesh):
    """Serialize the vertex/triangle skeleton of a mesh in the ASCII format."""
    out = [f"{len(mesh.vertices)} {len(mesh.triangles)}"]
    out += [f"{x!r} {y!r}" for x, y in mesh.vertices.tolist()]
    out += [f"{i} {j} {k}" for i, j, k in mesh.triangles.tolist()]
    return "\n".join(out) + "\n"


def boundary_faces_with_normals(mesh):
    return [
        BoundaryFace(int(e), int(le), (float(n[0]), float(n[1])), float(L))
        for e, le, n, L in zip(mesh.face_element, mesh.face_local_edge, mesh.face_normal, mesh.face_length)
    ]
