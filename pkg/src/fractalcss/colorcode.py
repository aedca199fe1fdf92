"""The 2D hexagonal color code, its shrunk lattices, and transversal S.

Geometry: a brick-wall drawing of the hexagonal lattice rolled into a
cylinder (periodic vertically, open left and right).  Vertices sit at
integer points (x, y) with x in 0..W and y mod 2R; horizontal edges join
(x,y)-(x+1,y), vertical edges follow the brick pattern (x+y even) with the
two open columns completed so every boundary vertex is trivalent.  Faces
are the flush hexagons plus the weight-4 half-bricks along the open
columns; colors follow ((x0 - 3y)/2 + 1) mod 3, which makes both open
boundaries miss color 0.  With W = 3m+1 this yields a valid 3-coloring
whose A := color-0 faces avoid both boundaries, so the two shrunk copies
are a rough-rough and a smooth-smooth cylinder surface code, one logical
qubit each, and the color code itself encodes two.

The transversal gate applies S on one part of the vertex bipartition and
S-dagger on the other.  Every face has equally many vertices of both parts
(3-3 on hexagons, 2-2 on bricks), so each X face stabilizer maps exactly
onto itself times the matching Z face stabilizer and the code space is
preserved; on the logicals the gate acts as the CZ between the two encoded
qubits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import CssCode, logical_basis
from .complexes import BULK, Cell, CellComplex
from .gates import ConditionResult, GateCheckReport
from .gf2 import Gf2Matrix, in_rowspace


@dataclass
class ColorCode2D:
    code: CssCode
    vertices: list[tuple[int, int]]
    faces: list[list[int]]  # vertex indices per face
    face_colors: list[int]  # 0 = A, 1 = B, 2 = C
    bipartition: list[int]  # 0/1 per vertex
    edges: list[tuple[int, int]]

    @property
    def n_qubits(self) -> int:
        return len(self.vertices)


def build_color_code_2d(L: int = 1) -> ColorCode2D:
    """A cylinder patch of the hexagonal color code; `L` scales both the
    width (W = 3L + 1 columns of bricks) and the circumference."""
    if L < 1:
        raise ValueError("patch size must be >= 1")
    W = 3 * L + 1
    R = L + 1  # y-period is 2R
    period = 2 * R

    verts = [(x, y) for y in range(period) for x in range(W + 1)]
    v_index = {v: i for i, v in enumerate(verts)}
    bipartition = [(x + y) % 2 for x, y in verts]

    edges: list[tuple[int, int]] = []
    edge_index: dict[tuple, int] = {}

    def add_edge(u, v):
        key = tuple(sorted((v_index[u], v_index[v])))
        if key not in edge_index:
            edge_index[key] = len(edges)
            edges.append(key)

    for x, y in verts:
        if x + 1 <= W:
            add_edge((x, y), (x + 1, y))
        up = (x, (y + 1) % period)
        if (x + y) % 2 == 0 or x == 0 or x == W:
            add_edge((x, y), up)

    faces: list[list[int]] = []
    colors: list[int] = []

    def color_of(x0: int, y: int) -> int:
        return ((x0 - 3 * y) // 2 + 1) % 3

    for y in range(period):
        y1 = (y + 1) % period
        x0 = y % 2
        if x0 == 1:  # left half-brick
            faces.append([v_index[(0, y)], v_index[(1, y)],
                          v_index[(0, y1)], v_index[(1, y1)]])
            colors.append(color_of(-1, y))
        while x0 + 2 <= W:
            faces.append([
                v_index[(x0, y)], v_index[(x0 + 1, y)], v_index[(x0 + 2, y)],
                v_index[(x0, y1)], v_index[(x0 + 1, y1)], v_index[(x0 + 2, y1)],
            ])
            colors.append(color_of(x0, y))
            x0 += 2
        if x0 == W - 1:  # right half-brick
            faces.append([v_index[(W - 1, y)], v_index[(W, y)],
                          v_index[(W - 1, y1)], v_index[(W, y1)]])
            colors.append(color_of(x0, y))

    boundary_colors = set()
    for f, vs in enumerate(faces):
        for v in vs:
            if verts[v][0] in (0, W):
                boundary_colors.add(colors[f])
    assert boundary_colors == {1, 2}, "both open boundaries must miss color 0"

    n = len(verts)
    h = Gf2Matrix(len(faces), n)
    for r, vs in enumerate(faces):
        for v in vs:
            h.set(r, v, 1)
    code = CssCode(
        n_qubits=n, hx=h, hz=h.copy(), grading=1,
        qubit_cells=list(range(n)), x_anchor_cells=[], z_anchor_cells=[],
        source=None,
    )
    return ColorCode2D(code, verts, faces, colors, bipartition, edges)


def shrunk_lattices(cc: ColorCode2D) -> tuple[CellComplex, CellComplex]:
    """The two shrunk lattices: faces of color A (resp. B) contract to
    vertices; the edges are the lattice edges bordering the two remaining
    colors; the faces are the remaining colors' faces, each bounded by its
    edges of that kind.  Boundary faces whose induced chain is not a cycle
    drop out (they sit along the shrunk lattice's own boundary)."""
    return _shrink(cc, 0), _shrink(cc, 1)


def _shrink(cc: ColorCode2D, color: int) -> CellComplex:
    face_of_vertex: list[dict[int, int]] = [dict() for _ in cc.vertices]
    for f, vs in enumerate(cc.faces):
        for v in vs:
            face_of_vertex[v][cc.face_colors[f]] = f

    edge_faces: list[list[int]] = [[] for _ in cc.edges]
    face_edge_set = []
    for f, vs in enumerate(cc.faces):
        vset = set(vs)
        face_edge_set.append(
            {e for e, (u, v) in enumerate(cc.edges) if u in vset and v in vset}
        )
        for e in face_edge_set[-1]:
            edge_faces[e].append(f)

    new_vertices = [f for f in range(len(cc.faces)) if cc.face_colors[f] == color]
    vertex_pos = {f: i for i, f in enumerate(new_vertices)}

    keep_edges = []
    for e, fs in enumerate(edge_faces):
        cols = {cc.face_colors[f] for f in fs}
        if len(fs) == 2 and color not in cols:
            keep_edges.append(e)
    edge_pos = {e: i for i, e in enumerate(keep_edges)}

    def endpoint_vertices(e: int) -> list[int]:
        out = []
        for v in cc.edges[e]:
            f = face_of_vertex[v].get(color)
            if f is not None:
                out.append(vertex_pos[f])
        return out

    d1_entries = []
    for i, e in enumerate(keep_edges):
        for r in endpoint_vertices(e):
            d1_entries.append((r, i))

    new_faces = []
    d2_entries = []
    for f in range(len(cc.faces)):
        if cc.face_colors[f] == color:
            continue
        boundary_edges = sorted(e for e in face_edge_set[f] if e in edge_pos)
        if not boundary_edges:
            continue
        chain: dict[int, int] = {}
        for e in boundary_edges:
            for r in endpoint_vertices(e):
                chain[r] = chain.get(r, 0) ^ 1
        if any(chain.values()):
            continue  # open chain: boundary face of the shrunk lattice
        col = len(new_faces)
        new_faces.append(f)
        for e in boundary_edges:
            d2_entries.append((edge_pos[e], col))

    cells = [
        [Cell(((f, f), (0, 0)), BULK) for f in new_vertices],
        [Cell(((e, e), (1, 1)), BULK) for e in keep_edges],
        [Cell(((f, f), (2, 2)), BULK) for f in new_faces],
    ]
    boundary = [
        Gf2Matrix.zeros(0, len(new_vertices)),
        Gf2Matrix.from_entries(len(new_vertices), len(keep_edges), d1_entries),
        Gf2Matrix.from_entries(len(keep_edges), len(new_faces), d2_entries),
    ]
    return CellComplex(2, cells, boundary, "open", "shrunk", (None, None))


def check_transversal_s_colorcode(
    cc: ColorCode2D, bipartition: list[int] | None = None
) -> GateCheckReport:
    """Verify that S on one vertex class and S-dagger on the other preserves
    the stabilizer group and acts as the logical CZ.

    Per face: applying the gate maps the X face stabilizer to
    i**(n_a - n_b) times itself and the Z face stabilizer, so the face must
    have n_a = n_b (mod 4).  On the logicals the induced map is
    X(1) -> X(1) Z(2), X(2) -> Z(1) X(2): even self-overlap of each
    logical-X support and odd mutual overlap.
    """
    part = bipartition if bipartition is not None else cc.bipartition
    conds = []

    bad = []
    for f, vs in enumerate(cc.faces):
        n_a = sum(1 for v in vs if part[v] == 0)
        n_b = len(vs) - n_a
        if (n_a - n_b) % 4 != 0:
            bad.append((f"face{f}", f"balance{n_a}-{n_b}", (n_a - n_b) % 4))
    conds.append(ConditionResult("S-face-balance", not bad, tuple(bad[:8])))

    zs, xs = logical_basis(cc.code)
    if len(xs) != 2:
        conds.append(
            ConditionResult("S-logical-map", False, ((f"k={len(xs)}", "expect2", 0),))
        )
        return GateCheckReport(tuple(conds))

    supports = [op.x_support for op in xs]
    bad = []
    for i, s in enumerate(supports):
        if s.weight() % 2:
            bad.append((f"Xbar{i}", "odd-weight", 1))
    cross = supports[0].dot(supports[1])
    if cross != 1:
        bad.append(("Xbar0", "Xbar1", cross))
    # the induced Z part must land back in the stabilizer group together
    # with the dual logical: Z^{supp X1} ~ Zbar2 (and vice versa)
    rref, pivots = cc.code.hz.rref()
    for i, s in enumerate(supports):
        leftover = s ^ zs[1 - i].z_support
        if not in_rowspace(rref, pivots, leftover):
            bad.append((f"Xbar{i}", f"Zbar{1 - i}", "image-not-stabilizer"))
    conds.append(ConditionResult("S-logical-map", not bad, tuple(bad[:8])))
    return GateCheckReport(tuple(conds))
