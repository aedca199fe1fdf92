"""Hypercubic cell complexes in 2..4 dimensions with fractal holes.

Geometry convention
-------------------
Every cell is an axis-aligned box stored in *doubled* integer coordinates so
that half-integer positions stay exact: a unit interval of the physical
lattice spans 2 doubled units.  A cell's box is a tuple of per-axis
``(lo, hi)`` pairs; an axis with ``lo == hi`` is degenerate, an extended
axis always spans exactly 2 doubled units.  The grade of a cell is the
number of extended axes.

Two lattice styles are built from per-axis 1D factors:

* ``plain``: every axis is a full interval with vertices at even
  coordinates ``0, 2, ..., 2L`` (the open cube: ``(L+1)**n`` vertices), or a
  circle of period ``2L`` for the torus.  This is the style used for
  homology and duality computations.
* ``code``: the cellulation that underlies the standard surface code:
  axes carrying e-boundaries (rough) are full intervals whose end planes
  carry ``OuterE`` labels, while the remaining smooth axes place vertices
  at the L cell centers (odd coordinates ``1, 3, ..., 2L-1``) so that a
  rough-direction edge column exists for every transverse unit cell.  With
  this choice the fractal hole of side q blocks exactly q**(n-1) columns
  and the minimum-area logical branes reproduce the Sierpinski-carpet
  areas exactly.

Boundary labels are short strings: ``bulk``, ``oE<k>``/``oM<k>`` for outer
hypersurface patches (patch id ``2*axis + side``), ``hE<k>``/``hM<k>`` for
hole surfaces.  Outer labels are assigned with E-priority at patch corners
so every labeled patch is closed under the boundary map.

Hole conventions (see :func:`punch_fractal`):

* plain style: delete the cells strictly interior to the hole box and
  label the surviving surface cells; the number of surviving top cells
  after level l is ``(p**n - q**n)**l``.
* code style, m-hole: delete every cell whose closed box intersects the
  closed hole box (the measured-out region of qubits, with stabilizer
  supports truncated accordingly).
* code style, e-hole: mark the strictly interior cells together with
  their faces as an e-patch; the code builder deletes the patch, leaving
  dangling rough-direction edges pointing at the hole.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf2 import Gf2Matrix

Box = tuple[tuple[int, int], ...]

BULK = "bulk"


def label_kind(label: str) -> str:
    """One of 'bulk', 'outer_e', 'outer_m', 'hole_e', 'hole_m'."""
    if label == BULK:
        return "bulk"
    return {"oE": "outer_e", "oM": "outer_m", "hE": "hole_e", "hM": "hole_m"}[label[:2]]


def label_is_e(label: str) -> bool:
    return label.startswith("oE") or label.startswith("hE")


def label_is_m(label: str) -> bool:
    return label.startswith("oM") or label.startswith("hM")


@dataclass(frozen=True)
class Cell:
    box: Box
    label: str = BULK


@dataclass(frozen=True)
class Hole:
    hole_id: int
    box: Box  # closed box in doubled coordinates
    kind: str  # "e" or "m"
    level: int = 0

    @property
    def label(self) -> str:
        return ("hE" if self.kind == "e" else "hM") + str(self.hole_id)


@dataclass
class FractalSpec:
    """Parameters of a recursively punched fractal lattice."""

    n: int
    p: int
    q: int
    level: int
    background: str = "open"
    holes: str | dict[int, str] = "m"  # uniform "e"/"m" or per-hole map
    i: int = 1
    u: int = 1

    def __post_init__(self):
        if not 2 <= self.n <= 4:
            raise ValueError(f"dimension {self.n} unsupported (need 2..4)")
        if not 0 < self.q < self.p:
            raise ValueError(f"need 0 < q < p, got p={self.p} q={self.q}")
        if (self.p - self.q) % 2 != 0:
            raise ValueError(f"(p - q) must be even to center holes, got {self.p - self.q}")
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if self.u < 1:
            raise ValueError("unit must be >= 1")

    @property
    def side(self) -> int:
        return self.p**self.level * self.u

    def hole_kind(self, hole_id: int) -> str:
        if isinstance(self.holes, str):
            return self.holes
        return self.holes.get(hole_id, "m")


class CellComplex:
    """Graded cells with Z2 boundary maps.

    Immutable after construction; every operation returns a new complex.
    ``boundary[k]`` maps k-chains to (k-1)-chains: rows index (k-1)-cells,
    columns index k-cells.  The identity ``boundary[k-1] @ boundary[k] = 0``
    is asserted bit-exact at construction time.
    """

    def __init__(
        self,
        dim: int,
        cells: list[list[Cell]],
        boundary: list[Gf2Matrix],
        background: str = "open",
        style: str = "plain",
        periods: tuple[int | None, ...] | None = None,
        holes: list[Hole] | None = None,
        check: bool = True,
    ):
        self.dim = dim
        self.cells = cells
        self._boundary = boundary
        self.background = background
        self.style = style
        self.periods = periods if periods is not None else (None,) * dim
        self.holes = holes or []
        assert len(cells) == dim + 1
        assert len(boundary) == dim + 1
        for k in range(dim + 1):
            b = boundary[k]
            assert b.cols == len(cells[k])
            assert b.rows == (len(cells[k - 1]) if k > 0 else 0)
        if check:
            self.assert_dd_zero()

    # -- basic accessors ------------------------------------------------

    def n_cells(self, k: int) -> int:
        if 0 <= k <= self.dim:
            return len(self.cells[k])
        return 0

    def boundary_matrix(self, k: int) -> Gf2Matrix:
        """Boundary map C_k -> C_{k-1}; degenerate sizes outside 1..dim."""
        if 1 <= k <= self.dim:
            return self._boundary[k]
        if k == 0:
            return Gf2Matrix.zeros(0, self.n_cells(0))
        return Gf2Matrix.zeros(self.n_cells(self.dim), 0)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.n_cells(k) for k in range(self.dim + 1))

    def labels_present(self) -> set[str]:
        return {c.label for grade in self.cells for c in grade if c.label != BULK}

    def cells_with_labels(self, labels: set[str]) -> list[list[int]]:
        return [
            [i for i, c in enumerate(grade) if c.label in labels]
            for grade in self.cells
        ]

    def find_cell(self, k: int, box: Box) -> int | None:
        idx = self._index().get(box)
        if idx is not None and idx[0] == k:
            return idx[1]
        return None

    def _index(self) -> dict[Box, tuple[int, int]]:
        if not hasattr(self, "_box_index"):
            ix: dict[Box, tuple[int, int]] = {}
            for k, grade in enumerate(self.cells):
                for i, c in enumerate(grade):
                    ix[c.box] = (k, i)
            self._box_index = ix
        return self._box_index

    def assert_dd_zero(self) -> None:
        for k in range(2, self.dim + 1):
            prod = self._boundary[k - 1].matmul(self._boundary[k])
            if not prod.is_zero():
                raise AssertionError(f"boundary of boundary nonzero at grade {k}")

    # -- derived complexes ------------------------------------------------

    def delete(self, doomed: list[set[int]], holes_add: list[Hole] | None = None,
               relabel: dict[tuple[int, int], str] | None = None) -> "CellComplex":
        """Restrict to the complement of `doomed` (per-grade index sets).

        The doomed set must be closed upward or downward so the restricted
        boundary maps still square to zero (asserted).
        """
        keep = [
            [i for i in range(self.n_cells(k)) if i not in doomed[k]]
            for k in range(self.dim + 1)
        ]
        cells = []
        for k in range(self.dim + 1):
            grade = []
            for i in keep[k]:
                c = self.cells[k][i]
                if relabel and (k, i) in relabel:
                    c = Cell(c.box, relabel[(k, i)])
                grade.append(c)
            cells.append(grade)
        boundary = [Gf2Matrix.zeros(0, len(cells[0]))]
        for k in range(1, self.dim + 1):
            boundary.append(self._boundary[k].submatrix(keep[k - 1], keep[k]))
        return CellComplex(
            self.dim, cells, boundary, self.background, self.style, self.periods,
            self.holes + (holes_add or []),
        )

    def transpose_dual(self) -> "CellComplex":
        """The plain dual: k-cells become (n-k)-cells, boundary maps transpose.

        Dual cells inherit the box and label of their primal cell.  Exact on
        closed backgrounds; for complexes with boundary use
        :func:`dual_with_boundary`.
        """
        n = self.dim
        cells = [list(self.cells[n - j]) for j in range(n + 1)]
        boundary = [Gf2Matrix.zeros(0, len(cells[0]))]
        for j in range(1, n + 1):
            boundary.append(self._boundary[n - j + 1].transpose())
        return CellComplex(
            n, cells, boundary, self.background, "dual", self.periods, self.holes
        )

    def quotient_to_point(self, labels: set[str]) -> "CellComplex":
        """Collapse the labeled boundary subcomplex to a single point.

        All selected cells disappear; one new vertex replaces the selected
        vertices; boundary incidences onto collapsed vertices are rerouted
        to the new vertex mod 2, and incidences onto deleted higher cells
        are dropped.
        """
        selected = [set(ix) for ix in self.cells_with_labels(labels)]
        if not any(selected):
            raise ValueError(f"labels {sorted(labels)} select no cells")
        self._check_downward_closed(selected)
        sentinel = tuple((-1, -1) for _ in range(self.dim))
        keep = [
            [i for i in range(self.n_cells(k)) if i not in selected[k]]
            for k in range(self.dim + 1)
        ]
        new_cells: list[list[Cell]] = []
        new_cells.append([self.cells[0][i] for i in keep[0]] + [Cell(sentinel, BULK)])
        for k in range(1, self.dim + 1):
            new_cells.append([self.cells[k][i] for i in keep[k]])
        star = len(keep[0])  # index of the new vertex

        boundary = [Gf2Matrix.zeros(0, len(new_cells[0]))]
        pos0 = {old: new for new, old in enumerate(keep[0])}
        d1 = Gf2Matrix(len(new_cells[0]), len(keep[1]))
        for col_new, col_old in enumerate(keep[1]):
            star_hits = 0
            for r in self._column_support(1, col_old):
                if r in selected[0]:
                    star_hits ^= 1
                else:
                    d1.set(pos0[r], col_new, d1.get(pos0[r], col_new) ^ 1)
            if star_hits:
                d1.set(star, col_new, d1.get(star, col_new) ^ 1)
        boundary.append(d1)
        for k in range(2, self.dim + 1):
            posk = {old: new for new, old in enumerate(keep[k - 1])}
            dk = Gf2Matrix(len(new_cells[k - 1]), len(keep[k]))
            for col_new, col_old in enumerate(keep[k]):
                for r in self._column_support(k, col_old):
                    if r not in selected[k - 1]:
                        dk.set(posk[r], col_new, dk.get(posk[r], col_new) ^ 1)
            boundary.append(dk)
        background = self.background
        if labels and all(lb.startswith("o") for lb in labels):
            rest = self.labels_present() - labels
            if not any(lb.startswith("o") for lb in rest):
                background = "sphere"
        return CellComplex(
            self.dim, new_cells, boundary, background, self.style, self.periods,
            [h for h in self.holes if h.label not in labels],
        )

    def _column_support(self, k: int, col: int) -> list[int]:
        if not hasattr(self, "_col_support_cache"):
            self._col_support_cache = {}
        cache = self._col_support_cache
        if k not in cache:
            t = self._boundary[k].transpose()
            cache[k] = [t.row_indices(c) for c in range(t.rows)]
        return cache[k][col]

    def _check_downward_closed(self, selected: list[set[int]]) -> None:
        for k in range(1, self.dim + 1):
            for i in selected[k]:
                for r in self._column_support(k, i):
                    if r not in selected[k - 1]:
                        raise ValueError(
                            f"selected subcomplex is not closed under the boundary: "
                            f"grade-{k} cell {i} has unselected face {r}"
                        )

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        lines = ["cellcomplex v1", f"dim {self.dim} background {self.background}"]
        per = " ".join("-" if p is None else str(p) for p in self.periods)
        holes = ";".join(f"{h.hole_id},{h.kind},{h.level}," +
                         ",".join(f"{lo}:{hi}" for lo, hi in h.box) for h in self.holes)
        lines.append(f"meta style {self.style} periods {per} holes {holes if holes else '-'}")
        for k in range(self.dim + 1):
            lines.append(f"grade {k} count {self.n_cells(k)}")
        for k in range(self.dim + 1):
            for i, c in enumerate(self.cells[k]):
                coords = " ".join(f"{lo} {hi}" for lo, hi in c.box)
                faces = " ".join(str(r) for r in self._column_support(k, i)) if k else ""
                lines.append(f"cell {k} {i} {c.label} {coords} : {faces}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CellComplex":
        lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
        if lines[0] != "cellcomplex v1":
            raise ValueError("not a cellcomplex v1 file")
        head = lines[1].split()
        dim = int(head[1])
        background = head[3]
        style, periods, holes = "plain", (None,) * dim, []
        pos = 2
        if lines[pos].startswith("meta "):
            toks = lines[pos].split()
            style = toks[2]
            periods = tuple(None if t == "-" else int(t) for t in toks[4 : 4 + dim])
            hole_tok = toks[5 + dim]
            if hole_tok != "-":
                for part in hole_tok.split(";"):
                    fields = part.split(",")
                    hid, kind, level = int(fields[0]), fields[1], int(fields[2])
                    box = tuple(
                        (int(t.split(":")[0]), int(t.split(":")[1])) for t in fields[3:]
                    )
                    holes.append(Hole(hid, box, kind, level))
            pos += 1
        counts = []
        for k in range(dim + 1):
            toks = lines[pos].split()
            assert toks[0] == "grade" and int(toks[1]) == k
            counts.append(int(toks[3]))
            pos += 1
        cells: list[list[Cell]] = [[] for _ in range(dim + 1)]
        entries: list[list[tuple[int, int]]] = [[] for _ in range(dim + 1)]
        for k in range(dim + 1):
            for i in range(counts[k]):
                toks = lines[pos].split()
                pos += 1
                assert toks[0] == "cell" and int(toks[1]) == k and int(toks[2]) == i
                label = toks[3]
                sep = toks.index(":")
                nums = [int(t) for t in toks[4:sep]]
                box = tuple((nums[2 * a], nums[2 * a + 1]) for a in range(dim))
                cells[k].append(Cell(box, label))
                for r in toks[sep + 1 :]:
                    entries[k].append((int(r), i))
        boundary = [Gf2Matrix.zeros(0, counts[0])]
        for k in range(1, dim + 1):
            boundary.append(Gf2Matrix.from_entries(counts[k - 1], counts[k], entries[k]))
        return cls(dim, cells, boundary, background, style, periods, holes)


# -- lattice construction ---------------------------------------------------


def _axis_elements(kind: str, L: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(vertex positions, edge spans) of a 1D factor, doubled coordinates."""
    if kind == "interval":
        return [(2 * j, 2 * j) for j in range(L + 1)], [(2 * j, 2 * j + 2) for j in range(L)]
    if kind == "centered":
        return (
            [(2 * j + 1, 2 * j + 1) for j in range(L)],
            [(2 * j + 1, 2 * j + 3) for j in range(L - 1)],
        )
    if kind == "circle":
        return [(2 * j, 2 * j) for j in range(L)], [(2 * j, 2 * j + 2) for j in range(L)]
    raise ValueError(f"unknown axis kind {kind}")


def _faces_of_box(box: Box, periods) -> list[Box]:
    out = []
    for d, (lo, hi) in enumerate(box):
        if lo == hi:
            continue
        h = hi % periods[d] if periods[d] else hi
        out.append(box[:d] + ((lo, lo),) + box[d + 1 :])
        out.append(box[:d] + ((h, h),) + box[d + 1 :])
    return out


def _build_from_axes(
    dim: int,
    axis_kinds: list[str],
    L: int,
    background: str,
    style: str,
    labeler=None,
) -> CellComplex:
    elements = [_axis_elements(kind, L) for kind in axis_kinds]
    periods = tuple(2 * L if kind == "circle" else None for kind in axis_kinds)
    cells: list[list[Cell]] = [[] for _ in range(dim + 1)]
    for k in range(dim + 1):
        for ext_axes in itertools.combinations(range(dim), k):
            per_axis = [
                elements[d][1] if d in ext_axes else elements[d][0] for d in range(dim)
            ]
            for combo in itertools.product(*per_axis):
                box = tuple(combo)
                label = labeler(box) if labeler else BULK
                cells[k].append(Cell(box, label))
    grade_index = [{c.box: i for i, c in enumerate(cells[k])} for k in range(dim + 1)]
    boundary = [Gf2Matrix.zeros(0, len(cells[0]))]
    for k in range(1, dim + 1):
        entries = []
        for i, c in enumerate(cells[k]):
            for fb in _faces_of_box(c.box, periods):
                entries.append((grade_index[k - 1][fb], i))
        boundary.append(Gf2Matrix.from_entries(len(cells[k - 1]), len(cells[k]), entries))
    return CellComplex(dim, cells, boundary, background, style, periods)


def _outer_labeler(dim: int, L: int, e_axes: tuple[int, ...]):
    """E-priority labeling of the open-cube outer hypersurface patches."""

    def patches_of(box: Box) -> list[int]:
        pids = []
        for d, (lo, hi) in enumerate(box):
            if lo == hi == 0:
                pids.append(2 * d)
            if lo == hi == 2 * L:
                pids.append(2 * d + 1)
        return pids

    def labeler(box: Box) -> str:
        pids = patches_of(box)
        e_pids = [p for p in pids if (p // 2) in e_axes]
        if e_pids:
            return f"oE{e_pids[0]}"
        if pids:
            return f"oM{pids[0]}"
        return BULK

    return labeler


def build_lattice(
    n: int, L: int, background: str = "open", e_axes: tuple[int, ...] | None = None
) -> CellComplex:
    """Full hypercubic complex: the universe other operations carve up.

    open-cube: (L+1)**n vertices with outer patches labeled (default: the
    last axis carries the two e-patches, all other patches are m).
    torus: opposite faces identified, L**n vertices.
    sphere: open cube with the entire outer boundary collapsed to a point.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if not 2 <= n <= 4:
        raise ValueError(f"dimension {n} unsupported (need 2..4)")
    background = {"open-cube": "open"}.get(background, background)
    if background == "torus":
        return _build_from_axes(n, ["circle"] * n, L, "torus", "plain")
    if background in ("open", "sphere"):
        if e_axes is None:
            e_axes = (n - 1,)
        cx = _build_from_axes(
            n, ["interval"] * n, L, "open", "plain", _outer_labeler(n, L, e_axes)
        )
        if background == "sphere":
            outer = {lb for lb in cx.labels_present() if lb.startswith("o")}
            return cx.quotient_to_point(outer)
        return cx
    raise ValueError(f"unknown background {background!r}")


def code_lattice(
    n: int, L: int, background: str = "open", e_axes: tuple[int, ...] | None = None
) -> CellComplex:
    """The boundary-adapted cellulation used to build codes.

    Rough axes are full intervals with OuterE end planes; smooth axes are
    cell-centered paths, so the i=1 code built on it is the standard
    (1, n-1) surface code with d_Z = L and d_X = L**(n-1).
    """
    if L < 2:
        raise ValueError("code lattice needs L >= 2")
    background = {"open-cube": "open"}.get(background, background)
    if background == "torus":
        return _build_from_axes(n, ["circle"] * n, L, "torus", "code")
    if e_axes is None:
        e_axes = (n - 1,)
    kinds = ["interval" if d in e_axes else "centered" for d in range(n)]

    def labeler(box: Box) -> str:
        for d in e_axes:
            lo, hi = box[d]
            if lo == hi == 0:
                return f"oE{2 * d}"
            if lo == hi == 2 * L:
                return f"oE{2 * d + 1}"
        return BULK

    return _build_from_axes(n, kinds, L, "open", "code", labeler)


# -- hole punching ----------------------------------------------------------


def _axis_relate(lo: int, hi: int, a: int, b: int, period: int | None):
    """Per-axis interval relations, wrap-aware: (strictly_inside, touches)."""
    reps = [(lo, hi)]
    if period:
        reps.append((lo - period, hi - period))
        reps.append((lo + period, hi + period))
    inside = touches = False
    for rl, rh in reps:
        if rl == rh:
            inside = inside or (a < rl < b)
        else:
            inside = inside or (a <= rl and rh <= b)
        touches = touches or (max(rl, a) <= min(rh, b))
    return inside, touches


def _box_strictly_inside(box: Box, hole: Box, periods) -> bool:
    return all(
        _axis_relate(lo, hi, a, b, periods[d])[0]
        for d, ((lo, hi), (a, b)) in enumerate(zip(box, hole))
    )


def _box_touches(box: Box, hole: Box, periods) -> bool:
    return all(
        _axis_relate(lo, hi, a, b, periods[d])[1]
        for d, ((lo, hi), (a, b)) in enumerate(zip(box, hole))
    )


def _box_within_closed(box: Box, hole: Box, periods) -> bool:
    for d, ((lo, hi), (a, b)) in enumerate(zip(box, hole)):
        reps = [(lo, hi)]
        if periods[d]:
            reps.append((lo - periods[d], hi - periods[d]))
            reps.append((lo + periods[d], hi + periods[d]))
        if not any(a <= rl and rh <= b for rl, rh in reps):
            return False
    return True


def _downward_close(cx: CellComplex, doomed: list[set[int]]) -> list[set[int]]:
    for k in range(cx.dim, 0, -1):
        for i in list(doomed[k]):
            for r in cx._column_support(k, i):
                doomed[k - 1].add(r)
    return doomed


def punch_holes(cx: CellComplex, holes: list[Hole]) -> CellComplex:
    """Apply a batch of holes to a complex, per the style conventions.

    The deleted set stays closed under the boundary (rough bites take their
    faces along) or the coboundary (smooth bites are closed stars), so the
    restricted complex still satisfies dd = 0.
    """
    doomed: list[set[int]] = [set() for _ in range(cx.dim + 1)]
    relabel: dict[tuple[int, int], str] = {}
    for hole in holes:
        if cx.style == "code" and hole.kind == "m":
            # measured-out region: closed star of the hole box
            for k in range(cx.dim + 1):
                for i, c in enumerate(cx.cells[k]):
                    if _box_touches(c.box, hole.box, cx.periods):
                        doomed[k].add(i)
        elif cx.style == "code" and hole.kind == "e":
            # rough hole: mark the interior and its faces as an e-patch; the
            # code module deletes the patch, leaving dangling edges
            marked: list[set[int]] = [set() for _ in range(cx.dim + 1)]
            for k in range(cx.dim + 1):
                for i, c in enumerate(cx.cells[k]):
                    if _box_strictly_inside(c.box, hole.box, cx.periods):
                        marked[k].add(i)
            _downward_close(cx, marked)
            for k in range(cx.dim + 1):
                for i in marked[k]:
                    relabel[(k, i)] = hole.label
        else:
            for k in range(cx.dim + 1):
                for i, c in enumerate(cx.cells[k]):
                    if _box_strictly_inside(c.box, hole.box, cx.periods):
                        doomed[k].add(i)
            for k in range(cx.dim + 1):
                for i, c in enumerate(cx.cells[k]):
                    if i in doomed[k] or c.label != BULK:
                        continue
                    if _box_within_closed(c.box, hole.box, cx.periods):
                        relabel[(k, i)] = hole.label
    return cx.delete(doomed, holes_add=holes, relabel=relabel)


def punch_box(cx: CellComplex, origin: tuple[int, ...], side: int, kind: str,
              level: int = 0) -> CellComplex:
    """Punch one hole: `origin` and `side` in cell (undoubled) coordinates."""
    hid = max((h.hole_id for h in cx.holes), default=-1) + 1
    box = tuple((2 * o, 2 * (o + side)) for o in origin)
    return punch_holes(cx, [Hole(hid, box, kind, level)])


def fractal_holes(spec: FractalSpec) -> list[Hole]:
    """Hole list of the recursive construction, in deterministic order."""
    L = spec.side
    holes: list[Hole] = []
    blocks: list[tuple[int, ...]] = [(0,) * spec.n]
    block_side = L
    hid = 0
    for level in range(1, spec.level + 1):
        sub = block_side // spec.p
        offset = (spec.p - spec.q) // 2 * sub
        new_blocks: list[tuple[int, ...]] = []
        for origin in blocks:
            hole_lo = tuple(o + offset for o in origin)
            hole_box = tuple((2 * lo, 2 * (lo + spec.q * sub)) for lo in hole_lo)
            holes.append(Hole(hid, hole_box, spec.hole_kind(hid), level))
            hid += 1
            for steps in itertools.product(range(spec.p), repeat=spec.n):
                sub_origin = tuple(o + s * sub for o, s in zip(origin, steps))
                sub_box = tuple((2 * so, 2 * (so + sub)) for so in sub_origin)
                if not _box_within_closed(sub_box, hole_box, (None,) * spec.n):
                    new_blocks.append(sub_origin)
        blocks = new_blocks
        block_side = sub
    return holes


def punch_fractal(base: CellComplex, spec: FractalSpec) -> CellComplex:
    """Punch the recursive fractal holes of `spec` into a lattice."""
    if spec.n != base.dim:
        raise ValueError(f"spec dimension {spec.n} != complex dimension {base.dim}")
    L = _side_of(base)
    if L % spec.p**spec.level != 0:
        raise ValueError(
            f"side {L} is not divisible by p^level = {spec.p ** spec.level}"
        )
    spec = FractalSpec(
        spec.n, spec.p, spec.q, spec.level, spec.background, spec.holes, spec.i,
        L // spec.p**spec.level,
    )
    if spec.level == 0:
        return base
    return punch_holes(base, fractal_holes(spec))


def _side_of(cx: CellComplex) -> int:
    top = 0
    for grade in cx.cells:
        for c in grade:
            for lo, hi in c.box:
                top = max(top, hi)
    for p in cx.periods:
        if p:
            top = max(top, p)
    return top // 2


def fractal_complex(spec: FractalSpec, style: str = "plain",
                    e_axes: tuple[int, ...] | None = None) -> CellComplex:
    """Build the lattice for `spec` and punch its holes.

    style "plain" backs homology computations; style "code" backs code and
    distance computations.
    """
    if style == "code":
        base = code_lattice(spec.n, spec.side, spec.background, e_axes)
    else:
        base = build_lattice(spec.n, spec.side, spec.background, e_axes)
    return punch_fractal(base, spec)


# -- duals -------------------------------------------------------------------


def dual(cx: CellComplex) -> CellComplex:
    """The transpose dual: k-cells become (n-k)-cells; see
    :meth:`CellComplex.transpose_dual`."""
    return cx.transpose_dual()


def dual_with_boundary(cx: CellComplex) -> CellComplex:
    """Honest dual cellulation of a complex with boundary.

    Every primal k-cell c contributes an interior dual cell D(c) of grade
    n-k; every labeled (boundary) cell additionally contributes a boundary
    dual cell Db(c) of grade n-1-k that closes D(c) off at the boundary:

        d D(c)  = sum of D(c') over cofaces c' of c, plus Db(c) if labeled
        d Db(c) = sum of Db(c') over labeled cofaces c' of c

    Boundary dual cells inherit the primal label (this is what a relative
    homology computation on the dual quotients); interior duals are bulk.
    """
    n = cx.dim
    cells: list[list[Cell]] = [[] for _ in range(n + 1)]
    pos: dict[tuple[str, int, int], int] = {}
    for k in range(n + 1):
        for i, c in enumerate(cx.cells[k]):
            grade = n - k
            pos[("D", k, i)] = len(cells[grade])
            cells[grade].append(Cell(c.box, BULK))
    for k in range(n):
        for i, c in enumerate(cx.cells[k]):
            if c.label == BULK:
                continue
            grade = n - 1 - k
            pos[("B", k, i)] = len(cells[grade])
            cells[grade].append(Cell(c.box, c.label))

    cofaces: list[list[list[int]]] = []
    for k in range(n + 1):
        if k == n:
            cofaces.append([[] for _ in cx.cells[k]])
        else:
            up = cx.boundary_matrix(k + 1)
            cofaces.append([up.row_indices(r) for r in range(up.rows)])

    entries: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for k in range(n + 1):
        for i, c in enumerate(cx.cells[k]):
            grade = n - k
            if grade >= 1:
                col = pos[("D", k, i)]
                for j in cofaces[k][i]:
                    entries[grade].append((pos[("D", k + 1, j)], col))
                if c.label != BULK:
                    entries[grade].append((pos[("B", k, i)], col))
            if c.label != BULK and n - 1 - k >= 1:
                col = pos[("B", k, i)]
                for j in cofaces[k][i]:
                    if cx.cells[k + 1][j].label != BULK:
                        entries[n - 1 - k].append((pos[("B", k + 1, j)], col))
    boundary = [Gf2Matrix.zeros(0, len(cells[0]))]
    for g in range(1, n + 1):
        boundary.append(
            Gf2Matrix.from_entries(len(cells[g - 1]), len(cells[g]), entries[g])
        )
    return CellComplex(n, cells, boundary, cx.background, "dual", cx.periods, cx.holes)
