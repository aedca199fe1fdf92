"""CSS codes built from labeled cell complexes.

Qubits sit on the i-cells.  Each surviving (i-1)-cell anchors an X
stabilizer on its coboundary; each surviving (i+1)-cell anchors a Z
stabilizer on its boundary.  Boundary conditions are label-driven:

* every cell of an E-labeled (rough) patch is dropped from the code -
  its i-cells are not qubits and its (i-1)-cells anchor no X stabilizer,
  which leaves dangling qubits with truncated Z stabilizers next to the
  patch;
* an M-labeled (smooth) patch keeps all its cells but the Z stabilizers
  anchored on the patch's (i+1)-cells are removed (they are products of
  bulk stabilizers, so the group is unchanged).

H_X H_Z^T = 0 is asserted for every constructed code, truncations
included.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import CellComplex, label_is_e, label_is_m
from .gf2 import Gf2Matrix, Gf2Vector, in_rowspace, kernel_basis, rank
from .homology import betti


@dataclass(frozen=True)
class PauliOperator:
    """X- and Z-support bit vectors over the qubits of one code block."""

    x_support: Gf2Vector
    z_support: Gf2Vector

    @classmethod
    def x_type(cls, support: Gf2Vector) -> "PauliOperator":
        return cls(support, Gf2Vector(support.n))

    @classmethod
    def z_type(cls, support: Gf2Vector) -> "PauliOperator":
        return cls(Gf2Vector(support.n), support)

    @property
    def n_qubits(self) -> int:
        return self.x_support.n

    def weight(self) -> int:
        return int(np.bitwise_count(self.x_support.data | self.z_support.data).sum())

    def is_x_type(self) -> bool:
        return self.z_support.is_zero()

    def is_z_type(self) -> bool:
        return self.x_support.is_zero()


@dataclass
class CssCode:
    n_qubits: int
    hx: Gf2Matrix
    hz: Gf2Matrix
    grading: int
    qubit_cells: list[int]
    x_anchor_cells: list[int]
    z_anchor_cells: list[int]
    source: CellComplex | None = None
    isolated_qubits: list[int] = field(default_factory=list)

    def __post_init__(self):
        assert self.hx.cols == self.n_qubits == self.hz.cols
        prod = self.hx.matmul_t(self.hz)
        if not prod.is_zero():
            raise AssertionError("H_X H_Z^T != 0: X and Z checks do not commute")

    def qubit_box(self, q: int):
        return self.source.cells[self.grading][self.qubit_cells[q]].box


@dataclass(frozen=True)
class CodeParams:
    n_qubits: int
    k: int
    d_z: "DistanceLike | None" = None
    d_x: "DistanceLike | None" = None


DistanceLike = object  # distance module attaches its DistanceResult here


def css_from_complex(cx: CellComplex, i: int) -> CssCode:
    """Build the (i, n-i) code of a labeled complex."""
    n = cx.dim
    if not 1 <= i <= n - 1:
        raise ValueError(f"grading {i} out of range 1..{n - 1}")

    def is_e(label: str) -> bool:
        return label_is_e(label)

    qubits = [j for j, c in enumerate(cx.cells[i]) if not is_e(c.label)]
    x_anchors = [j for j, c in enumerate(cx.cells[i - 1]) if not is_e(c.label)]
    z_anchors = [j for j, c in enumerate(cx.cells[i + 1]) if not is_e(c.label)]
    m_anchor = [label_is_m(cx.cells[i + 1][j].label) for j in z_anchors]
    hx = cx.boundary_matrix(i).submatrix(x_anchors, qubits)
    hz = cx.boundary_matrix(i + 1).submatrix(qubits, z_anchors).transpose()

    # Smooth-patch rule: a Z stabilizer anchored on an M-labeled (i+1)-cell
    # is dropped when it is a product of the kept ones, so m-condensation is
    # manifest in the generating set while the stabilizer group (and k) is
    # unchanged.  An independent M-anchored plaquette stays.
    keep_z = _drop_redundant_m_rows(hz, m_anchor)
    keep_x = [r for r in range(hx.rows) if hx.row_weight(r) > 0]
    keep_z = [r for r in keep_z if hz.row_weight(r) > 0]
    hx = hx.submatrix(keep_x, range(hx.cols))
    hz = hz.submatrix(keep_z, range(hz.cols))
    x_cells = [x_anchors[r] for r in keep_x]
    z_cells = [z_anchors[r] for r in keep_z]

    covered = [False] * len(qubits)
    for m in (hx, hz):
        for r in range(m.rows):
            for c in m.row_indices(r):
                covered[c] = True
    isolated = [q for q, seen in enumerate(covered) if not seen]

    return CssCode(
        n_qubits=len(qubits),
        hx=hx,
        hz=hz,
        grading=i,
        qubit_cells=qubits,
        x_anchor_cells=x_cells,
        z_anchor_cells=z_cells,
        source=cx,
        isolated_qubits=isolated,
    )


def _drop_redundant_m_rows(hz: Gf2Matrix, m_anchor: list[bool]) -> list[int]:
    """Row indices to keep: all non-M rows, plus M rows independent of them."""
    if not any(m_anchor):
        return list(range(hz.rows))
    keep = [r for r in range(hz.rows) if not m_anchor[r]]
    reduced: list[Gf2Vector] = []

    def reduce_against(v: Gf2Vector) -> Gf2Vector:
        w = v.copy()
        for u in reduced:
            lead = u.indices()[0]
            if w.get(lead):
                w ^= u
        return w

    for r in keep:
        w = reduce_against(hz.row(r))
        if not w.is_zero():
            reduced.append(w)
    reduced.sort(key=lambda u: u.indices()[0])
    for r in range(hz.rows):
        if not m_anchor[r]:
            continue
        w = reduce_against(hz.row(r))
        if not w.is_zero():
            keep.append(r)
            reduced.append(w)
            reduced.sort(key=lambda u: u.indices()[0])
    return sorted(keep)


def code_params(code: CssCode, cross_check: bool = True) -> CodeParams:
    """n and k from the check-matrix ranks; k is cross-checked against the
    matching (relative) homology request when the source complex is known."""
    k = code.n_qubits - rank(code.hx) - rank(code.hz)
    if (
        cross_check
        and code.source is not None
        and getattr(code, "check_homology_by_labels", True)
    ):
        hk = homology_k(code)
        if hk != k:
            raise AssertionError(
                f"k={k} from ranks but dim H_{code.grading} = {hk}; "
                "code construction and homology disagree"
            )
    return CodeParams(code.n_qubits, k)


def homology_k(code: CssCode) -> int:
    """dim of the homology group matching the code's boundary conditions."""
    cx = code.source
    e_labels = {lb for lb in cx.labels_present() if label_is_e(lb)}
    return betti(cx, code.grading, e_labels)


def logical_basis(code: CssCode) -> tuple[list[PauliOperator], list[PauliOperator]]:
    """k Z-type and k X-type logical representatives, symplectically paired.

    Z-logicals span ker(H_X) / rowspace(H_Z), X-logicals span
    ker(H_Z) / rowspace(H_X); a greedy symplectic Gram-Schmidt with fixed
    qubit ordering normalizes the pairing matrix to the identity, so the
    basis is deterministic.
    """
    z_reps = _quotient_reps(code.hx, code.hz)
    x_reps = _quotient_reps(code.hz, code.hx)
    assert len(z_reps) == len(x_reps)
    k = len(z_reps)
    if k == 0:
        return [], []

    pair = [[z.dot(x) for x in x_reps] for z in z_reps]
    for t in range(k):
        found = None
        for r in range(t, k):
            for c in range(t, k):
                if pair[r][c]:
                    found = (r, c)
                    break
            if found:
                break
        assert found is not None, "symplectic pairing is singular"
        r, c = found
        z_reps[t], z_reps[r] = z_reps[r], z_reps[t]
        pair[t], pair[r] = pair[r], pair[t]
        x_reps[t], x_reps[c] = x_reps[c], x_reps[t]
        for row in pair:
            row[t], row[c] = row[c], row[t]
        for r2 in range(k):
            if r2 != t and pair[r2][t]:
                z_reps[r2] = z_reps[r2] ^ z_reps[t]
                pair[r2] = [a ^ b for a, b in zip(pair[r2], pair[t])]
        for c2 in range(k):
            if c2 != t and pair[t][c2]:
                x_reps[c2] = x_reps[c2] ^ x_reps[t]
                for row in pair:
                    row[c2] ^= row[t]
    for a in range(k):
        for b in range(k):
            assert pair[a][b] == (1 if a == b else 0)
    return (
        [PauliOperator.z_type(z) for z in z_reps],
        [PauliOperator.x_type(x) for x in x_reps],
    )


def _quotient_reps(h_check: Gf2Matrix, h_span: Gf2Matrix) -> list[Gf2Vector]:
    """Representatives of ker(h_check) modulo rowspace(h_span)."""
    span_rref, span_pivots = h_span.rref()
    chosen: list[Gf2Vector] = []
    chosen_rref: list[Gf2Vector] = []
    for v in kernel_basis(h_check):
        w = v.copy()
        for i, p in enumerate(span_pivots):
            if w.get(p):
                w.data ^= span_rref.data[i, : len(w.data)]
        for u in chosen_rref:
            lead = _leading_bit(u)
            if lead is not None and w.get(lead):
                w ^= u
        if not w.is_zero():
            chosen.append(w.copy())
            chosen_rref.append(w)
    return chosen


def _leading_bit(v: Gf2Vector) -> int | None:
    idx = v.indices()
    return idx[0] if idx else None


def is_z_logical(code: CssCode, support: Gf2Vector) -> bool:
    """Syndrome-free against the X checks and outside the Z-stabilizer span."""
    if not code.hx.mul_vec(support).is_zero():
        return False
    rz, pz = _cached_rref(code, "z")
    return not in_rowspace(rz, pz, support)


def is_x_logical(code: CssCode, support: Gf2Vector) -> bool:
    if not code.hz.mul_vec(support).is_zero():
        return False
    rx, px = _cached_rref(code, "x")
    return not in_rowspace(rx, px, support)


def _cached_rref(code: CssCode, which: str):
    attr = f"_rref_cache_{which}"
    if not hasattr(code, attr):
        m = code.hz if which == "z" else code.hx
        setattr(code, attr, m.rref())
    return getattr(code, attr)


# -- serialization -----------------------------------------------------------

def code_to_text(code: CssCode) -> str:
    from .gf2 import matrix_to_text

    lines = [f"csscode v1", f"nqubits {code.n_qubits} i {code.grading}", "HX"]
    lines.append(matrix_to_text(code.hx).rstrip("\n"))
    lines.append("HZ")
    lines.append(matrix_to_text(code.hz).rstrip("\n"))
    lines.append("qubitmap")
    for q, cell in enumerate(code.qubit_cells):
        lines.append(f"q {q} -> cell {cell}")
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> CssCode:
    from .gf2 import matrix_from_text

    lines = text.splitlines()
    assert lines[0].strip() == "csscode v1"
    toks = lines[1].split()
    n, i = int(toks[1]), int(toks[3])
    ix_hx = lines.index("HX")
    ix_hz = lines.index("HZ")
    ix_map = lines.index("qubitmap")
    hx = matrix_from_text("\n".join(lines[ix_hx + 1 : ix_hz]))
    hz = matrix_from_text("\n".join(lines[ix_hz + 1 : ix_map]))
    qubit_cells = []
    for ln in lines[ix_map + 1 :]:
        if ln.strip():
            toks = ln.split()
            qubit_cells.append(int(toks[4]))
    return CssCode(
        n_qubits=n,
        hx=hx,
        hz=hz,
        grading=i,
        qubit_cells=qubit_cells,
        x_anchor_cells=[],
        z_anchor_cells=[],
        source=None,
    )
