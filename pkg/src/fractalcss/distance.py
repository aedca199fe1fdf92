"""Exact code distances where the geometry permits, certified bounds elsewhere.

For grading i=1 the Z-distance is a shortest-path problem on the qubit
graph (vertices = surviving 0-cells, edges = qubit 1-cells, every e-boundary
component contracted to a terminal) and the X-distance of the two-terminal
open-cube geometry is the minimum edge cut between the e-components,
computed by unit-capacity max-flow with deterministic edge ordering so the
witness cut is reproducible.

The general-grading fallback enumerates connected candidate supports of
bounded weight.  Two qubits count as connected when they share a check of
either type; a minimum-weight logical operator cannot split into
check-disjoint parts (each part would be syndrome-free on its own, and one
of them a lighter logical), so the search is complete for the minimum.

Every exact result's witness is re-verified independently: zero syndrome
against the opposite-type checks and membership outside the stabilizer
row-space.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from .code import CssCode, PauliOperator, is_x_logical, is_z_logical
from .complexes import label_is_e
from .gf2 import Gf2Vector

DEFAULT_NODE_BUDGET = 5_000_000


class BudgetError(RuntimeError):
    """Raised when a search exceeds its node budget (see FRACTALCSS_BUDGET)."""


class PreconditionError(ValueError):
    """Raised when an exact method's geometric preconditions fail; callers
    should fall back to exhaustive_low_weight explicitly."""


def search_budget() -> int:
    env = os.environ.get("FRACTALCSS_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class DistanceResult:
    value: int
    kind: str  # "exact", "upper_bound" or "certified_above"
    witness: PauliOperator | None = None

    def __str__(self):
        if self.kind == "certified_above":
            return f">{self.value}"
        suffix = "" if self.kind == "exact" else "<="
        return f"{suffix}{self.value}"


@dataclass(frozen=True)
class ScalingFit:
    points: tuple[tuple[float, float], ...]
    exponent: float
    residual: float


# -- the qubit graph ----------------------------------------------------------


class _QubitGraph:
    """Vertices: bulk 0-cells plus one contracted node per e-component."""

    def __init__(self, code: CssCode):
        if code.grading != 1:
            raise PreconditionError("qubit-graph distances need grading i = 1")
        cx = code.source
        self.code = code
        node_of_cell: dict[int, int] = {}
        self.terminal_labels: list[str] = sorted(
            {c.label for c in cx.cells[0] if label_is_e(c.label)}
        )
        term_index = {lb: t for t, lb in enumerate(self.terminal_labels)}
        n_bulk = 0
        for j, c in enumerate(cx.cells[0]):
            if not label_is_e(c.label):
                node_of_cell[j] = n_bulk
                n_bulk += 1
        self.n_bulk = n_bulk
        self.n_nodes = n_bulk + len(self.terminal_labels)
        for j, c in enumerate(cx.cells[0]):
            if label_is_e(c.label):
                node_of_cell[j] = n_bulk + term_index[c.label]
        self.edges: list[tuple[int, int]] = []
        for q, cell in enumerate(code.qubit_cells):
            ends = [node_of_cell[r] for r in cx._column_support(1, cell)]
            if len(ends) == 1:
                ends = ends * 2  # wrap edge collapsed mod 2; treat as loop
            if len(ends) == 0:
                ends = [0, 0]
            self.edges.append((ends[0], ends[1]))
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_nodes)]
        for q, (u, v) in enumerate(self.edges):
            if u != v:
                self.adj[u].append((v, q))
                self.adj[v].append((u, q))

    def terminal_node(self, label: str) -> int:
        return self.n_bulk + self.terminal_labels.index(label)

    def bfs(self, sources: list[int]):
        dist = [-1] * self.n_nodes
        via: list[tuple[int, int] | None] = [None] * self.n_nodes
        dq = deque()
        for s in sources:
            dist[s] = 0
            dq.append(s)
        while dq:
            u = dq.popleft()
            for v, q in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    via[v] = (u, q)
                    dq.append(v)
        return dist, via

    def path_edges(self, via, end: int) -> list[int]:
        out = []
        node = end
        while via[node] is not None:
            prev, q = via[node]
            out.append(q)
            node = prev
        return out[::-1]


def dz_shortest_path(code: CssCode) -> DistanceResult:
    """Exact d_Z for i=1 codes: shortest relative 1-cycle.

    With two or more e-components the result is the shortest path between
    any pair of distinct components; on a torus each periodic axis is cut
    open and the two copies of the seam are path-connected, giving the
    shortest non-contractible cycle per generator.
    """
    g = _QubitGraph(code)
    cx = code.source
    best: tuple[int, list[int]] | None = None

    if len(g.terminal_labels) >= 2:
        for t, label in enumerate(g.terminal_labels):
            src = g.n_bulk + t
            dist, via = g.bfs([src])
            for t2 in range(t + 1, len(g.terminal_labels)):
                node = g.n_bulk + t2
                if dist[node] >= 0 and (best is None or dist[node] < best[0]):
                    best = (dist[node], g.path_edges(via, node))
    if all(p is not None for p in cx.periods):
        for axis in range(cx.dim):
            period = cx.periods[axis]
            seam = [
                q
                for q, cell in enumerate(code.qubit_cells)
                if cx.cells[1][cell].box[axis][1] == period
            ]
            cut = set(seam)
            adj_cut: list[list[tuple[int, int]]] = [[] for _ in range(g.n_nodes)]
            for q, (u, v) in enumerate(g.edges):
                if q not in cut and u != v:
                    adj_cut[u].append((v, q))
                    adj_cut[v].append((u, q))
            for q in seam:
                u, v = g.edges[q]
                if u == v:
                    if best is None or 1 < best[0]:
                        best = (1, [q])
                    continue
                dist, via = _bfs_on(adj_cut, g.n_nodes, u)
                if dist[v] >= 0:
                    total = dist[v] + 1
                    if best is None or total < best[0]:
                        best = (total, _path_on(via, v) + [q])
    if best is None:
        raise PreconditionError(
            "need at least two e-boundary components or a torus background"
        )
    value, edges = best
    witness = PauliOperator.z_type(Gf2Vector.from_indices(code.n_qubits, edges))
    assert is_z_logical(code, witness.z_support), "shortest-path witness not logical"
    assert witness.z_support.weight() == value
    return DistanceResult(value, "exact", witness)


def _bfs_on(adj, n_nodes, source):
    dist = [-1] * n_nodes
    via = [None] * n_nodes
    dq = deque([source])
    dist[source] = 0
    while dq:
        u = dq.popleft()
        for v, q in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                via[v] = (u, q)
                dq.append(v)
    return dist, via


def _path_on(via, end):
    out = []
    node = end
    while via[node] is not None:
        prev, q = via[node]
        out.append(q)
        node = prev
    return out[::-1]


# -- min cut -----------------------------------------------------------------


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.head: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(1)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(1)

    def bfs_level(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    dq.append(v)
        return level if level[t] >= 0 else None

    def dfs(self, u: int, t: int, level, it):
        if u == t:
            return True
        while it[u] < len(self.head[u]):
            a = self.head[u][it[u]]
            v = self.to[a]
            if self.cap[a] > 0 and level[v] == level[u] + 1 and self.dfs(v, t, level, it):
                self.cap[a] -= 1
                self.cap[a ^ 1] += 1
                return True
            it[u] += 1
        return False

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self.bfs_level(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while self.dfs(s, t, level, it):
                flow += 1

    def reachable(self, s: int):
        seen = [False] * self.n
        seen[s] = True
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and not seen[v]:
                    seen[v] = True
                    dq.append(v)
        return seen


def dx_min_cut(code: CssCode) -> DistanceResult:
    """Exact d_X for the (1, n-1) open-cube geometry with two e-components.

    The minimum-weight X-logical equals the minimum number of qubit edges
    separating the two e-components; the witness is the canonical
    source-side residual cut.
    """
    g = _QubitGraph(code)
    cx = code.source
    if cx.background != "open":
        raise PreconditionError("min-cut distance needs the open-cube background")
    outer_e = [lb for lb in g.terminal_labels if lb.startswith("oE")]
    if len(g.terminal_labels) != 2 or len(outer_e) != 2:
        raise PreconditionError(
            "min-cut distance needs exactly two OuterE components and uniform "
            "m-boundaries elsewhere; run exhaustive_low_weight instead"
        )
    s = g.terminal_node(outer_e[0])
    t = g.terminal_node(outer_e[1])
    net = _Dinic(g.n_nodes)
    for u, v in g.edges:
        if u != v:
            net.add_edge(u, v)
    value = net.max_flow(s, t)
    seen = net.reachable(s)
    cut = [
        q for q, (u, v) in enumerate(g.edges) if u != v and seen[u] != seen[v]
    ]
    assert len(cut) == value, (len(cut), value)
    witness = PauliOperator.x_type(Gf2Vector.from_indices(code.n_qubits, cut))
    assert is_x_logical(code, witness.x_support), "min-cut witness not logical"
    return DistanceResult(value, "exact", witness)


# -- exhaustive search -------------------------------------------------------


def exhaustive_low_weight(
    code: CssCode, op_type: str, w_max: int, budget: int | None = None
) -> DistanceResult:
    """Enumerate connected supports of weight 1..w_max; exact distance if a
    logical is found, else certified_above(w_max).

    op_type is "X" or "Z".  Aborts with BudgetError past the node budget
    (env FRACTALCSS_BUDGET overrides the default).
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    if op_type not in ("X", "Z"):
        raise ValueError(f"op_type must be 'X' or 'Z', not {op_type!r}")
    budget = budget if budget is not None else search_budget()
    n = code.n_qubits
    syndrome_checks = code.hz if op_type == "X" else code.hx

    checks_of_qubit: list[list[int]] = [[] for _ in range(n)]
    row_lists = []
    for m, tag in ((code.hx, 0), (code.hz, 1)):
        for r in range(m.rows):
            sup = m.row_indices(r)
            row_lists.append(sup)
            for q in sup:
                checks_of_qubit[q].append(len(row_lists) - 1)
    syn_of_qubit: list[list[int]] = [[] for _ in range(n)]
    for r in range(syndrome_checks.rows):
        for q in syndrome_checks.row_indices(r):
            syn_of_qubit[q].append(r)

    neighbors: list[list[int]] = [[] for _ in range(n)]
    seen_pairs = set()
    for sup in row_lists:
        for a in range(len(sup)):
            for b in range(a + 1, len(sup)):
                pair = (sup[a], sup[b])
                if pair not in seen_pairs:
                    seen_pairs.add(pair)
                    neighbors[pair[0]].append(pair[1])
                    neighbors[pair[1]].append(pair[0])
    neighbors = [sorted(set(ns)) for ns in neighbors]

    nodes_visited = 0

    def is_logical(support: tuple[int, ...]) -> bool:
        syn = set()
        for q in support:
            syn.symmetric_difference_update(syn_of_qubit[q])
        if syn:
            return False
        v = Gf2Vector.from_indices(n, support)
        return is_x_logical(code, v) if op_type == "X" else is_z_logical(code, v)

    def extend(sub: list[int], extension: list[int], target: int):
        nonlocal nodes_visited
        if len(sub) == target:
            if is_logical(tuple(sub)):
                return tuple(sub)
            return None
        ext = list(extension)
        while ext:
            u = ext.pop(0)
            nodes_visited += 1
            if nodes_visited > budget:
                raise BudgetError(
                    f"exhaustive search exceeded the node budget ({budget}); "
                    "raise FRACTALCSS_BUDGET to continue"
                )
            grown = ext + [
                w
                for w in neighbors[u]
                if w > sub[0] and w not in sub and w not in ext and w != u
            ]
            found = extend(sub + [u], grown, target)
            if found:
                return found
        return None

    for w in range(1, w_max + 1):
        for root in range(n):
            nodes_visited += 1
            if nodes_visited > budget:
                raise BudgetError(
                    f"exhaustive search exceeded the node budget ({budget}); "
                    "raise FRACTALCSS_BUDGET to continue"
                )
            if w == 1:
                if is_logical((root,)):
                    return _exact_result(code, op_type, (root,))
            else:
                ext = [u for u in neighbors[root] if u > root]
                found = extend([root], ext, w)
                if found:
                    return _exact_result(code, op_type, found)
    return DistanceResult(w_max, "certified_above", None)


def _exact_result(code, op_type, support) -> DistanceResult:
    v = Gf2Vector.from_indices(code.n_qubits, support)
    witness = PauliOperator.x_type(v) if op_type == "X" else PauliOperator.z_type(v)
    return DistanceResult(len(support), "exact", witness)


# -- scaling fits ------------------------------------------------------------


def fit_scaling(points) -> ScalingFit:
    """Least-squares slope on (ln L, ln d)."""
    points = [(float(L), float(d)) for L, d in points]
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    if any(L <= 0 or d <= 0 for L, d in points):
        raise ValueError("scaling fit needs positive coordinates")
    xs = np.log([L for L, _ in points])
    ys = np.log([d for _, d in points])
    if np.allclose(xs, xs[0]):
        return ScalingFit(tuple(points), 0.0, 0.0)
    coeffs, residuals, *_ = np.polyfit(xs, ys, 1, full=True)
    residual = float(residuals[0]) if len(residuals) else 0.0
    return ScalingFit(tuple(points), float(coeffs[0]), residual)
