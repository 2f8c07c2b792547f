"""Finite measured quotients of the bipartite graph induced by a set on the line.

Every point ``x`` of a finite union of intervals ``Omega`` is an edge joining
``pi_alpha(x)`` on ``T_alpha`` to ``pi_beta(x)`` on ``T_beta``.  Cutting
``Omega`` at a set of breakpoints closed under the two translation actions
makes the combinatorics constant along each resulting interval, so the
uncountable graph collapses to a finite graph of interval *cells*; every
point-level component is a copy of the cell-level component containing it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ClosureDiverged, NonConstantWeightOnCell
from .numeric import SQRT, ComplexField, FieldNum, fnum, reduce_mod
from .sets import ElementarySet, Interval, arc
from .stepfn import PiecewiseFn

__all__ = [
    "VertexCell",
    "EdgeCell",
    "CellGraph",
    "RemovalStep",
    "RemovalTrace",
    "ComponentSummary",
    "induce_cell_graph",
    "degree_profile",
    "leaves_removal_step",
    "iterate_removal",
    "component_analysis",
]

_ZERO = FieldNum(0)


@dataclass(frozen=True)
class VertexCell:
    """An arc of a circle standing for a measured family of vertices."""

    arc: ElementarySet
    measure: FieldNum


@dataclass(frozen=True)
class EdgeCell:
    interval: Interval
    measure: FieldNum
    weight: ComplexField | None
    a_index: int
    b_index: int


@dataclass(frozen=True)
class CellGraph:
    alpha: FieldNum
    beta: FieldNum
    a_cells: tuple[VertexCell, ...]
    b_cells: tuple[VertexCell, ...]
    edge_cells: tuple[EdgeCell, ...]

    # -- measures ---------------------------------------------------------
    def measure_a(self) -> FieldNum:
        return sum((c.measure for c in self.a_cells), _ZERO)

    def measure_b(self) -> FieldNum:
        return sum((c.measure for c in self.b_cells), _ZERO)

    def measure_e(self) -> FieldNum:
        return sum((e.measure for e in self.edge_cells), _ZERO)

    def eta(self) -> FieldNum:
        """Euler characteristic ``m(A) + m(B) - m(E)``."""
        return self.measure_a() + self.measure_b() - self.measure_e()

    def is_empty(self) -> bool:
        return not (self.a_cells or self.b_cells or self.edge_cells)

    # -- incidence --------------------------------------------------------
    def degrees(self, side: str) -> list[int]:
        cells = self._side(side)
        deg = [0] * len(cells)
        for e in self.edge_cells:
            deg[e.a_index if side == "A" else e.b_index] += 1
        return deg

    def vertex_weights(self, side: str) -> list[ComplexField | None]:
        """Sum of incident edge weights per cell, i.e. the projection of the weight function."""
        cells = self._side(side)
        out: list = [ComplexField(0)] * len(cells)
        for e in self.edge_cells:
            i = e.a_index if side == "A" else e.b_index
            if e.weight is None or out[i] is None:
                out[i] = None
            else:
                out[i] = out[i] + e.weight
        return out

    def _side(self, side: str):
        if side == "A":
            return self.a_cells
        if side == "B":
            return self.b_cells
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")

    def edge_measure_by_degree(self, side: str) -> dict[int, FieldNum]:
        """``k -> m(E(S_k))``, the measure of edges incident to degree-``k`` cells."""
        deg = self.degrees(side)
        out: dict[int, FieldNum] = {}
        for e in self.edge_cells:
            k = deg[e.a_index if side == "A" else e.b_index]
            out[k] = out.get(k, _ZERO) + e.measure
        return out

    def subgraph(self, keep_a: Iterable[int], keep_b: Iterable[int],
                 keep_e: Iterable[int]) -> CellGraph:
        ka, kb = sorted(set(keep_a)), sorted(set(keep_b))
        ra = {old: new for new, old in enumerate(ka)}
        rb = {old: new for new, old in enumerate(kb)}
        edges = []
        for i in sorted(set(keep_e)):
            e = self.edge_cells[i]
            edges.append(EdgeCell(e.interval, e.measure, e.weight, ra[e.a_index], rb[e.b_index]))
        return CellGraph(self.alpha, self.beta, tuple(self.a_cells[i] for i in ka),
                         tuple(self.b_cells[i] for i in kb), tuple(edges))

    def components(self) -> list[tuple[list[int], list[int], list[int]]]:
        """Connected components as ``(a indices, b indices, edge indices)``."""
        na = len(self.a_cells)
        parent = list(range(na + len(self.b_cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edge_cells:
            u, v = find(e.a_index), find(na + e.b_index)
            if u != v:
                parent[u] = v
        groups: dict[int, tuple[list, list, list]] = {}
        for v in range(len(parent)):
            g = groups.setdefault(find(v), ([], [], []))
            (g[0].append(v) if v < na else g[1].append(v - na))
        for i, e in enumerate(self.edge_cells):
            groups[find(e.a_index)][2].append(i)
        return [groups[k] for k in sorted(groups)]


def _closure(omega: ElementarySet, seeds: set[FieldNum], alpha, beta, cap: int,
             max_points: int) -> set[FieldNum]:
    """Smallest superset of ``seeds`` in ``Omega`` closed under ``x -> x + k*alpha``, ``x -> x + k*beta``."""
    pts = set(seeds)
    frontier = set(seeds)
    seen = {alpha: set(), beta: set()}
    for _ in range(cap):
        fresh: set[FieldNum] = set()
        for L in (alpha, beta):
            circle = {reduce_mod(x, L)[0] for x in frontier} - seen[L]
            seen[L] |= circle
            for c in circle:
                for iv in omega.parts:
                    lo_k = math.ceil((iv.lo - c) / L)
                    hi_k = math.floor((iv.hi - c) / L)
                    for k in range(lo_k, hi_k + 1):
                        fresh.add(c + L * k)
        fresh -= pts
        if not fresh:
            return pts
        pts |= fresh
        if len(pts) > max_points:
            break
        frontier = fresh
    raise ClosureDiverged(
        f"breakpoint closure still growing after {cap} rounds ({len(pts)} points)")


def _vertex_cells(keys: dict, L: FieldNum) -> tuple[list[VertexCell], dict]:
    order = sorted(keys)
    index = {k: i for i, k in enumerate(order)}
    return [VertexCell(arc(L, k, keys[k]), keys[k]) for k in order], index


def induce_cell_graph(omega: ElementarySet, alpha=1, beta=SQRT, weights: PiecewiseFn | None = None,
                      closure_rounds_cap: int = 64, max_points: int = 20000) -> CellGraph:
    """The finite cell graph of ``Omega``, optionally weighted by ``weights``.

    Breakpoints start from the endpoints of ``Omega`` and the breakpoints of
    ``weights`` inside it, and are closed under both translation actions.
    """
    alpha = fnum(alpha)
    beta = fnum(beta)
    if omega.ambient is not None:
        raise ValueError("omega must be a set on the line")
    seeds = set(omega.endpoints())
    if weights is not None:
        seeds |= {b for b in weights.breakpoints() if any(iv.lo <= b <= iv.hi for iv in omega.parts)}
    pts = sorted(_closure(omega, seeds, alpha, beta, closure_rounds_cap, max_points))
    circle_a = sorted({reduce_mod(x, alpha)[0] for x in pts})
    circle_b = sorted({reduce_mod(x, beta)[0] for x in pts})

    def gap(circle, c, L):
        i = circle.index(c)
        nxt = circle[(i + 1) % len(circle)]
        g = reduce_mod(nxt - c, L)[0]
        return L if g == 0 else g

    raw = []
    keys_a: dict = {}
    keys_b: dict = {}
    for iv in omega.parts:
        inner = [x for x in pts if iv.lo <= x <= iv.hi]
        for x0, x1 in zip(inner, inner[1:]):
            ln = x1 - x0
            ka, kb = reduce_mod(x0, alpha)[0], reduce_mod(x0, beta)[0]
            if gap(circle_a, ka, alpha) != ln or gap(circle_b, kb, beta) != ln:
                raise AssertionError(f"cell [{x0}, {x1}) is not a single arc on both circles")
            keys_a[ka] = ln
            keys_b[kb] = ln
            w = None
            if weights is not None:
                cells = weights.cells(ElementarySet([Interval(x0, x1)]))
                (_, _, c0, c1), = cells
                if c1:
                    raise NonConstantWeightOnCell(f"weight has slope {c1} on [{x0}, {x1})")
                w = c0
            raw.append((Interval(x0, x1), ln, w, ka, kb))
    a_cells, ia = _vertex_cells(keys_a, alpha)
    b_cells, ib = _vertex_cells(keys_b, beta)
    edges = tuple(EdgeCell(iv, ln, w, ia[ka], ib[kb]) for iv, ln, w, ka, kb in raw)
    return CellGraph(alpha, beta, tuple(a_cells), tuple(b_cells), edges)


def degree_profile(G: CellGraph) -> dict[int, tuple[FieldNum, FieldNum]]:
    """``k -> (m(A_k), m(B_k))`` over the degrees that occur."""
    out: dict[int, list[FieldNum]] = {}
    for side, slot in (("A", 0), ("B", 1)):
        for c, k in zip(G._side(side), G.degrees(side)):
            out.setdefault(k, [_ZERO, _ZERO])[slot] += c.measure
    return {k: (v[0], v[1]) for k, v in sorted(out.items())}


def leaves_removal_step(G: CellGraph, side: str = "A") -> tuple[CellGraph, FieldNum, FieldNum]:
    """Remove the degree-1 cells of ``side``, their edges, and the stars this isolates.

    Returns ``(G', m(leaves), m(jump))`` where the jump set is the cells of
    the other side whose neighbours were all leaves.
    """
    other = "B" if side == "A" else "A"
    deg = G.degrees(side)
    if any(d == 0 for d in deg) or any(d == 0 for d in G.degrees(other)):
        raise ValueError("graph has isolated cells")
    leaves = {i for i, d in enumerate(deg) if d == 1}

    def mine(e):
        return e.a_index if side == "A" else e.b_index

    def theirs(e):
        return e.b_index if side == "A" else e.a_index

    keep_e = [i for i, e in enumerate(G.edge_cells) if mine(e) not in leaves]
    still_touched = {theirs(G.edge_cells[i]) for i in keep_e}
    n_other = len(G._side(other))
    stars = [j for j in range(n_other) if j not in still_touched]
    keep_mine = [i for i in range(len(deg)) if i not in leaves]
    keep_theirs = [j for j in range(n_other) if j in still_touched]
    leaves_m = sum((G._side(side)[i].measure for i in leaves), _ZERO)
    jump_m = sum((G._side(other)[j].measure for j in stars), _ZERO)
    if side == "A":
        H = G.subgraph(keep_mine, keep_theirs, keep_e)
    else:
        H = G.subgraph(keep_theirs, keep_mine, keep_e)
    return H, leaves_m, jump_m


@dataclass(frozen=True)
class RemovalStep:
    side: str
    eta: FieldNum
    removed_leaves_measure: FieldNum
    jump_measure: FieldNum
    graph: CellGraph = field(repr=False, compare=False)


@dataclass(frozen=True)
class ComponentSummary:
    is_finite_tree: bool
    a_count: int
    b_count: int
    edge_count: int
    a_measure: FieldNum
    b_measure: FieldNum
    total_weight_from_a: ComplexField | None
    total_weight_from_b: ComplexField | None
    weight_p: ComplexField | None
    weight_q: ComplexField | None
    double_count_ok: bool | None
    a_indices: tuple[int, ...] = ()
    b_indices: tuple[int, ...] = ()


@dataclass(frozen=True)
class RemovalTrace:
    """Per-step record of iterated leaves removal.

    ``steps[n].eta`` is the Euler characteristic before step ``n``;
    ``final_eta`` is the value after the last step.
    """

    steps: tuple[RemovalStep, ...]
    final_eta: FieldNum
    total_jump: FieldNum
    exhausted: bool
    components: tuple[ComponentSummary, ...]
    final_graph: CellGraph = field(repr=False, compare=False)

    @property
    def etas(self) -> list[FieldNum]:
        return [s.eta for s in self.steps] + [self.final_eta]


def iterate_removal(G: CellGraph, start: str = "A", max_steps: int = 10000) -> RemovalTrace:
    """Alternate leaves removal from ``start`` until the graph is empty or two steps change nothing."""
    if start not in ("A", "B"):
        raise ValueError("start must be 'A' or 'B'")
    steps = []
    side = start
    cur = G
    idle = 0
    total = _ZERO
    for _ in range(max_steps):
        if cur.is_empty() or idle >= 2:
            break
        eta = cur.eta()
        nxt, leaves_m, jump_m = leaves_removal_step(cur, side)
        steps.append(RemovalStep(side, eta, leaves_m, jump_m, cur))
        total = total + jump_m
        idle = idle + 1 if len(nxt.edge_cells) == len(cur.edge_cells) else 0
        cur = nxt
        side = "B" if side == "A" else "A"
    return RemovalTrace(tuple(steps), cur.eta(), total, cur.is_empty(),
                        tuple(component_analysis(G)), cur)


def _common(values):
    vals = list(values)
    if not vals or any(v is None for v in vals):
        return None
    return vals[0] if all(v == vals[0] for v in vals) else None


def component_analysis(G: CellGraph) -> list[ComponentSummary]:
    """Tree test, cell counts, measures and weight totals per connected component.

    When every ``A`` cell of a component has the same weight ``p`` and every
    ``B`` cell the same weight ``q``, ``double_count_ok`` records whether
    ``(#A cells) * p == (#B cells) * q``.
    """
    wa, wb = G.vertex_weights("A"), G.vertex_weights("B")
    out = []
    for a_idx, b_idx, e_idx in G.components():
        is_tree = len(e_idx) == len(a_idx) + len(b_idx) - 1
        ta = None if any(wa[i] is None for i in a_idx) else sum((wa[i] for i in a_idx), ComplexField(0))
        tb = None if any(wb[j] is None for j in b_idx) else sum((wb[j] for j in b_idx), ComplexField(0))
        p, q = _common(wa[i] for i in a_idx), _common(wb[j] for j in b_idx)
        dc = None if p is None or q is None else p * len(a_idx) == q * len(b_idx)
        out.append(ComponentSummary(
            is_tree, len(a_idx), len(b_idx), len(e_idx),
            sum((G.a_cells[i].measure for i in a_idx), _ZERO),
            sum((G.b_cells[j].measure for j in b_idx), _ZERO),
            ta, tb, p, q, dc, tuple(a_idx), tuple(b_idx)))
    return out
