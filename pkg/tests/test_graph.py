from fractions import Fraction as F

import pytest

from corpus import built_graphs
from simultile import (SQRT, ElementarySet, FieldNum, Interval, PiecewiseFn, component_analysis,
                       degree_profile, fiber_count, fn_interval_system, fn_tiler, induce_cell_graph,
                       iterate_removal, leaves_removal_step, project)
from simultile.errors import ClosureDiverged, NonConstantWeightOnCell
from simultile.numeric import ComplexField
from simultile.stepfn import Piece

GRAPHS = built_graphs()
IDS = [name for name, _, _ in GRAPHS]
Z = FieldNum(0)


def pos(x):
    return x.sign() > 0


def matching():
    return induce_cell_graph(ElementarySet([(0, 1)]))


class TestInduce:
    def test_matching(self):
        G = matching()
        assert (len(G.a_cells), len(G.b_cells), len(G.edge_cells)) == (1, 1, 1)
        assert G.a_cells[0].arc == ElementarySet.full_circle(1)
        assert G.b_cells[0].measure == 1

    def test_fn_two_by_three(self):
        t = fn_tiler(2, 3, F(3, 10))
        G = induce_cell_graph(t.omega, weights=t.f)
        assert (len(G.a_cells), len(G.b_cells), len(G.edge_cells)) == (3, 2, 4)
        comps = component_analysis(G)
        assert len(comps) == 1 and comps[0].is_finite_tree

    def test_interval_shorter_than_sum_closes(self):
        # the orbits of 0 and 2 inside [0, 2) are finite since 2 < 1 + sqrt2
        G = induce_cell_graph(ElementarySet([(0, 2)]))
        assert (len(G.a_cells), len(G.b_cells), len(G.edge_cells)) == (5, 7, 10)
        assert G.eta() == SQRT - 1

    @pytest.mark.parametrize("hi", [3, F(5, 2), 1 + SQRT, F(12, 5)])
    def test_closure_diverges(self, hi):
        with pytest.raises(ClosureDiverged):
            induce_cell_graph(ElementarySet([(0, hi)]))

    def test_slope_rejected(self):
        w = PiecewiseFn([Piece(Interval(0, 1), ComplexField(0), ComplexField(1))])
        with pytest.raises(NonConstantWeightOnCell):
            induce_cell_graph(ElementarySet([(0, 1)]), weights=w)

    def test_empty(self):
        G = induce_cell_graph(ElementarySet.empty())
        assert G.is_empty() and degree_profile(G) == {}

    @pytest.mark.parametrize("name, G, omega", GRAPHS, ids=IDS)
    def test_cells_against_fibers(self, name, G, omega):
        assert sum((e.measure for e in G.edge_cells), Z) == omega.measure()
        for side, cells, L in (("A", G.a_cells, G.alpha), ("B", G.b_cells, G.beta)):
            for c, k in zip(cells, G.degrees(side)):
                lo = c.arc.parts[0].lo
                x = lo + c.measure / 3 if len(c.arc.parts) == 1 else c.arc.parts[-1].lo + (L - c.arc.parts[-1].lo) / 3
                assert fiber_count(omega, L, x) == k
        for e in G.edge_cells:
            piece = ElementarySet([e.interval])
            assert project(piece, G.alpha) == G.a_cells[e.a_index].arc
            assert project(piece, G.beta) == G.b_cells[e.b_index].arc


class TestDegreeProfile:
    def test_matching(self):
        assert degree_profile(matching()) == {1: (1, 1)}

    def test_fn_tree(self):
        t = fn_tiler(2, 3, F(3, 10))
        g = F(3, 10)
        assert degree_profile(induce_cell_graph(t.omega)) == {1: (2 * g, 0), 2: (g, 2 * g)}


class TestRemovalStep:
    def test_matching(self):
        H, leaves, jump = leaves_removal_step(matching(), "A")
        assert H.is_empty() and leaves == 1 and jump == 1

    def test_path(self):
        S = fn_interval_system(2, 3, F(3, 10))
        G = induce_cell_graph(ElementarySet([S.intervals[(0, 0)], S.intervals[(0, 1)]]))
        assert (len(G.a_cells), len(G.b_cells)) == (2, 1)
        H, leaves, jump = leaves_removal_step(G, "A")
        assert H.is_empty() and leaves == F(3, 5) and jump == F(3, 10)

    def test_cycle(self):
        S = fn_interval_system(2, 2, F(1, 4))
        G = induce_cell_graph(ElementarySet(S.intervals.values()))
        H, leaves, jump = leaves_removal_step(G, "A")
        assert H == G and leaves == 0 and jump == 0

    def test_isolated(self):
        G = matching().subgraph([0], [0], [])
        with pytest.raises(ValueError):
            leaves_removal_step(G, "A")


class TestIterate:
    def test_matching(self):
        tr = iterate_removal(matching())
        assert len(tr.steps) == 1 and tr.exhausted and tr.total_jump == 1

    def test_fn_tree(self):
        t = fn_tiler(2, 3, F(3, 10))
        G = induce_cell_graph(t.omega, weights=t.f)
        tr = iterate_removal(G)
        assert tr.exhausted and tr.final_eta == 0
        assert tr.total_jump == tr.etas[0] == F(3, 10)

    def test_cycle(self):
        S = fn_interval_system(3, 3, F(1, 5))
        tr = iterate_removal(induce_cell_graph(ElementarySet(S.intervals.values())))
        assert not tr.exhausted and tr.total_jump == 0
        assert len(set(tr.etas)) == 1

    def test_start_side(self):
        with pytest.raises(ValueError):
            iterate_removal(matching(), start="C")
        assert iterate_removal(matching(), start="B").steps[0].side == "B"


class TestComponents:
    def test_fn_double_count(self):
        t = fn_tiler(2, 3, F(3, 10))
        (c,) = component_analysis(induce_cell_graph(t.omega, weights=t.f))
        assert (c.a_count, c.b_count) == (3, 2)
        assert (c.weight_p, c.weight_q) == (ComplexField(2), ComplexField(3))
        assert c.double_count_ok

    def test_weighted_matching(self):
        G = induce_cell_graph(ElementarySet([(0, 1)]), weights=PiecewiseFn.indicator(Interval(0, 1)))
        (c,) = component_analysis(G)
        assert c.is_finite_tree and c.double_count_ok

    def test_cycle(self):
        S = fn_interval_system(2, 2, F(1, 4))
        (c,) = component_analysis(induce_cell_graph(ElementarySet(S.intervals.values())))
        assert not c.is_finite_tree and c.double_count_ok is None


@pytest.mark.parametrize("name, G, omega", GRAPHS, ids=IDS)
class TestInvariants:
    def test_edge_counting(self, name, G, omega):
        prof = degree_profile(G)
        for slot, side in enumerate(("A", "B")):
            for k, m_e in G.edge_measure_by_degree(side).items():
                assert m_e == k * prof[k][slot]

    def test_leaf_bounds(self, name, G, omega):
        prof = degree_profile(G)
        a1, b1 = prof.get(1, (Z, Z))
        m_om = omega.measure()
        assert a1 >= 2 * G.measure_a() - m_om
        assert b1 >= 2 * G.measure_b() - m_om
        assert a1 + b1 >= 2 * G.eta()

    def test_removed_leaves(self, name, G, omega):
        tr = iterate_removal(G)
        for n, s in enumerate(tr.steps):
            if not pos(s.eta):
                continue
            if n == 0 and G.measure_a() > G.measure_b():
                assert s.removed_leaves_measure > s.eta
            if n >= 1:
                assert s.removed_leaves_measure >= 2 * s.eta

    def test_jump_accounting(self, name, G, omega):
        tr = iterate_removal(G)
        etas = tr.etas
        for n, s in enumerate(tr.steps):
            assert etas[n] - etas[n + 1] == s.jump_measure
            assert etas[n + 1] <= etas[n]
        assert tr.total_jump == etas[0] - etas[-1]
        if tr.exhausted:
            assert tr.total_jump >= G.measure_a() + G.measure_b() - omega.measure()

    def test_one_jump_cell_per_tree(self, name, G, omega):
        tr = iterate_removal(G)
        expected = Z
        for c in tr.components:
            if c.is_finite_tree:
                cells = [G.a_cells[i].measure for i in c.a_indices] + [G.b_cells[j].measure for j in c.b_indices]
                assert len(set(cells)) == 1
                expected += c.a_measure / c.a_count
        assert tr.total_jump == expected

    def test_tree_representative_bound(self, name, G, omega):
        comps = component_analysis(G)
        if not comps or any(c.weight_p is None or c.weight_q is None for c in comps):
            return
        p, q = comps[0].weight_p, comps[0].weight_q
        if any((c.weight_p, c.weight_q) != (p, q) for c in comps):
            return
        tr = iterate_removal(G)
        pr, qr = p.re, q.re
        assert tr.total_jump * qr <= G.measure_a() and tr.total_jump * pr <= G.measure_b()
        for c in comps:
            if c.is_finite_tree:
                assert c.double_count_ok
