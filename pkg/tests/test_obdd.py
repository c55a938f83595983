import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mimlab.errors import BudgetExceededError
from mimlab.generators import clique_corona, clique_thread, fixtures, two_rows
from mimlab.graph import Graph
from mimlab.obdd import (
    FALSE_ID,
    TRUE_ID,
    Obdd,
    build_obdd,
    cnf_of_graph,
    count_accepting,
    count_satisfying,
    eval_obdd,
    exhaustive_equiv_check,
    format_dimacs,
    matching_trace_family,
    min_obdd_size_exact,
    obdd_bounds_report,
    obdd_to_dot,
    subfunction_count,
)
from mimlab.traces import trace_masks

from conftest import graphs_without_isolated
from oracles import naive_count_satisfying

C4 = fixtures()["c4"]
K2 = fixtures()["k2"]


class TestCnf:
    def test_c4_clauses(self):
        cnf = cnf_of_graph(C4)
        assert cnf.clauses == ((0, 1), (0, 2), (1, 3), (2, 3))

    def test_k2(self):
        assert cnf_of_graph(K2).clauses == ((0, 1),)

    def test_isolated_vertex_rejected(self):
        with pytest.raises(ValueError):
            cnf_of_graph(Graph(3, [(0, 1)]))

    def test_dimacs_format(self):
        text = format_dimacs(cnf_of_graph(K2))
        assert text == "p cnf 2 1\n1 2 0\n"


class TestSubfunctionCount:
    def test_c4_pair(self):
        assert subfunction_count(C4, [0, 1]) == 3

    def test_empty_prefix(self):
        assert subfunction_count(C4, []) == 1

    def test_full_prefix(self):
        assert subfunction_count(C4, range(4)) == 1

    def test_guard(self):
        with pytest.raises(BudgetExceededError):
            subfunction_count(C4, [0], limit=3)

    @given(graphs_without_isolated(max_n=6), st.integers(0, 63))
    @settings(max_examples=50, deadline=None)
    def test_equals_trace_count(self, g, umask_seed):
        umask = umask_seed & ((1 << g.n) - 1)
        u = [v for v in range(g.n) if umask >> v & 1]
        assert subfunction_count(g, u) == len(trace_masks(g, umask))


class TestBuildAndEval:
    def test_k2_sizes(self):
        z = build_obdd(K2, [0, 1])
        assert z.size_total == 4
        assert z.size_internal == 2
        assert z.size_quasi == 4

    def test_k2_eval(self):
        z = build_obdd(K2, [0, 1])
        assert eval_obdd(z, [True, False])
        assert not eval_obdd(z, [False, False])

    def test_c4_all_true(self):
        z = build_obdd(C4, [0, 1, 2, 3])
        assert eval_obdd(z, [True] * 4)

    def test_assignment_length_checked(self):
        z = build_obdd(K2, [0, 1])
        with pytest.raises(ValueError):
            eval_obdd(z, [True])

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            build_obdd(K2, [0, 0])

    def test_reduced_invariants(self):
        for order in itertools.permutations(range(4)):
            z = build_obdd(C4, order)
            seen = set()
            for nid, (var, lo, hi) in z.nodes.items():
                assert lo != hi
                assert (var, lo, hi) not in seen
                seen.add((var, lo, hi))
                for child in (lo, hi):
                    if child not in (FALSE_ID, TRUE_ID):
                        cvar = z.nodes[child][0]
                        assert z.position[cvar] > z.position[var]

    def test_quasi_at_least_reduced(self):
        for order in itertools.permutations(range(4)):
            z = build_obdd(C4, order)
            assert z.size_quasi >= z.size_total

    def test_levels_grouping(self):
        z = build_obdd(C4, [0, 1, 2, 3])
        levels = z.levels()
        assert sum(len(v) for v in levels.values()) == z.size_internal


class TestEquivalenceAndCounting:
    def test_c4_counts(self):
        z = build_obdd(C4, [0, 1, 2, 3])
        assert exhaustive_equiv_check(z, C4)
        assert count_accepting(z) == 7
        assert count_satisfying(C4) == 7

    def test_k2_count(self):
        assert count_satisfying(K2) == 3

    def test_swapped_sinks_fail(self):
        z = build_obdd(K2, [0, 1])
        swap = {FALSE_ID: TRUE_ID, TRUE_ID: FALSE_ID}
        nodes = {
            nid: (var, swap.get(lo, lo), swap.get(hi, hi))
            for nid, (var, lo, hi) in z.nodes.items()
        }
        negated = Obdd(z.order, nodes, z.root, z.level_live_counts)
        assert not exhaustive_equiv_check(negated, K2)

    @given(graphs_without_isolated(max_n=6), st.integers(0, 720))
    @settings(max_examples=50, deadline=None)
    def test_any_order_is_equivalent(self, g, perm_seed):
        perms = list(itertools.permutations(range(g.n)))
        order = perms[perm_seed % len(perms)]
        z = build_obdd(g, order)
        assert exhaustive_equiv_check(z, g)
        assert count_accepting(z) == count_satisfying(g)

    @given(graphs_without_isolated(max_n=6))
    @settings(max_examples=30, deadline=None)
    def test_count_satisfying_matches_naive(self, g):
        assert count_satisfying(g) == naive_count_satisfying(g)


class TestMinimization:
    def test_k2(self):
        rep = min_obdd_size_exact(K2)
        assert rep.size_total == 4
        assert rep.size_quasi == 4

    def test_c4_against_enumeration(self):
        dp = min_obdd_size_exact(C4)
        enum = min_obdd_size_exact(C4, method="enum")
        assert (dp.size_quasi, dp.size_total) == (enum.size_quasi, enum.size_total)

    def test_disjoint_edges(self):
        g = Graph(4, [(0, 1), (2, 3)])
        dp = min_obdd_size_exact(g)
        enum = min_obdd_size_exact(g, method="enum")
        assert (dp.size_quasi, dp.size_total) == (enum.size_quasi, enum.size_total)
        # keeping each edge's endpoints adjacent in the order achieves it
        paired = build_obdd(g, [0, 1, 2, 3])
        assert paired.size_total == dp.size_total

    def test_witness_orders_achieve_reported_sizes(self):
        g = two_rows()
        rep = min_obdd_size_exact(g)
        assert build_obdd(g, rep.order_quasi).size_quasi == rep.size_quasi
        assert build_obdd(g, rep.order_total).size_total == rep.size_total

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            min_obdd_size_exact(K2, method="magic")

    def test_guard(self):
        with pytest.raises(BudgetExceededError):
            min_obdd_size_exact(clique_thread(3), limit=5)

    @given(graphs_without_isolated(max_n=5))
    @settings(max_examples=25, deadline=None)
    def test_dp_equals_enumeration(self, g):
        dp = min_obdd_size_exact(g)
        enum = min_obdd_size_exact(g, method="enum")
        assert (dp.size_quasi, dp.size_total) == (enum.size_quasi, enum.size_total)

    def test_dp_equals_enumeration_exhaustive_small(self):
        from mimlab import corpus

        for n in (2, 3, 4, 5):
            for g in corpus.connected_graphs(n):
                dp = min_obdd_size_exact(g)
                enum = min_obdd_size_exact(g, method="enum")
                assert (dp.size_quasi, dp.size_total) == \
                    (enum.size_quasi, enum.size_total), g.edges()


class TestBoundsReport:
    def test_two_rows(self):
        rep = obdd_bounds_report(two_rows())
        assert rep.lu == 1
        assert rep.lower_bound == 2
        assert rep.all_ok

    def test_k2(self):
        rep = obdd_bounds_report(K2)
        assert rep.lu == 1
        assert rep.lower_bound == 2
        assert rep.min_size_quasi == 4
        assert rep.all_ok

    def test_clique_thread(self):
        rep = obdd_bounds_report(clique_thread(3))
        assert 2**rep.lu <= rep.min_size_quasi
        assert rep.all_ok

    def test_matching_trace_family_distinct(self):
        g = clique_corona(3)
        fam = matching_trace_family(g, range(3))
        traces = [t for _, t in fam]
        assert len(traces) == len(set(traces))


class TestLevelContract:
    @given(graphs_without_isolated(max_n=5), st.integers(0, 119))
    @settings(max_examples=40, deadline=None)
    def test_level_counts_bounded_by_subfunctions(self, g, perm_seed):
        perms = list(itertools.permutations(range(g.n)))
        order = perms[perm_seed % len(perms)]
        z = build_obdd(g, order)
        prefix = []
        for i in range(g.n):
            assert z.level_live_counts[i] <= subfunction_count(g, prefix)
            prefix.append(order[i])

    def test_per_level_decompositions_match_built_diagrams(self):
        # Both minimization DPs stand on per-level identities: the built
        # diagram's live-state count per level equals the live-trace count
        # of the prefix set, and its reduced node count per variable equals
        # the number of live states essentially depending on that variable.
        import random

        from mimlab import corpus
        from mimlab.obdd import _internal_edge_table, _live_trace_masks

        rng = random.Random(0)
        for n in (3, 4, 5, 6):
            for g in corpus.connected_graphs(n):
                he = _internal_edge_table(g)
                for _ in range(2):
                    order = list(range(n))
                    rng.shuffle(order)
                    z = build_obdd(g, order)
                    per_var = {v: 0 for v in order}
                    for var, _, _ in z.nodes.values():
                        per_var[var] += 1
                    full = (1 << n) - 1
                    wmask = 0
                    for i, v in enumerate(order):
                        comp = full ^ wmask
                        tr = _live_trace_masks(g, wmask, comp)
                        live = len(tr) - (0 if he[comp] else 1)
                        assert z.level_live_counts[i] == live
                        b = 1 << v
                        av = g.adj[v]
                        dep = sum(1 for t in tr if t & b or av & comp & ~t)
                        assert per_var[v] == dep
                        wmask |= b


class TestDot:
    def test_render(self):
        z = build_obdd(K2, [0, 1])
        dot = obdd_to_dot(z)
        assert "digraph obdd" in dot
        assert "doublecircle" in dot
        assert "style=dashed" in dot
