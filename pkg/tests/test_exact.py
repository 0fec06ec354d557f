"""Brute-force optimum, brute-force separation, and cut counting."""

import random

import pytest

from flexconn import (
    Cut,
    FgcInstance,
    Multigraph,
    TooLargeError,
    all_cut_capacities,
    count_cuts_at_most,
    cut_edges,
    exact_opt,
    is_feasible,
    is_feasible_direct,
    min_cut,
    separate_bruteforce,
    solve_relaxation,
    violation,
)

from instances import (
    cycle_graph,
    gadget_f1,
    named_corpus,
    triangle_p1q0,
    two_vertex,
    two_vertex_pricey,
)


def test_exact_opt_two_vertex():
    res = exact_opt(two_vertex())
    assert res.best_selection == {1, 2}
    assert res.best_cost == 2.0


def test_exact_opt_prefers_single_safe_edge_when_unsafe_pricey():
    res = exact_opt(two_vertex_pricey())
    assert res.best_selection == {0}
    assert res.best_cost == 5.0


def test_exact_opt_triangle():
    res = exact_opt(triangle_p1q0())
    assert res.best_cost == 2.0
    assert len(res.best_selection) == 2


def test_exact_opt_lexicographic_tie_break():
    g = Multigraph(2, ((0, 1), (0, 1)))
    inst = FgcInstance(g, (False, False), (1.0, 1.0), p=1, q=0)
    res = exact_opt(inst)
    assert res.best_selection == {0}


def test_exact_opt_refuses_large_inputs():
    g = cycle_graph(24)
    inst = FgcInstance(g, (True,) * 24, (1.0,) * 24, p=1, q=0)
    with pytest.raises(TooLargeError):
        exact_opt(inst)


def test_exact_opt_optimum_is_feasible_and_sandwiched():
    for name, inst in named_corpus():
        if inst.m > 18:
            continue
        res = exact_opt(inst)
        assert is_feasible_direct(inst, res.best_selection).feasible, name
        assert is_feasible(inst, res.best_selection).feasible, name
        relax = solve_relaxation(inst)
        assert relax.value <= res.best_cost + 1e-6, name
        # no strictly cheaper feasible set of the same size or smaller exists:
        # spot-check by dropping any one edge
        for e in sorted(res.best_selection):
            smaller = res.best_selection - {e}
            if is_feasible_direct(inst, smaller).feasible:
                assert inst.selection_cost(smaller) >= res.best_cost, name


def test_exact_opt_explores_nodes():
    res = exact_opt(two_vertex())
    assert res.nodes_explored >= 3


def test_separate_bruteforce_empty_on_feasible_point():
    for name, inst in named_corpus():
        if inst.n > 10:
            continue
        rows = separate_bruteforce(inst, (1.0,) * inst.m, 0.0)
        assert rows == [], name


def test_separate_bruteforce_zero_point_reports_every_cut():
    inst = triangle_p1q0()
    x = (0.0, 0.0, 0.0)
    rows = separate_bruteforce(inst, x, 0.0)
    # with p = 1, q = 0 the only candidate J is empty, one row per cut,
    # each violated by exactly p (p + q) = 1
    assert len(rows) == 3
    assert all(not r.j_edges for r in rows)
    assert all(violation(r, x) == pytest.approx(1.0) for r in rows)


def test_separate_bruteforce_gadget_top_row():
    # at x = 1 every plain cut row is satisfied, so the top violation comes
    # from a proper knapsack row: J = the three unsafe edges, violated by 3
    inst = gadget_f1()
    x = (1.0, 1.0, 1.0, 1.0)
    rows = separate_bruteforce(inst, x, 0.0)
    assert violation(rows[0], x) == pytest.approx(3.0)
    assert rows[0].a == 0 and rows[0].b == 3
    violations = [violation(r, x) for r in rows]
    assert violations == sorted(violations, reverse=True)


def test_separate_bruteforce_respects_eps():
    inst = gadget_f1()
    x = (0.5, 0.5, 0.5, 0.5)
    assert separate_bruteforce(inst, x, 2.9) == [
        r for r in separate_bruteforce(inst, x, 0.0) if violation(r, x) > 2.9
    ]


def test_separate_bruteforce_refuses_large_graphs():
    g = cycle_graph(14)
    inst = FgcInstance(g, (True,) * 14, (1.0,) * 14, p=1, q=0)
    with pytest.raises(TooLargeError):
        separate_bruteforce(inst, (0.5,) * 14, 0.0)


def test_all_cut_capacities_matches_cut_edges():
    rng = random.Random(21)
    for _ in range(20):
        n = rng.randint(2, 8)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(rng.randint(0, 6)):
            u, v = rng.sample(range(n), 2)
            edges.append((min(u, v), max(u, v)))
        g = Multigraph(n, tuple(edges))
        caps = [rng.randint(0, 5) for _ in range(g.m)]
        pairs = all_cut_capacities(g, caps)
        assert len(pairs) == 2 ** (n - 1) - 1
        for mask, cap in pairs:
            assert cap == sum(caps[e] for e in cut_edges(g, Cut(g.n, mask)))
        assert min(cap for _, cap in pairs) == min_cut(g, caps)[1]


def test_count_cuts_cycle_min_cuts():
    for n in range(4, 11):
        g = cycle_graph(n)
        assert count_cuts_at_most(g, [1] * n, 1.0) == n * (n - 1) // 2


def test_count_cuts_four_cycle_doubled_threshold():
    g = cycle_graph(4)
    # capacities 2 and 4 only; alpha = 2 admits every one of the 7 cuts
    assert count_cuts_at_most(g, [1] * 4, 2.0) == 7
    assert count_cuts_at_most(g, [1] * 4, 1.5) == 6


def test_count_cuts_at_least_one():
    rng = random.Random(33)
    for _ in range(25):
        n = rng.randint(2, 9)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(rng.randint(0, 8)):
            u, v = rng.sample(range(n), 2)
            edges.append((min(u, v), max(u, v)))
        g = Multigraph(n, tuple(edges))
        caps = [rng.randint(1, 4) for _ in range(g.m)]
        assert count_cuts_at_most(g, caps, 1.0) >= 1
