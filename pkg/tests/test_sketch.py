"""Single sketch-copy machinery: construction, queries, pivots, melds."""

import math

import numpy as np
import pytest

from fillorder.graphs import ComponentGraph, Graph, GraphError
from fillorder.instances import erdos_renyi, path, star
from fillorder.sketch import SketchCopy


def brute_query_min(cg, keys, u):
    members = cg.fill_neighborhood(u) | {u}
    owner = min(members, key=lambda v: keys[v])
    return keys[owner], owner


def test_empty_graph():
    cg = ComponentGraph(Graph.from_edges(0, []))
    sk = SketchCopy(cg, seed=1)
    assert sk.logical_state() == ({}, {})


def test_path_fill_min_is_over_direct_neighbors():
    cg = ComponentGraph(path(3))
    sk = SketchCopy(cg, seed=5)
    expect = min(sk.keys[v] for v in (0, 1, 2))
    assert sk.query_min(1).x == expect


def test_isolated_vertex_returns_own_key():
    cg = ComponentGraph(Graph.from_edges(1, []))
    sk = SketchCopy(cg, seed=2)
    assert sk.query_min(0) == sk.query_min(0)
    assert sk.query_min(0).owner == 0 and sk.query_min(0).x == sk.keys[0]


def test_triangle_every_vertex_shares_minimizer():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    cg = ComponentGraph(g)
    sk = SketchCopy(cg, seed=9)
    owner = int(np.argmin(sk.keys))
    for v in range(3):
        assert sk.query_min(v).owner == owner


def test_query_min_matches_bruteforce_static():
    for trial in range(30):
        g = erdos_renyi(15, 0.25, seed=trial)
        cg = ComponentGraph(g)
        sk = SketchCopy(cg, seed=trial + 1000)
        for v in range(g.n):
            assert (sk.query_min(v).x, sk.query_min(v).owner) == brute_query_min(cg, sk.keys, v)


def test_query_min_matches_bruteforce_after_pivots():
    rng = np.random.default_rng(9)
    g = erdos_renyi(20, 0.2, seed=4321)
    cg = ComponentGraph(g)
    sk = SketchCopy(cg, seed=55)
    for u in rng.permutation(20)[:19]:
        sk.pivot_vertex(cg.pivot(int(u)))
        for v in cg.remaining_vertices():
            assert (sk.query_min(v).x, sk.query_min(v).owner) == brute_query_min(cg, sk.keys, v)


def test_query_min_eliminated_errors():
    cg = ComponentGraph(path(3))
    sk = SketchCopy(cg, seed=3)
    sk.pivot_vertex(cg.pivot(1))
    with pytest.raises(GraphError):
        sk.query_min(1)


def test_pivot_isolated_vertex_changes_nothing():
    g = Graph.from_edges(3, [(0, 1)])
    cg = ComponentGraph(g)
    sk = SketchCopy(cg, seed=4)
    assert sk.pivot_vertex(cg.pivot(2)) == []


def test_reconstruction_invariant_full_sequences():
    rng = np.random.default_rng(0)
    for trial in range(30):
        n = int(rng.integers(5, 61))
        g = erdos_renyi(n, 0.15, seed=trial + 2000)
        cg = ComponentGraph(g)
        sk = SketchCopy(cg, seed=trial)
        for u in rng.permutation(n):
            sk.pivot_vertex(cg.pivot(int(u)))
            fresh = SketchCopy(cg, seed=trial)
            assert sk.logical_state() == fresh.logical_state()


def test_changed_lists_exact_full_sequences():
    rng = np.random.default_rng(1)
    for trial in range(6):
        g = erdos_renyi(30, 0.15, seed=trial + 3000)
        cg = ComponentGraph(g)
        sk = SketchCopy(cg, seed=trial + 7)
        for u in rng.permutation(30):
            u = int(u)
            before = {v: sk.query_min(v) for v in cg.remaining_vertices() if v != u}
            changed = sk.pivot_vertex(cg.pivot(u))
            after = {v: sk.query_min(v) for v in cg.remaining_vertices()}
            expect = sorted(v for v in after if before[v] != after[v])
            assert changed == expect


def test_pivot_middle_of_path_changed_list():
    # hand-checkable walk-through: keys (0.2, 0.1, 0.3), pivot the middle
    cg = ComponentGraph(path(3))
    sk = _rebuild_with_keys(cg, [0.2, 0.1, 0.3])
    changed = sk.pivot_vertex(cg.pivot(1))
    assert changed == [0, 2]
    assert sk.query_min(0).x == 0.2 and sk.query_min(2).x == 0.2


def _rebuild_with_keys(cg, keys):
    sk = SketchCopy(cg, seed=0)
    sk.keys = np.asarray(keys, dtype=float)
    fresh = SketchCopy.__new__(SketchCopy)
    fresh.__dict__.update(sk.__dict__)
    # rebuild heaps from the forced keys
    from fillorder.sketch import _MinDict
    fresh._rem = {}
    for c in cg.component_ids():
        fresh._rem[c] = _MinDict((v, fresh.keys[v]) for v in cg.remaining_neighbors_of_component(c))
    fresh._fill = {}
    for u in cg.remaining_vertices():
        md = _MinDict((v, fresh.keys[v]) for v in cg.remaining_neighbors_of_vertex(u))
        for c in cg.component_neighbors(u):
            md.set(fresh.n + c, fresh._rem[c].min_key())
        fresh._fill[u] = md
    return fresh


def test_inform_remaining_star_component():
    # one component adjacent to three remaining vertices; a smaller new
    # minimum must change all three fill minima
    g = star(5)
    cg = ComponentGraph(g)
    keys = np.array([0.9, 0.5, 0.6, 0.7, 0.8])
    sk = _rebuild_with_keys(cg, keys)
    sk.pivot_vertex(cg.pivot(0))
    comp = cg.component_ids()[0]
    changed = sk.inform_remaining(comp, sk._rem[comp].min_key(), 0.01)
    assert sorted(changed) == [1, 2, 3, 4]


def test_inform_remaining_empty_component_is_noop():
    cg = ComponentGraph(path(2))
    sk = SketchCopy(cg, seed=8)
    sk.pivot_vertex(cg.pivot(0))
    sk.pivot_vertex(cg.pivot(1))
    comp = cg.component_ids()[0]
    assert sk.inform_remaining(comp, 0.5, 0.1) == []


def test_meld_equal_minima_informs_neither():
    # two components sharing their minimum key value: forced-tie branch
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    cg = ComponentGraph(g)
    keys = np.array([0.3, 0.9, 0.5, 0.3, 0.8, 0.5])
    sk = _rebuild_with_keys(cg, keys)
    sk.pivot_vertex(cg.pivot(1))
    sk.pivot_vertex(cg.pivot(4))
    comps = cg.component_ids()
    assert len(comps) == 2
    assert sk._rem[comps[0]].min_key() == sk._rem[comps[1]].min_key() == 0.3
    informs_before = sk.informs
    sk.meld(comps[0], comps[1])
    assert sk.informs == informs_before


def test_meld_asymmetric_informs_worse_side():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    cg = ComponentGraph(g)
    keys = np.array([0.1, 0.9, 0.5, 0.6, 0.8, 0.7])
    sk = _rebuild_with_keys(cg, keys)
    sk.pivot_vertex(cg.pivot(1))
    sk.pivot_vertex(cg.pivot(4))
    ca, cb = cg.component_ids()
    lo = ca if sk._rem[ca].min_key() < sk._rem[cb].min_key() else cb
    hi = cb if lo == ca else ca
    survivor = sk.meld(lo, hi)
    # the worse side's neighbors now see the better minimum
    tag = sk.n + survivor
    for v in (3, 5):
        assert sk._fill[v].live[tag] == 0.1


def test_meld_chain_on_path_matches_rebuild():
    cg = ComponentGraph(path(6))
    sk = SketchCopy(cg, seed=21)
    for u in range(5):
        sk.pivot_vertex(cg.pivot(u))
        fresh = SketchCopy(cg, seed=21)
        assert sk.logical_state() == fresh.logical_state()


def test_monotone_growing_set_min_changes_logarithmic():
    # distinct minima over a growing random set: expectation is the harmonic
    # number, so the average stays under 2 * ln(n) + 2
    rng = np.random.default_rng(6)
    n = 512
    trials = 200
    changes = []
    for _ in range(trials):
        keys = rng.random(n)
        order = rng.permutation(n)
        best = np.inf
        c = 0
        for v in order:
            if keys[v] < best:
                best = keys[v]
                c += 1
        changes.append(c)
    assert np.mean(changes) <= 2.0 * math.log(n) + 2.0


def test_op_counters_monotone_and_present():
    g = erdos_renyi(25, 0.2, seed=77)
    cg = ComponentGraph(g)
    sk = SketchCopy(cg, seed=77)
    last = 0
    for u in range(25):
        sk.pivot_vertex(cg.pivot(u))
        assert sk.op_counter >= last
        last = sk.op_counter
    assert sk.informs >= 0 and sk.meld_moves > 0
