"""Graph families, covering set systems, OV reduction, adversarial demo."""

import math

import pytest

from fillorder.graphs import GraphError, mindeg_ordering_bruteforce
from fillorder.instances import (adversarial_correlation_demo, clique, covering_set_system,
                                 generate, grid, next_prime, ov_bruteforce,
                                 ov_decide_via_ordering, ov_reduction_graph, path,
                                 random_ov_vectors, star, verify_covering_system)


def test_families_basic_counts():
    g = grid(3)
    assert g.n == 9 and g.m == 12
    assert path(5).m == 4
    assert clique(6).m == 15
    assert star(7).m == 6 and star(7).degree(0) == 6


def test_generate_dispatch_and_determinism():
    a = generate("erdos_renyi", 100, 0.05, seed=9)
    b = generate("erdos_renyi", 100, 0.05, seed=9)
    c = generate("erdos_renyi", 100, 0.05, seed=10)
    assert a.adjacency == b.adjacency
    assert a.adjacency != c.adjacency
    with pytest.raises(GraphError):
        generate("hypercube", 3)


def test_next_prime():
    assert [next_prime(x) for x in (1, 2, 3, 4, 8, 24)] == [2, 2, 3, 5, 11, 29]


def test_covering_n1():
    sys1 = covering_set_system(1)
    assert sys1.sets == [(1,)]
    assert sys1.k == 1


def test_covering_n9():
    sys9 = covering_set_system(9)
    assert sys9.p == 3
    assert sys9.k == 12
    assert sys9.max_size == 3
    verify_covering_system(9)


def test_covering_pair_coverage_direct():
    # independent exhaustive check against the materialized sets
    for n in (1, 2, 7, 9, 30, 64, 100):
        system = covering_set_system(n)
        covered = set()
        for s in system.sets:
            assert len(s) <= 10 * math.sqrt(n)
            assert all(1 <= e <= n for e in s)
            for a in s:
                for b in s:
                    covered.add((a, b))
        assert len(covered) == n * n
        assert system.k <= 17 * n
        assert system.p < 4 * math.sqrt(n) + 1e-9


def test_covering_large_vectorized():
    k, ms = verify_covering_system(2000)
    assert ms <= 10 * math.sqrt(2000)


def test_ov_instance_shape_and_degrees():
    vectors = random_ov_vectors(12, 5, 0.4, seed=3)
    inst = ov_reduction_graph(vectors)
    n = len(vectors)
    pad = 20 * math.ceil(math.sqrt(n))
    assert len(inst.v_pad) == pad
    g = inst.graph
    for v in inst.v_pad:
        assert g.degree(v) == (pad - 1) + n
    for v in inst.v_dim:
        assert g.degree(v) <= 10 * math.sqrt(n)
    for v in inst.v_vec:
        assert g.degree(v) >= pad


def test_ov_rejects_ragged_vectors():
    with pytest.raises(GraphError):
        ov_reduction_graph([(1, 0), (1,)])


def test_ov_orthogonal_pair_detected():
    inst = ov_reduction_graph([(1, 0), (0, 1)])
    decision, deg, dims_first = ov_decide_via_ordering(inst)
    assert decision and dims_first
    assert deg < inst.dense_degree


def test_ov_no_orthogonal_pair_exact_dense_degree():
    inst = ov_reduction_graph([(1, 1), (1, 1)])
    decision, deg, dims_first = ov_decide_via_ordering(inst)
    assert not decision and dims_first
    assert deg == inst.dense_degree == 20 * 2 + 2 - 1


def test_ov_agrees_with_bruteforce_scan():
    for t in range(8):
        vectors = random_ov_vectors(10, 4, 0.45, seed=100 + t)
        inst = ov_reduction_graph(vectors)
        decision, _, dims_first = ov_decide_via_ordering(inst)
        assert dims_first
        assert decision == ov_bruteforce(vectors)


def test_ov_dims_precede_all_in_full_brute_ordering():
    vectors = random_ov_vectors(6, 3, 0.5, seed=7)
    inst = ov_reduction_graph(vectors)
    order = mindeg_ordering_bruteforce(inst.graph).order
    dims = set(inst.v_dim)
    assert set(order[: len(dims)]) == dims


def test_demo_adaptive_collapses_to_keys():
    rep = adversarial_correlation_demo(400, 0.2, seed=1)
    assert rep["final_set_size"] == rep["key_set_size"]
    assert rep["oblivious_max_error"] <= 0.2 * 400


def test_demo_huge_tolerance_still_recovers_keys():
    rep = adversarial_correlation_demo(300, 1.0, seed=2)
    assert rep["final_set_size"] == rep["key_set_size"]
    assert rep["key_set_size"] <= 8  # ceil(ln 300)


def test_demo_rejects_tiny_n():
    with pytest.raises(GraphError):
        adversarial_correlation_demo(50, 0.1, seed=0)
