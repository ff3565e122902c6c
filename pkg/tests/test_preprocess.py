import random
from itertools import combinations

import pytest

from popcolor.generators import complete, cycle, path, random_graph, star
from popcolor.instance import Instance, violations
from popcolor.oracle import exact_gcp
from popcolor.preprocess import Dominated, LowDegree, cut_size, find_clique, lift_coloring, reduce


def clique_number(g):
    best = 1 if g.n else 0
    for size in range(2, g.n + 1):
        if any(all(v in g.adj[u] for u, v in combinations(s, 2)) for s in combinations(g.vertices, size)):
            best = size
        else:
            break
    return best


def replay_ok(g, log, L):
    nb = {v: set(g.adj[v]) for v in g.vertices}
    for rec in log.records:
        u = rec.vertex
        if isinstance(rec, Dominated):
            assert rec.dominator in nb and nb[u] <= nb[rec.dominator]
        else:
            assert set(rec.neighbors) == nb[u] and len(nb[u]) < L
        for w in nb.pop(u):
            nb[w].discard(u)
    assert sorted(nb) == list(log.kept)
    for u in nb:
        assert len(nb[u]) >= L
        assert not any(nb[u] <= nb[v] for v in nb if v != u)


def test_star_reduces_to_an_edge():
    g = star(3)
    red, log = reduce(g, 1)
    assert (red.n, red.m) == (2, 1)
    assert log.records == [Dominated(3, 2), Dominated(4, 2)]
    assert log.kept == (1, 2)


def test_triangle_with_bound_three_vanishes():
    red, log = reduce(complete(3), 3)
    assert red.n == 0
    assert [type(r) for r in log.records] == [LowDegree] * 3


def test_k4_is_irreducible():
    red, log = reduce(complete(4), 2)
    assert red == complete(4) and log.records == []


def test_isolated_vertices_are_dominated():
    g = Instance.from_edges(4, [(1, 2)])
    red, log = reduce(g, 1)
    assert (red.n, red.m) == (2, 1) and log.removed == 2


def test_reduce_rejects_weighted_and_bad_bound():
    with pytest.raises(ValueError):
        reduce(Instance(2, {(1, 2): 2}), 1)
    with pytest.raises(ValueError):
        reduce(complete(2), 0)


def test_clique_examples():
    assert len(find_clique(complete(4), 123)) == 4
    for seed in range(5):
        q = find_clique(path(3), seed)
        assert len(q) == 2 and q.vertices[1] in path(3).adj[q.vertices[0]]


def test_c5_clique_cut():
    # every edge of C5 is a maximum clique with two edges leaving it
    c5 = cycle(5)
    assert {cut_size(c5, e) for e in c5.edges} == {2}
    q = find_clique(c5, 0, budget=5)
    assert len(q) == 2 and q.cut == 2 == cut_size(c5, q.vertices)


def test_clique_prefers_larger_cut():
    # triangles {1,2,3} and {4,5,6}; the second has extra pendant neighbours
    g = Instance.from_edges(8, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (4, 7), (5, 8)])
    for seed in range(5):
        q = find_clique(g, seed, budget=200)
        assert q.vertices == (4, 5, 6) and q.cut == 2


def test_clique_is_deterministic_and_valid():
    rng = random.Random(1)
    for _ in range(50):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        a = find_clique(g, 42)
        assert a == find_clique(g, 42)
        assert all(v in g.adj[u] for u, v in combinations(a.vertices, 2))
        assert a.cut == cut_size(g, a.vertices)
        assert len(a) >= 1


def test_clique_time_cap_returns_something():
    g = random_graph(30, 0.5, random.Random(0))
    q = find_clique(g, 0, budget=10**9, cap=0.05)
    assert len(q) >= 2


def test_lift_star():
    red, log = reduce(star(3), 1)
    assert lift_coloring(log, {1: 1, 2: 2}) == {1: 1, 2: 2, 3: 2, 4: 2}


def test_lift_fully_reduced_triangle():
    _, log = reduce(complete(3), 3)
    c = lift_coloring(log, {})
    assert violations(complete(3), c) == [] and sorted(c.values()) == [1, 2, 3]


def test_lift_identity():
    g = complete(3)
    red, log = reduce(g, 1)
    assert log.records == []
    assert lift_coloring(log, {1: 3, 2: 1, 3: 2}) == {1: 3, 2: 1, 3: 2}


def test_lift_detects_corrupted_log():
    red, log = reduce(complete(3), 3)
    log.lower_bound = 1
    with pytest.raises(ValueError):
        lift_coloring(log, {})
    _, log2 = reduce(star(3), 1)
    with pytest.raises(ValueError):
        lift_coloring(log2, {1: 1})


def test_reduction_soundness_against_oracle():
    rng = random.Random(17)
    for _ in range(100):
        g = random_graph(rng.randint(1, 9), rng.choice([0.2, 0.5, 0.8]), rng)
        L = clique_number(g)
        red, log = reduce(g, L)
        replay_ok(g, log, L)
        part = exact_gcp(red)[1] if red.n else {}
        lifted = lift_coloring(log, part)
        assert violations(g, lifted) == []
        assert max(lifted.values()) == exact_gcp(g)[0]
