import random
from itertools import product

import pytest

from popcolor.bounds import greedy_bcp_upper_bound, greedy_gcp_upper_bound
from popcolor.generators import complete, cycle, petersen, random_graph, random_weighted_graph
from popcolor.instance import Instance, violations
from popcolor.oracle import CapExceeded, exact_bcp, exact_gcp
from popcolor.preprocess import find_clique


def brute_bcp(g):
    """Smallest largest color by trying every assignment over 1..top."""
    top = 1
    while True:
        for colors in product(range(1, top + 1), repeat=g.n):
            c = dict(zip(g.vertices, colors))
            if max(colors, default=1) == top and not violations(g, c, "bcp"):
                return top
        top += 1


def test_greedy_bcp_examples():
    assert greedy_bcp_upper_bound(Instance(2, {(1, 2): 3})) == (4, {1: 1, 2: 4})
    tri = Instance(3, {(1, 2): 2, (2, 3): 2, (1, 3): 2})
    assert greedy_bcp_upper_bound(tri) == (5, {1: 1, 2: 3, 3: 5})
    assert greedy_bcp_upper_bound(Instance(4))[0] == 1


def test_greedy_bcp_examples_are_optimal():
    assert brute_bcp(Instance(2, {(1, 2): 3})) == 4
    assert brute_bcp(Instance(3, {(1, 2): 2, (2, 3): 2, (1, 3): 2})) == 5


def test_greedy_gcp_examples():
    assert greedy_gcp_upper_bound(complete(4))[0] == 4
    assert greedy_gcp_upper_bound(cycle(5)) == (3, {1: 1, 2: 2, 3: 1, 4: 2, 5: 3})
    assert greedy_gcp_upper_bound(Instance(5))[0] == 1


def test_greedy_order_is_by_degree_then_label():
    star = Instance.from_edges(4, [(4, 1), (4, 2), (4, 3)])
    assert greedy_gcp_upper_bound(star)[1] == {4: 1, 1: 2, 2: 2, 3: 2}


def test_greedy_fills_gaps():
    # vertex 3 fits between color 1 (distance 1) and color 4 (distance 2)
    g = Instance(3, {(1, 3): 1, (2, 3): 2, (1, 2): 3})
    assert greedy_bcp_upper_bound(g) == (4, {1: 1, 2: 4, 3: 2})


def test_bounds_dominate_oracles():
    rng = random.Random(2)
    for _ in range(60):
        g = random_graph(rng.randint(1, 8), 0.5, rng)
        h, w = greedy_gcp_upper_bound(g)
        assert violations(g, w) == [] and max(w.values()) == h
        chi, wit = exact_gcp(g)
        assert violations(g, wit) == [] and max(wit.values()) == chi
        assert h >= chi >= len(find_clique(g, 0))
        gb = random_weighted_graph(rng.randint(1, 6), 0.5, 4, rng)
        hb, wb = greedy_bcp_upper_bound(gb)
        assert violations(gb, wb, "bcp") == []
        assert hb >= exact_bcp(gb)[0]


def test_exact_gcp_examples():
    assert exact_gcp(cycle(5))[0] == 3
    assert exact_gcp(complete(4))[0] == 4
    chi, w = exact_gcp(petersen())
    assert chi == 3 and violations(petersen(), w) == []


def test_exact_bcp_examples():
    assert exact_bcp(Instance(1)) == (1, {1: 1})
    assert exact_bcp(Instance(2, {(1, 2): 3}))[0] == 4
    tri = Instance(3, {(1, 2): 2, (2, 3): 2, (1, 3): 2})
    assert exact_bcp(tri)[0] == 5


def test_exact_bcp_matches_brute_force():
    rng = random.Random(4)
    for _ in range(25):
        g = random_weighted_graph(rng.randint(1, 4), 0.6, 3, rng)
        opt, w = exact_bcp(g)
        assert opt == brute_bcp(g)
        assert violations(g, w, "bcp") == []


def test_unit_distance_oracles_agree():
    rng = random.Random(6)
    for _ in range(30):
        g = random_graph(rng.randint(1, 8), 0.5, rng)
        assert exact_gcp(g)[0] == exact_bcp(g)[0]


def test_caps():
    with pytest.raises(CapExceeded):
        exact_gcp(Instance(13))
    with pytest.raises(CapExceeded):
        exact_bcp(Instance(9))
    with pytest.raises(CapExceeded):
        exact_bcp(Instance(2, {(1, 2): 9}))
    assert exact_gcp(Instance(13), cap=13)[0] == 1
