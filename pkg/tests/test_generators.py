import math
import random

import pytest

from popcolor.encode_bcp import ENCODERS_BCP
from popcolor.generators import (
    complete,
    cycle,
    full_insertions,
    insertions,
    mycielski,
    path,
    petersen,
    queen,
    random_edges,
    star,
)
from popcolor.instance import Instance
from popcolor.oracle import exact_bcp, exact_gcp
from popcolor.search import solve_bcp, verify


@pytest.mark.parametrize("g,n,m", [
    (complete(5), 5, 10), (cycle(6), 6, 6), (path(4), 4, 3), (star(3), 4, 3), (petersen(), 10, 15),
    (mycielski(3), 11, 20), (mycielski(4), 23, 71), (queen(5), 25, 160), (queen(6), 36, 290),
    (queen(7), 49, 476), (full_insertions(1, 3), 30, 100), (insertions(2, 3), 37, 72),
])
def test_published_sizes(g, n, m):
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize("g,chi", [(petersen(), 3), (mycielski(3), 4), (cycle(7), 3)])
def test_small_chromatic_numbers(g, chi):
    assert exact_gcp(g)[0] == chi


def test_random_edges_exact_count():
    g = random_edges(30, 60, random.Random(0), d=3)
    assert (g.n, g.m, g.max_distance) == (30, 60, 3)
    with pytest.raises(ValueError):
        random_edges(3, 4, random.Random(0))


def geometric(n, radius, rng):
    """Random points in the unit square; close pairs get a distance that grows as they get closer."""
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    dist = {}
    for u in range(n):
        for v in range(u + 1, n):
            r = math.dist(pts[u], pts[v])
            if r < radius:
                dist[(u + 1, v + 1)] = 1 + int(3 * (1 - r / radius))
    return Instance(n, dist)


def test_geometric_bcp_proxy():
    rng = random.Random(2024)
    for _ in range(30):
        g = geometric(rng.randint(3, 7), 0.6, rng)
        opt = exact_bcp(g)[0]
        for kind in ENCODERS_BCP:
            rep = solve_bcp(g, kind)
            assert rep.optimal and rep.ub == opt and verify(g, rep.witness, "bcp") == []
