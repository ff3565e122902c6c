"""Small graph families and seeded random instances for tests and benchmarks."""

from __future__ import annotations

import random
from itertools import combinations

from .instance import Instance


def complete(n: int) -> Instance:
    return Instance.from_edges(n, combinations(range(1, n + 1), 2), f"K{n}")


def cycle(n: int) -> Instance:
    return Instance.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)], f"C{n}")


def path(n: int) -> Instance:
    return Instance.from_edges(n, [(i, i + 1) for i in range(1, n)], f"P{n}")


def star(leaves: int) -> Instance:
    return Instance.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)], f"K1_{leaves}")


def petersen() -> Instance:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Instance.from_edges(10, outer + spokes + inner, "petersen")


def random_graph(n: int, p: float, rng: random.Random, name: str = "") -> Instance:
    edges = [(u, v) for u, v in combinations(range(1, n + 1), 2) if rng.random() < p]
    return Instance.from_edges(n, edges, name)


def random_weighted_graph(n: int, p: float, dmax: int, rng: random.Random, name: str = "") -> Instance:
    edges = [(u, v, rng.randint(1, dmax)) for u, v in combinations(range(1, n + 1), 2) if rng.random() < p]
    return Instance.from_edges(n, edges, name)


def random_edges(n: int, m: int, rng: random.Random, d: int = 1, name: str = "") -> Instance:
    """Exactly ``m`` distinct edges chosen uniformly, all with distance ``d``."""
    pairs = rng.sample(list(combinations(range(1, n + 1), 2)), m)
    return Instance(n, {e: d for e in pairs}, name)


def generalized_mycielskian(g: Instance, layers: int, apex_clique: int = 1, spread: bool = False) -> Instance:
    """Stack ``layers`` shadow copies on ``g`` and cap them with ``apex_clique`` apex vertices.

    Layer ``t`` vertex ``v`` is joined to the layer ``t-1`` neighbors of ``v``.
    With ``spread`` the ``j``-th apex sees layer ``j`` (needs ``apex_clique ==
    layers + 1``); otherwise every apex sees the top layer.
    """
    n = g.n
    lab = lambda t, v: t * n + v  # noqa: E731
    edges = list(g.edges)
    for t in range(1, layers + 1):
        for u, v in g.edges:
            edges.append((lab(t, u), lab(t - 1, v)))
            edges.append((lab(t, v), lab(t - 1, u)))
    base = (layers + 1) * n
    apexes = [base + j for j in range(1, apex_clique + 1)]
    edges.extend(combinations(apexes, 2))
    if spread and apex_clique != layers + 1:
        raise ValueError("spread needs one apex per layer")
    for j, a in enumerate(apexes):
        layer = j if spread else layers
        edges.extend((a, lab(layer, v)) for v in g.vertices)
    return Instance.from_edges(base + apex_clique, edges)


def mycielski(n: int) -> Instance:
    """``myciel<n>``: Mycielski's construction applied ``n - 1`` times to K2."""
    g = complete(2)
    for _ in range(n - 1):
        g = generalized_mycielskian(g, 1)
    return Instance(g.n, g.dist, f"myciel{n}")


def insertions(k: int, n: int) -> Instance:
    """``k-Insertions_n``: the generalized Mycielskian with ``k + 1`` layers, iterated on K2."""
    g = complete(2)
    for _ in range(n - 1):
        g = generalized_mycielskian(g, k + 1)
    return Instance(g.n, g.dist, f"{k}-Insertions_{n}")


def full_insertions(k: int, n: int, spread: bool = True) -> Instance:
    """``k-FullIns_n``: like :func:`insertions` but the apex is a clique on ``k + 2`` vertices."""
    g = complete(2)
    for _ in range(n - 1):
        g = generalized_mycielskian(g, k + 1, apex_clique=k + 2, spread=spread)
    return Instance(g.n, g.dist, f"{k}-FullIns_{n}")


def queen(n: int) -> Instance:
    """``queen<n>_<n>``: squares of an n x n board, adjacent when a queen move connects them."""
    cell = lambda r, c: r * n + c + 1  # noqa: E731
    edges = []
    for (r1, c1), (r2, c2) in combinations([(r, c) for r in range(n) for c in range(n)], 2):
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
            edges.append((cell(r1, c1), cell(r2, c2)))
    return Instance.from_edges(n * n, edges, f"queen{n}_{n}")
