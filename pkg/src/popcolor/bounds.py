"""Greedy upper bounds used to seed the searches and to size ILP models."""

from __future__ import annotations

from .instance import Coloring, Instance


def _greedy(inst: Instance, distances: bool) -> tuple[int, Coloring]:
    # highest degree first, ties by label; each vertex takes the smallest color
    # that keeps every already-colored neighbor far enough away
    order = sorted(inst.vertices, key=lambda v: (-inst.degree(v), v))
    coloring: Coloring = {}
    for v in order:
        blocked: list[tuple[int, int]] = []
        for u in inst.adj[v]:
            if u in coloring:
                d = inst.d(u, v) if distances else 1
                blocked.append((coloring[u] - d + 1, coloring[u] + d - 1))
        c = 1
        moved = True
        while moved:
            moved = False
            for lo, hi in blocked:
                if lo <= c <= hi:
                    c = hi + 1
                    moved = True
        coloring[v] = c
    return max(coloring.values(), default=0), coloring


def greedy_bcp_upper_bound(inst: Instance) -> tuple[int, Coloring]:
    return _greedy(inst, distances=True)


def greedy_gcp_upper_bound(inst: Instance) -> tuple[int, Coloring]:
    return _greedy(inst, distances=False)
