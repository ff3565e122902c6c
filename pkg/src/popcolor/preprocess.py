"""Graph reductions for plain coloring, clique search, and lifting colorings back.

Two reductions are applied alternately until neither fires:

* a vertex ``u`` whose neighborhood is contained in that of another vertex
  ``v`` can later copy ``v``'s color, so it is removed;
* a vertex with fewer than ``L`` neighbors always finds a free color among
  ``1..L`` once the rest is colored, so it is removed as well.

Neither is sound for bandwidth coloring; :func:`reduce` refuses such instances.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Mapping

from .instance import Coloring, Instance


@dataclass(frozen=True)
class Dominated:
    vertex: int
    dominator: int


@dataclass(frozen=True)
class LowDegree:
    vertex: int
    neighbors: tuple[int, ...]


@dataclass
class ReductionLog:
    original: Instance
    lower_bound: int
    records: list[Dominated | LowDegree] = field(default_factory=list)
    kept: tuple[int, ...] = ()  # kept[i-1] is the original label of reduced vertex i

    @property
    def removed(self) -> int:
        return len(self.records)

    def to_reduced(self) -> dict[int, int]:
        return {orig: i for i, orig in enumerate(self.kept, 1)}


@dataclass(frozen=True)
class Clique:
    vertices: tuple[int, ...]
    cut: int

    def __len__(self) -> int:
        return len(self.vertices)

    def precoloring(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices, 1)}


def _dominator(u: int, nb: dict[int, set[int]]) -> int | None:
    nu = nb[u]
    if nu:
        # a dominator is adjacent to every neighbor of u, so scan the smallest such list
        pivot = min(nu, key=lambda w: (len(nb[w]), w))
        candidates = nb[pivot] - {u}
    else:
        candidates = set(nb) - {u}
    for v in sorted(candidates):
        if nu <= nb[v] and (len(nu) < len(nb[v]) or v < u):
            return v
    return None


def reduce(inst: Instance, L: int) -> tuple[Instance, ReductionLog]:
    if L < 1:
        raise ValueError("lower bound must be >= 1")
    if not inst.is_gcp:
        raise ValueError("reductions are only valid for plain graph coloring (all distances 1)")
    nb = {v: set(inst.adj[v]) for v in inst.vertices}
    log = ReductionLog(inst, L)

    def drop(u: int) -> None:
        for w in nb.pop(u):
            nb[w].discard(u)

    changed = True
    while changed:
        changed = False
        again = True
        while again:
            again = False
            for u in sorted(nb):
                if u not in nb:
                    continue
                v = _dominator(u, nb)
                if v is not None:
                    log.records.append(Dominated(u, v))
                    drop(u)
                    again = changed = True
        again = True
        while again:
            again = False
            for u in sorted(nb):
                if u in nb and len(nb[u]) < L:
                    log.records.append(LowDegree(u, tuple(sorted(nb[u]))))
                    drop(u)
                    again = changed = True
    log.kept = tuple(sorted(nb))
    relabel = log.to_reduced()
    reduced = Instance(
        len(log.kept),
        {(relabel[u], relabel[v]): 1 for u in log.kept for v in nb[u] if u < v},
        inst.name,
    )
    return reduced, log


def find_clique(inst: Instance, seed: int = 0, budget: int | None = None,
                cap: float = 100.0) -> Clique:
    """Best of ``budget`` randomized greedy cliques (maximal independent sets of the complement).

    Larger cliques win; among equal sizes the one with more edges leaving it
    wins, then the earliest iteration.
    """
    if inst.n == 0:
        return Clique((), 0)
    if budget is None:
        budget = math.ceil(300 * inst.m / inst.n)
    budget = max(1, budget)
    rng = random.Random(seed)
    adj = inst.adj
    verts = list(inst.vertices)
    start = time.monotonic()
    best: tuple[int, int] | None = None
    best_q: list[int] = []
    for it in range(budget):
        if it and time.monotonic() - start > cap:
            break
        perm = verts[:]
        rng.shuffle(perm)
        q: list[int] = []
        cand = set(verts)
        for v in perm:
            if v in cand:
                q.append(v)
                cand &= adj[v]
                if not cand:
                    break
        cut = sum(len(adj[v]) for v in q) - len(q) * (len(q) - 1)
        key = (len(q), cut)
        if best is None or key > best:
            best, best_q = key, q
    assert best is not None
    return Clique(tuple(sorted(best_q)), best[1])


def cut_size(inst: Instance, vertices: tuple[int, ...] | list[int]) -> int:
    inside = set(vertices)
    return sum(1 for u, v in inst.edges if (u in inside) != (v in inside))


def lift_coloring(log: ReductionLog, partial: Mapping[int, int], num_colors: int | None = None) -> Coloring:
    """Extend a coloring of the reduced graph to the original graph.

    ``partial`` uses reduced labels.  Removed vertices are restored in reverse
    order: dominated ones copy their dominator, low-degree ones take the
    smallest color unused by their neighbors at removal time.
    """
    coloring: Coloring = {log.kept[v - 1]: c for v, c in partial.items()}
    if len(coloring) != len(log.kept):
        raise ValueError("partial coloring does not cover the reduced graph")
    palette = max([log.lower_bound, num_colors or 0, *coloring.values()])
    for rec in reversed(log.records):
        if isinstance(rec, Dominated):
            if rec.dominator not in coloring:
                raise ValueError(f"dominator {rec.dominator} of {rec.vertex} is uncolored; corrupted log")
            coloring[rec.vertex] = coloring[rec.dominator]
        else:
            taken = {coloring[w] for w in rec.neighbors if w in coloring}
            if any(w not in coloring for w in rec.neighbors):
                raise ValueError(f"neighbor of {rec.vertex} is uncolored; corrupted log")
            free = next((c for c in range(1, palette + 1) if c not in taken), None)
            if free is None:
                raise ValueError(f"no free color for vertex {rec.vertex}; corrupted log")
            coloring[rec.vertex] = free
    return dict(sorted(coloring.items()))
