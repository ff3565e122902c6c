"""Brute-force exact solvers, used only as ground truth in tests."""

from __future__ import annotations

from .bounds import greedy_bcp_upper_bound
from .instance import Coloring, Instance


class CapExceeded(ValueError):
    pass


def _order(inst: Instance) -> list[int]:
    return sorted(inst.vertices, key=lambda v: (-inst.degree(v), v))


def _search(inst: Instance, k: int, order: list[int], distances: bool) -> Coloring | None:
    coloring: Coloring = {}
    adj = inst.adj

    def fits(v: int, c: int) -> bool:
        for u in adj[v]:
            cu = coloring.get(u)
            if cu is not None and abs(cu - c) < (inst.d(u, v) if distances else 1):
                return False
        return True

    def rec(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        # in plain coloring, colors above used+1 are symmetric to used+1
        top = k if distances else min(k, used + 1)
        for c in range(1, top + 1):
            if fits(v, c):
                coloring[v] = c
                if rec(idx + 1, max(used, c)):
                    return True
                del coloring[v]
        return False

    return dict(coloring) if rec(0, 0) else None


def exact_gcp(inst: Instance, cap: int = 12) -> tuple[int, Coloring]:
    if inst.n > cap:
        raise CapExceeded(f"n={inst.n} exceeds oracle cap {cap}")
    if inst.n == 0:
        return 0, {}
    order = _order(inst)
    for k in range(1, inst.n + 1):
        found = _search(inst, k, order, distances=False)
        if found is not None:
            return k, found
    raise AssertionError("unreachable: n colors always suffice")


def exact_bcp(inst: Instance, cap: int = 8) -> tuple[int, Coloring]:
    """Minimum largest color of a bandwidth coloring; ``cap`` bounds both n and the distances."""
    if inst.n > cap or inst.max_distance > cap:
        raise CapExceeded(f"n={inst.n}, max distance {inst.max_distance}: oracle cap is {cap}")
    if inst.n == 0:
        return 0, {}
    hi, witness = greedy_bcp_upper_bound(inst)
    lo = inst.max_distance + 1 if inst.m else 1
    order = _order(inst)
    for k in range(lo, hi):
        found = _search(inst, k, order, distances=True)
        if found is not None:
            return k, found
    return hi, witness
