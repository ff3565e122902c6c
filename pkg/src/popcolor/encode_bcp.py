"""SAT encodings of "is there a bandwidth coloring with largest color <= k".

Every edge is used in one orientation only, with the lower label as ``u``.
Ladder literals outside ``1..k`` are constants (``y(v,i)`` is true for
``i < 1`` and false for ``i > k``) and are folded away at build time.
"""

from __future__ import annotations

from .cnf import Cnf
from .encode_gcp import (
    Encoding,
    at_least_one,
    channeling,
    ladder,
    register_x,
    register_y,
    sequential_at_most_one,
)
from .instance import Instance


def _check(k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")


def _y_lit(cnf: Cnf, v: int, j: int, k: int, positive: bool) -> int | bool:
    """Literal for ``y(v,j)`` (or its negation), or a bool when it is constant."""
    if j < 1:
        return positive
    if j > k:
        return not positive
    lit = cnf.registry["y", v, j]
    return lit if positive else -lit


def _add_folded(cnf: Cnf, terms: list[int | bool], group: str) -> bool:
    if any(t is True for t in terms):
        return False
    cnf.add([t for t in terms if t is not False], group)
    return True


def encode_ass_s_b(inst: Instance, k: int) -> Encoding:
    _check(k)
    cnf = Cnf()
    register_x(cnf, inst, k)
    at_least_one(cnf, inst, k)
    for v in inst.vertices:
        sequential_at_most_one(cnf, v, k)
    reg = cnf.registry
    for (u, v), d in inst.dist.items():
        for i in range(1, k + 1):
            for j in range(max(1, i - d + 1), min(k, i + d - 1) + 1):
                cnf.add([-reg["x", u, i], -reg["x", v, j]], "edge-pairs")
    return Encoding(cnf, "ass-s-b", k, inst, tuple(inst.vertices))


def encode_pop_s_b(inst: Instance, k: int) -> Encoding:
    _check(k)
    cnf = Cnf()
    register_y(cnf, inst, k)
    ladder(cnf, inst, k)
    for (u, v), d in inst.dist.items():
        for i in range(1, k + 1):
            # c(u) != i, or c(v) <= i - d, or c(v) >= i + d
            _add_folded(cnf, [
                _y_lit(cnf, u, i - 1, k, False),
                _y_lit(cnf, u, i, k, True),
                _y_lit(cnf, v, i - d, k, False),
                _y_lit(cnf, v, i + d - 1, k, True),
            ], "edge-band")
    return Encoding(cnf, "pop-s-b", k, inst, tuple(inst.vertices))


def encode_poph_s_b(inst: Instance, k: int) -> Encoding:
    _check(k)
    cnf = Cnf()
    register_y(cnf, inst, k)
    register_x(cnf, inst, k)
    ladder(cnf, inst, k)
    channeling(cnf, inst, k)
    reg = cnf.registry
    for (u, v), d in inst.dist.items():
        for i in range(1, k + 1):
            _add_folded(cnf, [
                -reg["x", u, i],
                _y_lit(cnf, v, i - d, k, False),
                _y_lit(cnf, v, i + d - 1, k, True),
            ], "edge-band-x")
    return Encoding(cnf, "poph-s-b", k, inst, tuple(inst.vertices))


ENCODERS_BCP = {"ass-s-b": encode_ass_s_b, "pop-s-b": encode_pop_s_b, "poph-s-b": encode_poph_s_b}
