"""SAT encodings of the k-colorability question: ASS-S, POP-S and POPH-S.

Clause groups are tagged so encoders can be audited group by group:

===============  =========================================================
``alo``          at least one color per vertex
``edge``         ``-x(u,i) | -x(v,i)`` for every edge and color
``amo``          sequential-counter at-most-one (3k-4 clauses, k-1 auxiliaries)
``sym-above``    ``-x(v,i)`` for colors above the vertex's position
``sym-earlier``  ``-x(v,i) | OR x(u,i-1)`` over earlier positions
``top``          ``-y(v,k)``
``ladder``       ``y(v,i) | -y(v,i+1)``
``edge-first``   ``y(u,1) | y(v,1)`` per edge
``edge-step``    ``-y(u,i-1) | y(u,i) | -y(v,i-1) | y(v,i)`` per edge, i=2..k
``sym-diag``     ``-y(v,pos(v))``
``sym-ladder``   ``-y(v,i) | OR y(u,i-1)`` over earlier positions
``channel``      ``x(v,i)`` iff ``y(v,i-1) & -y(v,i)``
``precolor``     unit clauses fixing precolored vertices
===============  =========================================================

Symmetry clauses refer to vertex *positions* in ``Encoding.vertex_order``
rather than raw labels.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .cnf import Cnf, Model
from .instance import Coloring, Instance, violations

log = logging.getLogger(__name__)

GCP_KINDS = ("ass-s", "pop-s", "poph-s")
BCP_KINDS = ("ass-s-b", "pop-s-b", "poph-s-b")
POP_BASE_GROUPS = ("top", "ladder", "edge-first", "edge-step")


@dataclass
class Encoding:
    cnf: Cnf
    kind: str
    k: int
    instance: Instance
    vertex_order: tuple[int, ...] = ()
    precolored: dict[int, int] = field(default_factory=dict)
    symmetry: bool = False

    @property
    def problem(self) -> str:
        return "bcp" if self.kind.endswith("-b") else "gcp"

    def x(self, v: int, i: int) -> int:
        return self.cnf.registry[("x", v, i)]

    def y(self, v: int, i: int) -> int:
        return self.cnf.registry[("y", v, i)]

    def has_y(self) -> bool:
        return self.kind.startswith("pop")


# -- shared clause builders -------------------------------------------------

def register_x(cnf: Cnf, inst: Instance, k: int) -> None:
    for v in inst.vertices:
        for i in range(1, k + 1):
            cnf.registry.var("x", v, i)


def register_y(cnf: Cnf, inst: Instance, k: int) -> None:
    for v in inst.vertices:
        for i in range(1, k + 1):
            cnf.registry.var("y", v, i)


def at_least_one(cnf: Cnf, inst: Instance, k: int) -> None:
    reg = cnf.registry
    for v in inst.vertices:
        cnf.add([reg["x", v, i] for i in range(1, k + 1)], "alo")


def sequential_at_most_one(cnf: Cnf, v: int, k: int) -> None:
    """Sinz's sequential counter over ``x(v,1..k)``; nothing to do for k == 1."""
    if k < 2:
        return
    reg = cnf.registry
    x = [0] + [reg["x", v, i] for i in range(1, k + 1)]
    s = [0] + [reg.var("s", v, i) for i in range(1, k)]
    for i in range(1, k):
        cnf.add([-x[i], s[i]], "amo")
    for i in range(2, k):
        cnf.add([-s[i - 1], s[i]], "amo")
    for i in range(2, k):
        cnf.add([-x[i], -s[i - 1]], "amo")
    cnf.add([-x[k], -s[k - 1]], "amo")


def edge_clauses_ass(cnf: Cnf, inst: Instance, k: int) -> None:
    reg = cnf.registry
    for u, v in inst.edges:
        for i in range(1, k + 1):
            cnf.add([-reg["x", u, i], -reg["x", v, i]], "edge")


def ladder(cnf: Cnf, inst: Instance, k: int) -> None:
    reg = cnf.registry
    for v in inst.vertices:
        cnf.add([-reg["y", v, k]], "top")
    for v in inst.vertices:
        for i in range(1, k):
            cnf.add([reg["y", v, i], -reg["y", v, i + 1]], "ladder")


def channeling(cnf: Cnf, inst: Instance, k: int) -> None:
    reg = cnf.registry
    for v in inst.vertices:
        x1, y1 = reg["x", v, 1], reg["y", v, 1]
        cnf.add([x1, y1], "channel")
        cnf.add([-x1, -y1], "channel")
        for i in range(2, k + 1):
            xi, yi, yp = reg["x", v, i], reg["y", v, i], reg["y", v, i - 1]
            cnf.add([-xi, yp], "channel")
            cnf.add([-xi, -yi], "channel")
            cnf.add([xi, -yp, yi], "channel")


def _earlier(order: tuple[int, ...], i: int, p: int) -> tuple[int, ...]:
    # vertices at positions i-1 .. p-1 (1-based)
    return order[i - 2 : p - 1]


def symmetry_ass(cnf: Cnf, order: tuple[int, ...], k: int, first: bool = True) -> None:
    reg = cnf.registry
    n = len(order)
    if first:
        for p, v in enumerate(order, 1):
            for i in range(p + 1, k + 1):
                cnf.add([-reg["x", v, i]], "sym-above")
    for p in range(2, n):
        v = order[p - 1]
        for i in range(2, min(k, p) + 1):
            cnf.add([-reg["x", v, i]] + [reg["x", u, i - 1] for u in _earlier(order, i, p)], "sym-earlier")


def symmetry_pop(cnf: Cnf, order: tuple[int, ...], k: int, ladder_rows: bool = True) -> None:
    reg = cnf.registry
    n = len(order)
    for p, v in enumerate(order[:k], 1):
        cnf.add([-reg["y", v, p]], "sym-diag")
    if not ladder_rows:
        return
    for p in range(2, n):
        v = order[p - 1]
        for i in range(2, min(k, p) + 1):
            cnf.add([-reg["y", v, i]] + [reg["y", u, i - 1] for u in _earlier(order, i, p)], "sym-ladder")


def precolor_units(cnf: Cnf, precolor: Mapping[int, int], k: int, use_x: bool, use_y: bool) -> None:
    reg = cnf.registry
    for v, c in sorted(precolor.items()):
        if use_x:
            cnf.add([reg["x", v, c]], "precolor")
        if use_y:
            if c >= 2:
                cnf.add([reg["y", v, c - 1]], "precolor")
            if c < k:
                cnf.add([-reg["y", v, c]], "precolor")


# -- vertex order / precoloring ---------------------------------------------

def make_vertex_order(inst: Instance, order: str = "input",
                      precolor: Mapping[int, int] | None = None) -> tuple[int, ...]:
    """Precolored vertices first (by color), then the rest by label or by descending degree."""
    precolor = precolor or {}
    head = sorted(precolor, key=lambda v: (precolor[v], v))
    rest = [v for v in inst.vertices if v not in precolor]
    if order == "degree":
        rest.sort(key=lambda v: (-inst.degree(v), v))
    elif order != "input":
        raise ValueError(f"unknown vertex order {order!r}")
    return tuple(head + rest)


def clique_first(order: tuple[int, ...], precolor: Mapping[int, int]) -> bool:
    """True when the precolored vertices sit at positions 1..q with colors 1..q."""
    return all(precolor.get(order[p]) == p + 1 for p in range(len(precolor))) if len(precolor) <= len(order) else False


def _prepare(inst: Instance, k: int, precolor: Mapping[int, int] | None, order: str | tuple[int, ...],
             symmetry: bool) -> tuple[int, dict[int, int], tuple[int, ...], bool]:
    if not inst.is_gcp:
        raise ValueError("GCP encoders need unit edge distances; use the -b encoders for bandwidth instances")
    if k < 1:
        raise ValueError("k must be >= 1")
    precolor = dict(precolor or {})
    for v, c in precolor.items():
        if not 1 <= c <= k:
            raise ValueError(f"precolor of vertex {v} is {c}, outside 1..{k}")
    bad = [(u, v) for u, v in inst.edges if u in precolor and v in precolor and precolor[u] == precolor[v]]
    if bad:
        raise ValueError(f"precoloring conflicts on edges {bad}")
    if isinstance(order, str):
        vorder = make_vertex_order(inst, order, precolor)
    else:
        vorder = tuple(order)
        if sorted(vorder) != list(inst.vertices):
            raise ValueError("vertex order must be a permutation of 1..n")
    if symmetry and precolor and not clique_first(vorder, precolor):
        log.warning("precoloring is not clique-first in the vertex order; symmetry clauses dropped")
        symmetry = False
    return k, precolor, vorder, symmetry


def encode_ass_s(inst: Instance, k: int, precolor: Mapping[int, int] | None = None,
                 order: str | tuple[int, ...] = "input", symmetry: bool = True) -> Encoding:
    k, precolor, vorder, symmetry = _prepare(inst, k, precolor, order, symmetry)
    cnf = Cnf()
    register_x(cnf, inst, k)
    at_least_one(cnf, inst, k)
    edge_clauses_ass(cnf, inst, k)
    for v in inst.vertices:
        sequential_at_most_one(cnf, v, k)
    if symmetry:
        symmetry_ass(cnf, vorder, k)
    precolor_units(cnf, precolor, k, use_x=True, use_y=False)
    return Encoding(cnf, "ass-s", k, inst, vorder, precolor, symmetry)


def pop_edge_clauses(cnf: Cnf, inst: Instance, k: int) -> None:
    reg = cnf.registry
    for u, v in inst.edges:
        cnf.add([reg["y", u, 1], reg["y", v, 1]], "edge-first")
    for u, v in inst.edges:
        for i in range(2, k + 1):
            cnf.add([-reg["y", u, i - 1], reg["y", u, i], -reg["y", v, i - 1], reg["y", v, i]], "edge-step")


def encode_pop_s(inst: Instance, k: int, precolor: Mapping[int, int] | None = None,
                 order: str | tuple[int, ...] = "input", symmetry: bool = True) -> Encoding:
    k, precolor, vorder, symmetry = _prepare(inst, k, precolor, order, symmetry)
    cnf = Cnf()
    register_y(cnf, inst, k)
    ladder(cnf, inst, k)
    pop_edge_clauses(cnf, inst, k)
    if symmetry:
        symmetry_pop(cnf, vorder, k)
    precolor_units(cnf, precolor, k, use_x=False, use_y=True)
    return Encoding(cnf, "pop-s", k, inst, vorder, precolor, symmetry)


def encode_poph_s(inst: Instance, k: int, precolor: Mapping[int, int] | None = None,
                  order: str | tuple[int, ...] = "input", symmetry: bool = True) -> Encoding:
    k, precolor, vorder, symmetry = _prepare(inst, k, precolor, order, symmetry)
    cnf = Cnf()
    register_y(cnf, inst, k)
    register_x(cnf, inst, k)
    ladder(cnf, inst, k)
    edge_clauses_ass(cnf, inst, k)
    channeling(cnf, inst, k)
    if symmetry:
        symmetry_pop(cnf, vorder, k, ladder_rows=False)
        symmetry_ass(cnf, vorder, k, first=False)
    precolor_units(cnf, precolor, k, use_x=True, use_y=True)
    return Encoding(cnf, "poph-s", k, inst, vorder, precolor, symmetry)


ENCODERS_GCP = {"ass-s": encode_ass_s, "pop-s": encode_pop_s, "poph-s": encode_poph_s}


def size_after_fixing(cnf: Cnf, unit_groups: tuple[str, ...], counted: tuple[str, ...] | None = None) -> tuple[int, int]:
    """Formula size once the unit clauses of ``unit_groups`` are substituted away.

    The fixed variables disappear together with their unit clauses; every other
    clause is still counted.  ``counted`` restricts the tally to some groups.
    """
    fixed = {abs(c[0]) for c, g in zip(cnf.clauses, cnf.groups) if g in unit_groups and len(c) == 1}
    keep = set(counted) if counted is not None else None
    nclauses = 0
    used: set[int] = set()
    for c, g in zip(cnf.clauses, cnf.groups):
        if keep is not None and g not in keep:
            continue
        used.update(abs(l) for l in c)
        if g in unit_groups and len(c) == 1:
            continue
        nclauses += 1
    nvars = len(used - fixed) if keep is not None else cnf.nvars - len(fixed)
    return nvars, nclauses


def decode(model: Model, enc: Encoding) -> Coloring:
    """Turn a model of ``enc.cnf`` into a coloring and check it.

    POP kinds read the color off the ladder, ``1 + #{i : y(v,i)}``; the
    assignment kind takes the unique true ``x(v,i)``.
    """
    bad = enc.cnf.check(model)
    if bad is not None:
        raise ValueError(f"assignment falsifies clause {bad}")
    reg = enc.cnf.registry
    coloring: Coloring = {}
    for v in enc.instance.vertices:
        if enc.has_y():
            coloring[v] = 1 + sum(model.get(reg["y", v, i], False) for i in range(1, enc.k + 1))
        else:
            true = [i for i in range(1, enc.k + 1) if model.get(reg["x", v, i], False)]
            if len(true) != 1:
                raise ValueError(f"vertex {v} has {len(true)} true color variables")
            coloring[v] = true[0]
    wrong = violations(enc.instance, coloring, enc.problem)
    if wrong:
        raise ValueError(f"decoded coloring violates edges {wrong[:5]}")
    for v, c in enc.precolored.items():
        if coloring[v] != c:
            raise ValueError(f"precolored vertex {v} decoded to {coloring[v]} instead of {c}")
    return coloring
