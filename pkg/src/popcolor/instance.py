"""Coloring instances and the DIMACS ``.col`` text format.

An :class:`Instance` is an undirected simple graph on vertices ``1..n`` with a
positive integer distance on every edge.  Plain graph coloring instances have
all distances equal to 1; bandwidth coloring instances (the GEOM family, for
example) carry a fourth token on their ``e`` lines.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

Edge = tuple[int, int]
Coloring = dict[int, int]


class DimacsError(ValueError):
    """Raised for text that is not a usable DIMACS graph."""


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Instance:
    n: int
    dist: Mapping[Edge, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        clean: dict[Edge, int] = {}
        for (u, v), d in self.dist.items():
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {{{u},{v}}} has an endpoint outside 1..{self.n}")
            if d < 1:
                raise ValueError(f"edge {{{u},{v}}} has non-positive distance {d}")
            k = _key(u, v)
            if k in clean:
                raise ValueError(f"duplicate edge {{{u},{v}}}")
            clean[k] = int(d)
        object.__setattr__(self, "dist", dict(sorted(clean.items())))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]], name: str = "") -> "Instance":
        """Build from ``(u, v)`` or ``(u, v, d)`` tuples; repeated edges keep the larger distance."""
        dist: dict[Edge, int] = {}
        for e in edges:
            u, v, *rest = e
            d = rest[0] if rest else 1
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            k = _key(u, v)
            dist[k] = max(d, dist.get(k, 0))
        return cls(n, dist, name)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self.dist)

    @property
    def m(self) -> int:
        return len(self.dist)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.dist:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def d(self, u: int, v: int) -> int:
        return self.dist[_key(u, v)]

    @property
    def is_gcp(self) -> bool:
        return all(d == 1 for d in self.dist.values())

    @property
    def max_distance(self) -> int:
        return max(self.dist.values(), default=1)

    @property
    def mean_distance(self) -> Fraction:
        """Average edge distance; 1 on an edgeless graph."""
        if not self.dist:
            return Fraction(1)
        return Fraction(sum(self.dist.values()), len(self.dist))

    def with_unit_distances(self) -> "Instance":
        return Instance(self.n, {e: 1 for e in self.dist}, self.name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self.n == other.n and dict(self.dist) == dict(other.dist)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.dist.items())))

    def __repr__(self) -> str:
        return f"Instance(name={self.name!r}, n={self.n}, m={self.m})"


def violations(inst: Instance, coloring: Mapping[int, int], problem: str = "gcp") -> list[Edge]:
    """Edges whose endpoints break the coloring rule of ``problem``.

    For ``"gcp"`` the rule is ``c(u) != c(v)``; for ``"bcp"`` it is
    ``|c(u) - c(v)| >= d(u, v)``.  Every vertex must be colored with an
    integer >= 1, otherwise ``ValueError`` is raised.
    """
    if problem not in ("gcp", "bcp"):
        raise ValueError(f"unknown problem {problem!r}")
    for v in inst.vertices:
        c = coloring.get(v)
        if c is None:
            raise ValueError(f"vertex {v} is not colored")
        if c < 1:
            raise ValueError(f"vertex {v} has color {c} < 1")
    bad = []
    for (u, v), d in inst.dist.items():
        gap = abs(coloring[u] - coloring[v])
        if (problem == "gcp" and gap == 0) or (problem == "bcp" and gap < d):
            bad.append((u, v))
    return bad


def parse_dimacs(text: str, name: str = "") -> Instance:
    n = m = None
    dist: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok:
            continue
        kind = tok[0]
        if kind[0] == "c":
            continue
        if kind == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: second problem line")
            if len(tok) != 4 or tok[1] not in ("edge", "edges"):
                raise DimacsError(f"line {lineno}: malformed problem line {raw.strip()!r}")
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed problem line {raw.strip()!r}") from None
            if n < 0 or m < 0:
                raise DimacsError(f"line {lineno}: negative counts")
        elif kind == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(tok) not in (3, 4):
                raise DimacsError(f"line {lineno}: malformed edge line {raw.strip()!r}")
            try:
                u, v = int(tok[1]), int(tok[2])
                d = int(tok[3]) if len(tok) == 4 else 1
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed edge line {raw.strip()!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: endpoint out of range 1..{n}")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop on vertex {u}")
            if d <= 0:
                raise DimacsError(f"line {lineno}: distance {d} must be positive")
            k = _key(u, v)
            dist[k] = max(d, dist.get(k, 0))
        elif kind == "n":
            continue  # node weights play no role in either problem
        else:
            raise DimacsError(f"line {lineno}: unknown line type {kind!r}")
    if n is None:
        raise DimacsError("missing problem line")
    if m != len(dist):
        warnings.warn(
            f"{name or 'instance'}: problem line declares {m} edges, found {len(dist)} distinct",
            stacklevel=2,
        )
    return Instance(n, dist, name)


def write_dimacs(inst: Instance) -> str:
    lines = [f"p edge {inst.n} {inst.m}"]
    for (u, v), d in inst.dist.items():
        lines.append(f"e {u} {v}" if d == 1 else f"e {u} {v} {d}")
    return "\n".join(lines) + "\n"


def read_instance(path: str | Path) -> Instance:
    path = Path(path)
    name = path.name
    for suffix in (".col", ".txt", ".dimacs"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
            break
    return parse_dimacs(path.read_text(encoding="utf-8", errors="replace"), name=name)
