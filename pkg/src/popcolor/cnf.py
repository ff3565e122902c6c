"""CNF formulas with a semantic variable registry.

Variables are registered under keys such as ``("x", v, i)`` (vertex ``v`` has
color ``i``), ``("y", v, i)`` (color ``i`` lies below vertex ``v`` in the
partial order) and ``("s", v, i)`` (sequential-counter auxiliary).  Every clause
is tagged with the name of the clause group it belongs to, so encoders can be
audited group by group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

Key = tuple[Hashable, ...]
Model = dict[int, bool]


class VarRegistry:
    """Bijection between semantic keys and DIMACS variable numbers 1..n."""

    def __init__(self) -> None:
        self._ids: dict[Key, int] = {}
        self._keys: list[Key] = []

    def var(self, *key: Hashable) -> int:
        """Return the id of ``key``, registering it on first use."""
        vid = self._ids.get(key)
        if vid is None:
            self._keys.append(key)
            vid = self._ids[key] = len(self._keys)
        return vid

    def __getitem__(self, key: Key) -> int:
        return self._ids[key]

    def get(self, key: Key) -> int | None:
        return self._ids.get(key)

    def key(self, vid: int) -> Key:
        return self._keys[vid - 1]

    def __contains__(self, key: object) -> bool:
        return key in self._ids

    def __len__(self) -> int:
        return len(self._keys)

    def items(self) -> Iterator[tuple[Key, int]]:
        return iter(self._ids.items())


@dataclass
class Cnf:
    registry: VarRegistry = field(default_factory=VarRegistry)
    clauses: list[list[int]] = field(default_factory=list)
    groups: list[str] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.registry)

    def add(self, clause: Iterable[int], group: str = "") -> None:
        lits = list(dict.fromkeys(clause))
        lits_set = set(lits)
        if any(-lit in lits_set for lit in lits):
            raise ValueError(f"tautological clause {lits}")
        for lit in lits:
            if lit == 0 or abs(lit) > self.nvars:
                raise ValueError(f"literal {lit} outside 1..{self.nvars}")
        self.clauses.append(lits)
        self.groups.append(group)

    @property
    def units(self) -> list[int]:
        return [c[0] for c in self.clauses if len(c) == 1]

    def group_counts(self) -> Counter[str]:
        return Counter(self.groups)

    def count(self, *groups: str) -> int:
        counts = self.group_counts()
        return sum(counts[g] for g in groups)

    def variables_in(self, *groups: str) -> set[int]:
        wanted = set(groups)
        return {abs(l) for c, g in zip(self.clauses, self.groups) if g in wanted for l in c}

    def check(self, model: Model) -> list[int] | None:
        """Return the first clause falsified by ``model`` or None if all are satisfied.

        Variables missing from ``model`` count as false.
        """
        for clause in self.clauses:
            if not any(model.get(abs(l), False) == (l > 0) for l in clause):
                return clause
        return None

    def __len__(self) -> int:
        return len(self.clauses)


def to_dimacs(f: Cnf) -> str:
    out = [f"p cnf {f.nvars} {len(f.clauses)}"]
    out.extend(" ".join(map(str, c)) + " 0" if c else "0" for c in f.clauses)
    return "\n".join(out) + "\n"


def parse_dimacs_cnf(text: str) -> Cnf:
    """Read a DIMACS CNF file into an anonymous :class:`Cnf` (keys ``("v", i)``)."""
    f = Cnf()
    nvars = None
    pending: list[int] = []
    for raw in text.splitlines():
        tok = raw.split()
        if not tok or tok[0] in ("c", "%"):
            continue
        if tok[0] == "p":
            nvars = int(tok[2])
            for i in range(1, nvars + 1):
                f.registry.var("v", i)
            continue
        if nvars is None:
            raise ValueError("clause before problem line")
        for t in tok:
            lit = int(t)
            if lit == 0:
                f.clauses.append(pending)
                f.groups.append("")
                pending = []
            else:
                pending.append(lit)
    if pending:
        f.clauses.append(pending)
        f.groups.append("")
    return f


SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"


def parse_model(solver_output: str, f: Cnf | None = None) -> Model | str:
    """Interpret standard solver output.

    Returns the model as ``{var: bool}`` over ``1..f.nvars`` for a satisfiable
    answer, the string ``UNSAT`` for an unsatisfiable one, and ``UNKNOWN``
    when no status line is present.
    """
    status = None
    lits: list[int] = []
    for line in solver_output.splitlines():
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "s" and len(tok) >= 2:
            word = " ".join(tok[1:])
            if word == "SATISFIABLE":
                status = SAT
            elif word == "UNSATISFIABLE":
                status = UNSAT
            else:
                status = UNKNOWN
        elif tok[0] == "v":
            lits.extend(int(t) for t in tok[1:])
    if status is None or status == UNKNOWN:
        return UNKNOWN
    if status == UNSAT:
        return UNSAT
    nvars = f.nvars if f is not None else max((abs(l) for l in lits), default=0)
    model = {v: False for v in range(1, nvars + 1)}
    for lit in lits:
        if lit != 0:
            model[abs(lit)] = lit > 0
    return model
