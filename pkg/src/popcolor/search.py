"""Linear searches over the color bound k, and the independent coloring check."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Mapping

from .bounds import greedy_bcp_upper_bound, greedy_gcp_upper_bound
from .cnf import SAT, UNSAT
from .encode_bcp import ENCODERS_BCP
from .encode_gcp import ENCODERS_GCP, decode
from .instance import Coloring, Edge, Instance, violations
from .preprocess import Clique, cut_size, find_clique, lift_coloring, reduce
from .solve import solve


def verify(inst: Instance, coloring: Mapping[int, int], problem: str = "gcp") -> list[Edge]:
    """Edges violating the coloring rule; an empty list means the coloring is valid."""
    return violations(inst, coloring, problem)


@dataclass
class SolveReport:
    instance: str
    problem: str
    model: str
    lb: int
    ub: int
    optimal: bool = False
    witness: Coloring | None = None
    per_k: list[tuple[int, str, float]] = field(default_factory=list)
    preprocess_removed: int = 0
    clique_size: int = 0
    seconds: float = 0.0
    message: str = ""

    @property
    def solver_error(self) -> bool:
        return any(d == "SOLVER_ERROR" for _, d, _ in self.per_k)

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["schema"] = 1
        out["per_k"] = [{"k": k, "result": d, "seconds": round(s, 6)} for k, d, s in self.per_k]
        if self.witness is not None:
            out["witness"] = {str(v): c for v, c in sorted(self.witness.items())}
        return out


class _Clock:
    def __init__(self, budget: float | None) -> None:
        self.start = time.monotonic()
        self.budget = budget

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def remaining(self) -> float | None:
        return None if self.budget is None else self.budget - self.elapsed()


def _checked(inst: Instance, coloring: Coloring, problem: str) -> Coloring:
    bad = verify(inst, coloring, problem)
    if bad:
        raise RuntimeError(f"{inst.name or 'instance'}: witness violates edges {bad[:5]}")
    return coloring


def solve_gcp(inst: Instance, kind: str = "pop-s", backend: str = "internal", budget: float | None = None,
              seed: int = 0, solver_cmd: str | None = None, order: str = "input", symmetry: bool = True,
              clique_budget: int | None = None, clique_cap: float = 100.0) -> SolveReport:
    """Ascending search from the clique bound; each k is decided on the reduced graph."""
    if kind not in ENCODERS_GCP:
        raise ValueError(f"unknown GCP encoding {kind!r}")
    if not inst.is_gcp:
        raise ValueError("solve_gcp needs unit edge distances")
    clock = _Clock(budget)
    encoder = ENCODERS_GCP[kind]
    if inst.n == 0:
        return SolveReport(inst.name, "gcp", kind, 0, 0, True, {})
    ub, witness = greedy_gcp_upper_bound(inst)
    _checked(inst, witness, "gcp")
    cap = clique_cap if budget is None else max(0.0, min(clique_cap, budget))
    q0 = find_clique(inst, seed, clique_budget, cap)
    L = len(q0)
    reduced, log = reduce(inst, L)
    report = SolveReport(inst.name, "gcp", kind, L, ub, witness=witness,
                         preprocess_removed=log.removed, clique_size=L)

    if reduced.n == 0:
        # every vertex was reduced away; the clique colors fix everything
        t = time.monotonic()
        lifted = _checked(inst, lift_coloring(log, {}, L), "gcp")
        report.per_k.append((L, SAT, time.monotonic() - t))
        report.lb = report.ub = max(lifted.values())
        report.witness, report.optimal = lifted, True
        report.seconds = clock.elapsed()
        return report

    relabel = log.to_reduced()
    survivors = tuple(relabel[v] for v in q0.vertices if v in relabel)
    inherited = Clique(survivors, cut_size(reduced, survivors)) if len(survivors) == len(q0) else Clique((), 0)
    rem = clock.remaining()
    fresh = find_clique(reduced, seed, clique_budget, cap if rem is None else max(0.0, min(cap, rem)))
    clique = max((inherited, fresh), key=lambda q: (len(q), q.cut))
    report.clique_size = max(L, len(clique))
    report.lb = report.clique_size
    precolor = clique.precoloring()

    for k in range(report.lb, ub + 1):
        rem = clock.remaining()
        if rem is not None and rem <= 0:
            report.message = "budget exhausted"
            break
        # more colors than vertices never helps
        enc = encoder(reduced, min(k, reduced.n), precolor=precolor, order=order, symmetry=symmetry)
        res = solve(enc.cnf, backend, rem, solver_cmd)
        report.per_k.append((k, res.status, res.seconds))
        if res.status == UNSAT:
            report.lb = k + 1
            continue
        if res.status == SAT:
            assert res.model is not None
            lifted = _checked(inst, lift_coloring(log, decode(res.model, enc), k), "gcp")
            report.witness, report.ub = lifted, max(lifted.values())
            report.optimal = report.ub == report.lb
            if not report.optimal:
                raise RuntimeError(f"SAT at k={k} but lifted coloring uses {report.ub} colors")
            break
        report.message = res.message or res.status
        break
    report.seconds = clock.elapsed()
    return report


def solve_bcp(inst: Instance, kind: str = "pop-s-b", backend: str = "internal", budget: float | None = None,
              solver_cmd: str | None = None) -> SolveReport:
    """Descending search from the greedy bound down to the first UNSAT k."""
    if kind not in ENCODERS_BCP:
        raise ValueError(f"unknown BCP encoding {kind!r}")
    clock = _Clock(budget)
    encoder = ENCODERS_BCP[kind]
    if inst.n == 0:
        return SolveReport(inst.name, "bcp", kind, 0, 0, True, {})
    H, witness = greedy_bcp_upper_bound(inst)
    _checked(inst, witness, "bcp")
    lb = inst.max_distance + 1 if inst.m else 1
    report = SolveReport(inst.name, "bcp", kind, min(lb, H), H, witness=witness)
    k = H - 1
    while k >= 1:
        rem = clock.remaining()
        if rem is not None and rem <= 0:
            report.message = "budget exhausted"
            break
        enc = encoder(inst, k)
        res = solve(enc.cnf, backend, rem, solver_cmd)
        report.per_k.append((k, res.status, res.seconds))
        if res.status == SAT:
            assert res.model is not None
            found = _checked(inst, decode(res.model, enc), "bcp")
            report.witness, report.ub = found, max(found.values())
            k = report.ub - 1
            continue
        if res.status == UNSAT:
            report.lb = k + 1
            break
        report.message = res.message or res.status
        break
    else:
        report.lb = 1
    report.optimal = report.lb == report.ub
    report.seconds = clock.elapsed()
    return report
