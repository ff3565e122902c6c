"""SAT backends: a small DPLL solver and an adapter for external DIMACS solvers."""

from __future__ import annotations

import os
import shlex
import signal
import subprocess
import tempfile
import time
from dataclasses import dataclass

from .cnf import SAT, UNKNOWN, UNSAT, Cnf, Model, parse_model, to_dimacs

TIMEOUT = "TIMEOUT"
SOLVER_ERROR = "SOLVER_ERROR"
DEFAULT_SOLVER = "kissat"


@dataclass
class SolveResult:
    status: str
    model: Model | None = None
    message: str = ""
    seconds: float = 0.0

    @property
    def sat(self) -> bool:
        return self.status == SAT


class _Timeout(Exception):
    pass


def solve_internal(f: Cnf, timeout: float | None = None) -> SolveResult:
    """DPLL with two watched literals and chronological backtracking.

    Branches on the lowest unassigned variable, trying true first, so the
    result is deterministic.  No clause learning; meant for small formulas.
    """
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    if timeout is not None and timeout <= 0:
        return SolveResult(TIMEOUT, message="no time budget")
    n = f.nvars
    val = [0] * (n + 1)  # 0 unassigned, 1 true, -1 false
    watches: dict[int, list[list[int]]] = {}
    for v in range(1, n + 1):
        watches[v] = []
        watches[-v] = []
    units: list[int] = []
    for clause in f.clauses:
        if not clause:
            return SolveResult(UNSAT, message="empty clause", seconds=time.monotonic() - start)
        if len(clause) == 1:
            units.append(clause[0])
        else:
            c = list(clause)
            watches[c[0]].append(c)
            watches[c[1]].append(c)

    trail: list[int] = []
    levels: list[tuple[int, int, bool]] = []  # (trail length before, var, flipped)
    qhead = 0
    next_var = 1

    def value(lit: int) -> int:
        x = val[lit] if lit > 0 else -val[-lit]
        return x

    def assign(lit: int) -> None:
        if lit > 0:
            val[lit] = 1
        else:
            val[-lit] = -1
        trail.append(lit)

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            wl = watches[false_lit]
            i = j = 0
            size = len(wl)
            while i < size:
                c = wl[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if value(first) == 1:
                    wl[j] = c
                    j += 1
                    continue
                for t in range(2, len(c)):
                    if value(c[t]) != -1:
                        c[1], c[t] = c[t], c[1]
                        watches[c[1]].append(c)
                        break
                else:
                    wl[j] = c
                    j += 1
                    if value(first) == -1:
                        while i < size:
                            wl[j] = wl[i]
                            j += 1
                            i += 1
                        del wl[j:]
                        return False
                    assign(first)
            del wl[j:]
        return True

    def undo(to: int) -> None:
        nonlocal qhead, next_var
        while len(trail) > to:
            v = abs(trail.pop())
            val[v] = 0
            if v < next_var:
                next_var = v
        qhead = len(trail)

    for lit in units:
        x = value(lit)
        if x == -1:
            return SolveResult(UNSAT, seconds=time.monotonic() - start)
        if x == 0:
            assign(lit)

    steps = 0
    try:
        ok = propagate()
        while True:
            if not ok:
                # chronological backtracking: flip the most recent unflipped decision
                while levels:
                    mark, var, flipped = levels.pop()
                    undo(mark)
                    if not flipped:
                        levels.append((mark, var, True))
                        assign(-var)
                        break
                else:
                    return SolveResult(UNSAT, seconds=time.monotonic() - start)
                ok = propagate()
                continue
            while next_var <= n and val[next_var] != 0:
                next_var += 1
            if next_var > n:
                break
            steps += 1
            if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
                raise _Timeout
            levels.append((len(trail), next_var, False))
            assign(next_var)
            ok = propagate()
    except _Timeout:
        return SolveResult(TIMEOUT, message=f"timed out after {timeout}s", seconds=time.monotonic() - start)

    model = {v: val[v] == 1 for v in range(1, n + 1)}
    bad = f.check(model)
    if bad is not None:
        raise RuntimeError(f"internal solver produced a model falsifying {bad}")
    return SolveResult(SAT, model, seconds=time.monotonic() - start)


def default_solver() -> str:
    return os.environ.get("POPCOLOR_SOLVER", DEFAULT_SOLVER)


def solve_external(f: Cnf, solver_cmd: str | list[str] | None = None,
                   timeout: float | None = None) -> SolveResult:
    """Run an external solver on ``f`` written to a temporary DIMACS file.

    The solver is started in its own process group so a timeout kills it and
    anything it spawned.  A SAT answer is only accepted after checking the
    model against ``f``.
    """
    start = time.monotonic()
    if timeout is not None and timeout <= 0:
        return SolveResult(TIMEOUT, message="no time budget")
    if solver_cmd is None:
        solver_cmd = default_solver()
    argv = shlex.split(solver_cmd) if isinstance(solver_cmd, str) else list(solver_cmd)
    fd, path = tempfile.mkstemp(suffix=".cnf", prefix="popcolor-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(to_dimacs(f))
        try:
            proc = subprocess.Popen(argv + [path], stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                                    text=True, start_new_session=True)
        except OSError as exc:
            return SolveResult(SOLVER_ERROR, message=f"cannot start {argv[0]}: {exc}")
        try:
            out, err = proc.communicate(timeout=timeout)
        except subprocess.TimeoutExpired:
            try:
                os.killpg(proc.pid, signal.SIGKILL)
            except ProcessLookupError:
                pass
            proc.communicate()
            return SolveResult(TIMEOUT, message=f"killed after {timeout}s", seconds=time.monotonic() - start)
    finally:
        try:
            os.unlink(path)
        except FileNotFoundError:
            pass
    elapsed = time.monotonic() - start
    answer = parse_model(out, f)
    if answer == UNSAT:
        if proc.returncode not in (0, 20):
            return SolveResult(SOLVER_ERROR, message=f"UNSAT with exit code {proc.returncode}", seconds=elapsed)
        return SolveResult(UNSAT, seconds=elapsed)
    if answer == UNKNOWN:
        if any(line.split()[:2] == ["s", "UNKNOWN"] for line in out.splitlines()):
            return SolveResult(TIMEOUT, message="solver reported UNKNOWN", seconds=elapsed)
        return SolveResult(SOLVER_ERROR, message=f"exit code {proc.returncode}, no status line: {err.strip()[-500:]}",
                           seconds=elapsed)
    assert isinstance(answer, dict)
    if proc.returncode not in (0, 10):
        return SolveResult(SOLVER_ERROR, message=f"SAT with exit code {proc.returncode}", seconds=elapsed)
    bad = f.check(answer)
    if bad is not None:
        return SolveResult(SOLVER_ERROR, message=f"solver model falsifies clause {bad}", seconds=elapsed)
    return SolveResult(SAT, answer, seconds=elapsed)


def solve(f: Cnf, backend: str = "internal", timeout: float | None = None,
          solver_cmd: str | list[str] | None = None) -> SolveResult:
    if backend == "internal":
        return solve_internal(f, timeout)
    if backend == "external":
        return solve_external(f, solver_cmd, timeout)
    raise ValueError(f"unknown backend {backend!r}")
