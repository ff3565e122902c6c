"""Command line: ``popcolor encode | solve | bench | verify``.

Exit codes: 0 success/optimal, 2 bad flags, 3 unreadable input, 4 bounds
only (budget ran out), 5 solver error, 6 coloring violates the instance.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .bounds import greedy_bcp_upper_bound, greedy_gcp_upper_bound
from .cnf import to_dimacs
from .encode_bcp import ENCODERS_BCP
from .encode_gcp import ENCODERS_GCP, POP_BASE_GROUPS, size_after_fixing
from .ilp import KINDS as ILP_KINDS, build_model, render_lp
from .instance import DimacsError, Instance, read_instance
from .preprocess import find_clique
from .search import SolveReport, solve_bcp, solve_gcp, verify

SAT_MODELS = tuple(ENCODERS_GCP) + tuple(ENCODERS_BCP)
ALL_MODELS = SAT_MODELS + ILP_KINDS
CSV_COLUMNS = ["instance", "problem", "model", "n", "m", "lb", "ub", "optimal", "time_s",
               "preprocess_removed", "clique_size", "per_k"]

EXIT_OK, EXIT_FLAGS, EXIT_PARSE, EXIT_BOUNDS, EXIT_SOLVER, EXIT_INVALID = 0, 2, 3, 4, 5, 6


class _Usage(Exception):
    pass


class _Parse(Exception):
    pass


def _load(path: str) -> Instance:
    try:
        return read_instance(path)
    except (OSError, DimacsError) as exc:
        raise _Parse(str(exc)) from exc


def _model_problem(model: str) -> str:
    return "bcp" if model.endswith("-b") else "gcp"


def _check_problem(args: argparse.Namespace, inst: Instance) -> None:
    if _model_problem(args.model) != args.problem:
        raise _Usage(f"model {args.model} does not solve problem {args.problem}")
    if args.problem == "gcp" and not inst.is_gcp:
        raise _Usage("instance has edge distances > 1; use --problem bcp")


def _write(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_encode(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    _check_problem(args, inst)
    report = sys.stderr if args.out == "-" else sys.stdout
    if args.model in ILP_KINDS:
        H = args.H
        if H is None:
            H = (greedy_bcp_upper_bound if args.problem == "bcp" else greedy_gcp_upper_bound)(inst)[0]
            H = max(H, 1)
        model = build_model(args.model, inst, H)
        _write(args.out, render_lp(model))
        print(f"vars={model.nvars} rows={model.nrows}", file=report)
        return EXIT_OK
    if args.k is None:
        raise _Usage(f"--k is required for SAT model {args.model}")
    if args.model in ENCODERS_GCP:
        precolor = find_clique(inst, args.seed).precoloring() if args.clique else None
        enc = ENCODERS_GCP[args.model](inst, args.k, precolor=precolor, order=args.order,
                                       symmetry=not args.no_symmetry)
    else:
        enc = ENCODERS_BCP[args.model](inst, args.k)
    _write(args.out, to_dimacs(enc.cnf))
    print(f"vars={enc.cnf.nvars} clauses={len(enc.cnf)}", file=report)
    if args.model in ("pop-s", "poph-s", "pop-s-b", "poph-s-b"):
        base = POP_BASE_GROUPS if args.model == "pop-s" else None
        if base is not None:
            vars_ = len(enc.cnf.variables_in(*base))
            print(f"base vars={vars_} clauses={enc.cnf.count(*base)}", file=report)
            v2, c2 = size_after_fixing(enc.cnf, ("top",), base)
            print(f"base-after-units vars={v2} clauses={c2}", file=report)
        v3, c3 = size_after_fixing(enc.cnf, ("top",))
        print(f"after-units vars={v3} clauses={c3}", file=report)
    return EXIT_OK


def _render(rep: SolveReport) -> str:
    name = "chi" if rep.problem == "gcp" else "opt"
    if rep.optimal:
        return f"{rep.instance}: {name}={rep.ub} optimal ({rep.model}, {rep.seconds:.2f}s)"
    extra = f" [{rep.message}]" if rep.message else ""
    return f"{rep.instance}: bounds lb={rep.lb} ub={rep.ub} ({rep.model}, {rep.seconds:.2f}s){extra}"


def _run(inst: Instance, problem: str, model: str, backend: str, timeout: float, solver: str | None,
         seed: int, order: str = "input", symmetry: bool = True) -> SolveReport:
    if problem == "gcp":
        return solve_gcp(inst, model, backend, timeout, seed=seed, solver_cmd=solver, order=order,
                         symmetry=symmetry)
    return solve_bcp(inst, model, backend, timeout, solver_cmd=solver)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    _check_problem(args, inst)
    if args.model not in SAT_MODELS:
        raise _Usage("solve runs SAT models only; ILP models can only be emitted")
    rep = _run(inst, args.problem, args.model, args.backend, args.timeout, args.solver, args.seed,
               args.order, not args.no_symmetry)
    print(_render(rep))
    if args.json:
        _write(args.json, json.dumps(rep.to_json(), indent=2) + "\n")
    if args.coloring_out and rep.witness is not None:
        _write(args.coloring_out, "".join(f"v {v} {c}\n" for v, c in sorted(rep.witness.items())))
    if rep.solver_error:
        print(f"solver error: {rep.message}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK if rep.optimal else EXIT_BOUNDS


def _bench_one(task: tuple[str, str, str, str, float, str | None, int]) -> dict[str, Any]:
    path, problem, model, backend, timeout, solver, seed = task
    row: dict[str, Any] = {c: "" for c in CSV_COLUMNS}
    row.update(instance=Path(path).stem, problem=problem, model=model, optimal=False)
    start = time.monotonic()
    try:
        inst = read_instance(path)
        row.update(instance=inst.name, n=inst.n, m=inst.m)
        rep = _run(inst, problem, model, backend, timeout, solver, seed)
        row.update(lb=rep.lb, ub=rep.ub, optimal=rep.optimal, time_s=f"{rep.seconds:.3f}",
                   preprocess_removed=rep.preprocess_removed, clique_size=rep.clique_size,
                   per_k=";".join(f"{k}:{d}:{s:.3f}" for k, d, s in rep.per_k))
    except Exception as exc:  # a failing instance becomes a row, never aborts the sweep
        row.update(time_s=f"{time.monotonic() - start:.3f}", per_k=f"error: {type(exc).__name__}: {exc}")
    return row


def survival_rows(rows: Sequence[dict[str, Any]], models: Sequence[str]) -> list[tuple[str, float, int]]:
    """Per model, solve times of the optimally solved instances with the running count."""
    out = []
    for model in models:
        times = sorted(float(r["time_s"]) for r in rows if r["model"] == model and r["optimal"] is True)
        out.extend((model, t, i) for i, t in enumerate(times, 1))
    return out


def cmd_bench(args: argparse.Namespace) -> int:
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    for m in models:
        if m not in SAT_MODELS or _model_problem(m) != args.problem:
            raise _Usage(f"model {m!r} cannot be benchmarked on problem {args.problem}")
    files = sorted(p for p in Path(args.dir).iterdir() if p.suffix in (".col", ".dimacs", ".txt")) \
        if Path(args.dir).is_dir() else None
    if files is None:
        raise _Parse(f"{args.dir} is not a directory")
    tasks = [(str(p), args.problem, m, args.backend, args.timeout, args.solver, args.seed)
             for p in files for m in models]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    order = {m: i for i, m in enumerate(models)}
    rows.sort(key=lambda r: (r["instance"], order[r["model"]]))
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, CSV_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    surv = args.survival or str(Path(args.out).with_name(Path(args.out).stem + "_survival.csv"))
    with open(surv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["model", "time_s", "solved"])
        w.writerows((m, f"{t:.3f}", c) for m, t, c in survival_rows(rows, models))
    solved = sum(1 for r in rows if r["optimal"] is True)
    print(f"{len(rows)} runs, {solved} optimal; wrote {args.out} and {surv}")
    return EXIT_OK


def read_coloring(path: str) -> dict[int, int]:
    coloring: dict[int, int] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Parse(str(exc)) from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("c"):
            continue
        if tok[0] != "v" or len(tok) != 3:
            raise _Parse(f"{path}:{lineno}: expected 'v <vertex> <color>'")
        try:
            v, c = int(tok[1]), int(tok[2])
        except ValueError:
            raise _Parse(f"{path}:{lineno}: expected integers") from None
        if v in coloring:
            raise _Parse(f"{path}:{lineno}: vertex {v} colored twice")
        coloring[v] = c
    return coloring


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load(args.instance)
    coloring = read_coloring(args.coloring)
    try:
        bad = verify(inst, coloring, args.problem)
    except ValueError as exc:
        raise _Parse(str(exc)) from exc
    if bad:
        for u, v in bad:
            print(f"violated edge {u} {v} (colors {coloring[u]}, {coloring[v]}, distance {inst.d(u, v)})")
        return EXIT_INVALID
    print(f"OK: {max(coloring.values(), default=0)} colors")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="popcolor", description="Exact graph and bandwidth coloring via SAT encodings.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--instance", required=True)
        sp.add_argument("--problem", choices=("gcp", "bcp"), default="gcp")
        sp.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("encode", help="write a CNF or LP file")
    common(e)
    e.add_argument("--model", choices=ALL_MODELS, required=True)
    e.add_argument("--k", type=int)
    e.add_argument("--H", type=int)
    e.add_argument("--out", default="-")
    e.add_argument("--no-symmetry", action="store_true")
    e.add_argument("--order", choices=("input", "degree"), default="input")
    e.add_argument("--clique", action="store_true", help="precolor a clique found with --seed")
    e.set_defaults(func=cmd_encode)

    s = sub.add_parser("solve", help="find the optimum by linear search over k")
    common(s)
    s.add_argument("--model", choices=SAT_MODELS, required=True)
    s.add_argument("--backend", choices=("internal", "external"), default="internal")
    s.add_argument("--solver", help="external solver command (default: $POPCOLOR_SOLVER or kissat)")
    s.add_argument("--timeout", type=float, default=3600.0)
    s.add_argument("--json")
    s.add_argument("--coloring-out")
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--order", choices=("input", "degree"), default="input")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run models over a directory of instances")
    b.add_argument("--dir", required=True)
    b.add_argument("--problem", choices=("gcp", "bcp"), default="gcp")
    b.add_argument("--models", required=True, help="comma-separated SAT models")
    b.add_argument("--backend", choices=("internal", "external"), default="external")
    b.add_argument("--solver")
    b.add_argument("--timeout", type=float, default=3600.0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="results.csv")
    b.add_argument("--survival")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a coloring file against an instance")
    common(v)
    v.add_argument("--coloring", required=True)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (_Usage, ValueError) as exc:
        print(f"popcolor: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except _Parse as exc:
        print(f"popcolor: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
