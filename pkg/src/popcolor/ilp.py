"""ILP models for plain and bandwidth coloring, emitted as CPLEX-style LP text.

Six models are available.  ``ass-i`` and ``ass-i-b`` use assignment variables
``x_v_i``; ``pop-i`` and ``pop-i-b`` use ordering variables ``y_v_i``; the
hybrids ``poph-i`` and ``poph-i-b`` carry both and tie them together with
channeling equations.  The POP-family objective counts the colors below an
extra isolated vertex ``q`` that is forced above every real vertex.

Models are only built and counted here, never solved.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .instance import Instance

KINDS = ("ass-i", "pop-i", "poph-i", "ass-i-b", "pop-i-b", "poph-i-b")
Term = tuple[int, str]


@dataclass
class Row:
    group: str
    terms: list[Term]
    sense: str  # "<=", ">=" or "="
    rhs: int

    def holds(self, values: Mapping[str, float]) -> bool:
        lhs = sum(c * values.get(v, 0) for c, v in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    kind: str
    H: int
    variables: list[str] = field(default_factory=list)
    binaries: list[str] = field(default_factory=list)
    objective: list[Term] = field(default_factory=list)
    objective_constant: int = 0
    rows: list[Row] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def group_counts(self) -> Counter[str]:
        return Counter(r.group for r in self.rows)

    def count(self, *groups: str) -> int:
        counts = self.group_counts()
        return sum(counts[g] for g in groups)

    def evaluate(self, values: Mapping[str, float]) -> list[Row]:
        """Rows violated by ``values`` (missing variables read as 0)."""
        return [r for r in self.rows if not r.holds(values)]

    def objective_value(self, values: Mapping[str, float]) -> float:
        return self.objective_constant + sum(c * values.get(v, 0) for c, v in self.objective)


def X(v: int | str, i: int) -> str:
    return f"x_{v}_{i}"


def Y(v: int | str, i: int) -> str:
    return f"y_{v}_{i}"


def W(i: int) -> str:
    return f"w_{i}"


ZMAX = "zmax"


class _Builder:
    def __init__(self, kind: str, H: int) -> None:
        self.model = IlpModel(kind, H)
        self._seen: set[str] = set()

    def var(self, name: str, binary: bool = True) -> str:
        if name not in self._seen:
            self._seen.add(name)
            self.model.variables.append(name)
            if binary:
                self.model.binaries.append(name)
        return name

    def row(self, group: str, terms: list[Term], sense: str, rhs: int) -> None:
        self.model.rows.append(Row(group, terms, sense, rhs))


def _y_term(v: int, j: int, H: int) -> str | int:
    """Variable name of ``y_v_j``, or its constant value outside ``1..H``."""
    if j < 1:
        return 1
    if j > H:
        return 0
    return Y(v, j)


def _banded(b: _Builder, group: str, terms: list[tuple[int, str | int]], rhs: int) -> None:
    # move constants to the right-hand side
    live: list[Term] = []
    for c, t in terms:
        if isinstance(t, int):
            rhs -= c * t
        else:
            live.append((c, t))
    if live:
        b.row(group, live, "<=", rhs)
    elif rhs < 0:
        raise AssertionError("constant row is infeasible")


def _x_vars(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        for i in range(1, H + 1):
            b.var(X(v, i))


def _y_vars(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        for i in range(1, H + 1):
            b.var(Y(v, i))
    for i in range(1, H + 1):
        b.var(Y("q", i))


def _exactly_one(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        b.row("one-color", [(1, X(v, i)) for i in range(1, H + 1)], "=", 1)


def _ladder(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        b.row("top", [(1, Y(v, H))], "=", 0)
    for v in inst.vertices:
        for i in range(1, H):
            b.row("ladder", [(1, Y(v, i)), (-1, Y(v, i + 1))], ">=", 0)


def _dummy_on_top(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        for i in range(1, H):
            b.row("dummy-top", [(1, Y("q", i)), (-1, Y(v, i))], ">=", 0)
    b.model.objective = [(1, Y("q", i)) for i in range(1, H + 1)]
    b.model.objective_constant = 1


def _channel(b: _Builder, inst: Instance, H: int) -> None:
    for v in inst.vertices:
        b.row("channel", [(1, X(v, 1)), (1, Y(v, 1))], "=", 1)
        for i in range(2, H + 1):
            b.row("channel", [(1, X(v, i)), (-1, Y(v, i - 1)), (1, Y(v, i))], "=", 0)


def _sym_diag_y(b: _Builder, inst: Instance, H: int) -> None:
    for v in range(1, min(H, inst.n) + 1):
        b.row("sym-diag", [(1, Y(v, v))], "=", 0)


def _sym_earlier_x(b: _Builder, inst: Instance, H: int) -> None:
    for v in range(2, inst.n):
        for i in range(2, min(H, v) + 1):
            terms = [(1, X(v, i))] + [(-1, X(u, i - 1)) for u in range(i - 1, v)]
            b.row("sym-earlier", terms, "<=", 0)


def _ass_i(inst: Instance, H: int) -> IlpModel:
    b = _Builder("ass-i", H)
    _x_vars(b, inst, H)
    for i in range(1, H + 1):
        b.var(W(i))
    b.model.objective = [(1, W(i)) for i in range(1, H + 1)]
    _exactly_one(b, inst, H)
    for u, v in inst.edges:
        for i in range(1, H + 1):
            b.row("edge", [(1, X(u, i)), (1, X(v, i)), (-1, W(i))], "<=", 0)
    for i in range(1, H + 1):
        b.row("used-link", [(1, W(i))] + [(-1, X(v, i)) for v in inst.vertices], "<=", 0)
    for i in range(2, H + 1):
        b.row("used-order", [(1, W(i)), (-1, W(i - 1))], "<=", 0)
    for v in range(1, min(H, inst.n) + 1):
        for i in range(v + 1, H + 1):
            b.row("sym-above", [(1, X(v, i))], "=", 0)
    _sym_earlier_x(b, inst, H)
    return b.model


def _ass_i_b(inst: Instance, H: int) -> IlpModel:
    b = _Builder("ass-i-b", H)
    _x_vars(b, inst, H)
    b.var(ZMAX, binary=False)
    b.model.objective = [(1, ZMAX)]
    _exactly_one(b, inst, H)
    for (u, v), d in inst.dist.items():
        for i in range(1, H + 1):
            for j in range(max(1, i - d + 1), min(H, i + d - 1) + 1):
                b.row("edge-pairs", [(1, X(u, i)), (1, X(v, j))], "<=", 1)
    for v in inst.vertices:
        for i in range(1, H + 1):
            b.row("zmax", [(1, ZMAX), (-i, X(v, i))], ">=", 0)
    return b.model


def _pop_i(inst: Instance, H: int) -> IlpModel:
    b = _Builder("pop-i", H)
    _y_vars(b, inst, H)
    _ladder(b, inst, H)
    for u, v in inst.edges:
        b.row("edge-first", [(1, Y(u, 1)), (1, Y(v, 1))], ">=", 1)
    for u, v in inst.edges:
        for i in range(2, H + 1):
            b.row("edge-step", [(1, Y(u, i - 1)), (-1, Y(u, i)), (1, Y(v, i - 1)), (-1, Y(v, i))], "<=", 1)
    _dummy_on_top(b, inst, H)
    _sym_diag_y(b, inst, H)
    # y_v_i <= sum over earlier u of (y_u_{i-1} - y_u_i), kept in its summed form
    for v in range(2, inst.n):
        for i in range(2, min(H, v) + 1):
            terms: list[Term] = [(1, Y(v, i))]
            for u in range(i - 1, v):
                terms += [(-1, Y(u, i - 1)), (1, Y(u, i))]
            b.row("sym-ladder", terms, "<=", 0)
    return b.model


def _poph_i(inst: Instance, H: int) -> IlpModel:
    b = _Builder("poph-i", H)
    _y_vars(b, inst, H)
    _x_vars(b, inst, H)
    _ladder(b, inst, H)
    _dummy_on_top(b, inst, H)
    _channel(b, inst, H)
    for u, v in inst.edges:
        for i in range(1, H + 1):
            b.row("edge", [(1, X(u, i)), (1, X(v, i))], "<=", 1)
    _sym_diag_y(b, inst, H)
    _sym_earlier_x(b, inst, H)
    return b.model


def _pop_i_b(inst: Instance, H: int) -> IlpModel:
    b = _Builder("pop-i-b", H)
    _y_vars(b, inst, H)
    _ladder(b, inst, H)
    for (u, v), d in inst.dist.items():
        for i in range(1, H + 1):
            _banded(b, "edge-band", [
                (1, _y_term(u, i - 1, H)), (-1, _y_term(u, i, H)),
                (1, _y_term(v, i - d, H)), (-1, _y_term(v, i + d - 1, H)),
            ], 1)
    _dummy_on_top(b, inst, H)
    return b.model


def _poph_i_b(inst: Instance, H: int) -> IlpModel:
    b = _Builder("poph-i-b", H)
    _y_vars(b, inst, H)
    _x_vars(b, inst, H)
    _ladder(b, inst, H)
    _dummy_on_top(b, inst, H)
    _channel(b, inst, H)
    for (u, v), d in inst.dist.items():
        for i in range(1, H + 1):
            _banded(b, "edge-band-x", [
                (1, X(u, i)), (1, _y_term(v, i - d, H)), (-1, _y_term(v, i + d - 1, H)),
            ], 1)
    return b.model


_BUILDERS = {"ass-i": _ass_i, "pop-i": _pop_i, "poph-i": _poph_i,
             "ass-i-b": _ass_i_b, "pop-i-b": _pop_i_b, "poph-i-b": _poph_i_b}


def build_model(kind: str, inst: Instance, H: int) -> IlpModel:
    if kind not in _BUILDERS:
        raise ValueError(f"unknown ILP model {kind!r}")
    if H < 1:
        raise ValueError("H must be >= 1")
    if not kind.endswith("-b") and not inst.is_gcp:
        raise ValueError(f"{kind} is a plain coloring model but the instance has edge distances > 1")
    return _BUILDERS[kind](inst, H)


# -- LP text --------------------------------------------------------------------

def _fmt_terms(terms: list[Term], first: bool = True) -> Iterator[str]:
    for c, v in terms:
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        if first:
            yield f"{'-' if c < 0 else ''}{mag}{v}"
        else:
            yield f"{'-' if c < 0 else '+'} {mag}{v}"
        first = False


def _wrap(prefix: str, parts: list[str], width: int = 100) -> list[str]:
    lines, cur = [], prefix
    for p in parts:
        if len(cur) + len(p) + 1 > width and cur.strip():
            lines.append(cur)
            cur = "   "
        cur = f"{cur} {p}"
    lines.append(cur)
    return lines


def render_lp(model: IlpModel) -> str:
    out = [f"\\ {model.kind} model, H = {model.H}", "Minimize"]
    obj = []
    if model.objective_constant:
        obj.append(str(model.objective_constant))
    obj.extend(_fmt_terms(model.objective, first=not obj))
    out.extend(_wrap(" obj:", obj))
    out.append("Subject To")
    for idx, r in enumerate(model.rows, 1):
        parts = list(_fmt_terms(r.terms)) + [r.sense, str(r.rhs)]
        out.extend(_wrap(f" {r.group.replace('-', '_')}_{idx}:", parts))
    general = [v for v in model.variables if v not in set(model.binaries)]
    if general:
        out.append("Bounds")
        out.extend(f" {v} >= 0" for v in general)
    out.append("Binaries")
    out.extend(_wrap("", model.binaries))
    out.append("End")
    return "\n".join(line.rstrip() for line in out) + "\n"


def emit_model(kind: str, inst: Instance, H: int) -> str:
    return render_lp(build_model(kind, inst, H))


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*([A-Za-z_][\w.]*)|([+-]?)\s*(\d+)")


def parse_lp(text: str) -> IlpModel:
    """Re-read LP text produced by :func:`render_lp`.

    Handles the subset the renderer emits: one objective, named rows that may
    wrap across lines, an optional bounds section and a binaries list.
    """
    section = None
    kind, H = "", 0
    stmts: dict[str, list[str]] = {"obj": [], "rows": [], "bounds": [], "bin": []}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("\\"):
            m = re.match(r"\\\s*(\S+) model, H = (\d+)", line)
            if m:
                kind, H = m.group(1), int(m.group(2))
            continue
        low = line.lower()
        if low in ("minimize", "maximize"):
            section = "obj"
            continue
        if low in ("subject to", "st", "s.t."):
            section = "rows"
            continue
        if low == "bounds":
            section = "bounds"
            continue
        if low in ("binaries", "binary", "bin"):
            section = "bin"
            continue
        if low == "end":
            section = None
            continue
        if not line:
            continue
        if section is None:
            raise ValueError(f"text outside any section: {line!r}")
        target = stmts[section]
        if section in ("obj", "rows") and raw.startswith("    ") and target:
            target[-1] += " " + line
        else:
            target.append(line)

    model = IlpModel(kind, H)

    def terms_of(expr: str) -> tuple[list[Term], int]:
        terms: list[Term] = []
        const = 0
        pos = 0
        expr = expr.strip()
        while pos < len(expr):
            m = _TERM.match(expr, pos)
            if not m:
                raise ValueError(f"cannot parse expression near {expr[pos:]!r}")
            if m.group(3):
                c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
                terms.append((c, m.group(3)))
            else:
                const += int(m.group(5)) * (-1 if m.group(4) == "-" else 1)
            pos = m.end()
            while pos < len(expr) and expr[pos] == " ":
                pos += 1
        return terms, const

    for s in stmts["obj"]:
        _, _, expr = s.partition(":")
        model.objective, model.objective_constant = terms_of(expr)
    seen: dict[str, None] = {}
    for s in stmts["rows"]:
        name, _, body = s.partition(":")
        m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+)\s*$", body)
        if not m:
            raise ValueError(f"malformed row {s!r}")
        terms, const = terms_of(m.group(1))
        if const:
            raise ValueError(f"constant on the left of row {name!r}")
        group = name.strip().rsplit("_", 1)[0].replace("_", "-")
        model.rows.append(Row(group, terms, m.group(2), int(m.group(3))))
        for _, v in terms:
            seen.setdefault(v)
    for c, v in model.objective:
        seen.setdefault(v)
    for s in stmts["bin"]:
        for v in s.split():
            model.binaries.append(v)
            seen.setdefault(v)
    for s in stmts["bounds"]:
        seen.setdefault(s.split()[0])
    model.variables = list(seen)
    return model


# -- sizes ---------------------------------------------------------------------

def count_model_size(kind: str, inst: Instance, H: int) -> tuple[int, int]:
    m = build_model(kind, inst, H)
    return m.nvars, m.nrows


def count_ass_i_b_closed_form(inst: Instance, H: int) -> tuple[int, int]:
    """Closed-form size of the assignment bandwidth model.

    ``H*|V| + 1`` variables and ``(H+1)|V| + H|E|(2*dbar - 1) - sum(d^2 - d)``
    rows, evaluated exactly (``H|E|*dbar`` is just ``H * sum(d)``).
    """
    n, m = inst.n, inst.m
    total_d = sum(inst.dist.values())
    rows = (H + 1) * n + H * (2 * total_d - m) - sum(d * d - d for d in inst.dist.values())
    return H * n + 1, rows
