"""Regenerate the benchmark graphs in ``instances/`` that can be rebuilt from public sources.

    python3 tools/make_instances.py [--miles PATH/knuth_miles.txt.gz] [--out instances]

Mycielski, queen, k-Insertions and k-FullIns graphs come from their
constructions.  ``jean`` is the Les Miserables co-appearance graph shipped
with networkx.  ``miles250`` joins two cities of Knuth's mileage table when
they are at most 250 miles apart; the table is found in the networkx source
distribution under ``examples/drawing/knuth_miles.txt.gz``.

Vertex labels follow the construction, not the original DIMACS files, so only
graph invariants (n, |E|, chromatic number) are comparable.
"""

from __future__ import annotations

import argparse
import gzip
import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from popcolor.generators import full_insertions, insertions, mycielski, queen  # noqa: E402
from popcolor.instance import Instance, write_dimacs  # noqa: E402


def jean() -> Instance:
    import networkx as nx

    g = nx.les_miserables_graph()
    label = {name: i for i, name in enumerate(g.nodes, 1)}
    return Instance.from_edges(len(label), [(label[a], label[b]) for a, b in g.edges], "jean")


def miles(path: Path, threshold: int) -> Instance:
    cities: list[str] = []
    dist: dict[tuple[int, int], int] = {}
    city_line = re.compile(r"^([^\[]+)\[")
    with gzip.open(path, "rt") as fh:
        for line in fh:
            if line.startswith("*"):
                continue
            m = city_line.match(line)
            if m:
                cities.insert(0, m.group(1))
                here = len(cities)  # labels in file order: the newest city gets the next label
                offset = 1
                continue
            for tok in line.split():
                # distances list the previously read cities, most recent first
                other = here - offset
                dist[(other, here)] = int(tok)
                offset += 1
    n = len(cities)
    edges = [(u, v) for (u, v), d in dist.items() if d <= threshold]
    return Instance.from_edges(n, edges, f"miles{threshold}")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "instances")
    ap.add_argument("--miles", type=Path, help="knuth_miles.txt.gz from the networkx sources")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    graphs = [mycielski(3), mycielski(4), queen(5), queen(6), queen(7),
              full_insertions(1, 3), insertions(2, 3)]
    try:
        graphs.append(jean())
    except ImportError:
        print("networkx not installed; skipping jean", file=sys.stderr)
    if args.miles:
        graphs.append(miles(args.miles, 250))
    for g in graphs:
        path = args.out / f"{g.name}.col"
        path.write_text(f"c {g.name}: rebuilt by tools/make_instances.py\n" + write_dimacs(g))
        print(f"{path}: n={g.n} m={g.m}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
