import json
import random

import pytest

from conftest import instance_dir, needs_solver
from popcolor.cnf import SAT, UNSAT
from popcolor.encode_bcp import ENCODERS_BCP
from popcolor.encode_gcp import ENCODERS_GCP
from popcolor.generators import complete, cycle, random_graph, random_weighted_graph
from popcolor.instance import Instance, read_instance
from popcolor.oracle import exact_bcp, exact_gcp
from popcolor.search import solve_bcp, solve_gcp, verify


def gcp_log_ok(rep):
    decisions = [d for _, d, _ in rep.per_k]
    ks = [k for k, _, _ in rep.per_k]
    return (decisions.count(SAT) == 1 and decisions[-1] == SAT and set(decisions[:-1]) <= {UNSAT}
            and ks == list(range(ks[0], ks[0] + len(ks))) and ks[-1] == rep.ub)


def bcp_log_ok(rep):
    decisions = [d for _, d, _ in rep.per_k]
    ks = [k for k, _, _ in rep.per_k]
    if not decisions:
        return rep.ub == 1 or rep.lb == rep.ub
    return (set(decisions[:-1]) <= {SAT} and decisions[-1] == UNSAT and ks[-1] == rep.lb - 1
            and all(a > b for a, b in zip(ks, ks[1:])))


def test_verify_examples():
    assert verify(complete(3), {1: 1, 2: 2, 3: 3}) == []
    assert verify(Instance(2, {(1, 2): 2}), {1: 1, 2: 2}, "bcp") == [(1, 2)]


def test_k5_single_sat_call():
    rep = solve_gcp(complete(5))
    assert rep.optimal and rep.ub == 5
    assert [d for _, d, _ in rep.per_k] == [SAT]


def test_c5_needs_one_unsat():
    rep = solve_gcp(cycle(5))
    assert rep.ub == 3 and [(k, d) for k, d, _ in rep.per_k] == [(2, UNSAT), (3, SAT)]


def test_single_edge_distance_three():
    g = Instance(2, {(1, 2): 3})
    rep = solve_bcp(g)
    assert rep.optimal and rep.ub == 4 and verify(g, rep.witness, "bcp") == []


def test_edgeless_bcp_has_no_solver_calls():
    rep = solve_bcp(Instance(4))
    assert (rep.ub, rep.optimal, rep.per_k) == (1, True, [])


def test_empty_graph():
    assert solve_gcp(Instance(0)).ub == 0 and solve_bcp(Instance(0)).ub == 0


def test_zero_budget_gives_bounds_only():
    g = cycle(7)
    rep = solve_gcp(g, budget=0)
    assert not rep.optimal and rep.lb <= 3 <= rep.ub and verify(g, rep.witness) == []
    rep = solve_bcp(Instance(3, {(1, 2): 2, (2, 3): 2, (1, 3): 2}), budget=0)
    assert not rep.optimal and rep.lb <= 5 <= rep.ub and rep.per_k == []


def test_weighted_input_rejected_for_gcp():
    with pytest.raises(ValueError):
        solve_gcp(Instance(2, {(1, 2): 2}))
    with pytest.raises(ValueError):
        solve_gcp(complete(2), kind="pop-s-b")


def test_report_json():
    rep = solve_gcp(cycle(5))
    out = json.loads(json.dumps(rep.to_json()))
    assert out["schema"] == 1 and out["ub"] == 3 and out["per_k"][-1]["result"] == SAT
    assert set(out["witness"]) == {"1", "2", "3", "4", "5"}


@pytest.mark.parametrize("kind", sorted(ENCODERS_GCP))
def test_gcp_matches_oracle(kind):
    rng = random.Random(21)
    for _ in range(40):
        g = random_graph(rng.randint(1, 9), rng.choice((0.2, 0.5, 0.8)), rng)
        rep = solve_gcp(g, kind, seed=rng.randint(0, 99))
        assert rep.optimal and rep.ub == exact_gcp(g)[0]
        assert verify(g, rep.witness) == [] and gcp_log_ok(rep)


@pytest.mark.parametrize("kind", sorted(ENCODERS_BCP))
def test_bcp_matches_oracle(kind):
    rng = random.Random(22)
    for _ in range(40):
        g = random_weighted_graph(rng.randint(1, 7), 0.5, 4, rng)
        rep = solve_bcp(g, kind)
        assert rep.optimal and rep.ub == exact_bcp(g)[0]
        assert verify(g, rep.witness, "bcp") == [] and bcp_log_ok(rep)


@needs_solver
@pytest.mark.external
def test_external_backend_matches_oracle():
    rng = random.Random(23)
    for _ in range(15):
        g = random_graph(rng.randint(1, 9), 0.5, rng)
        wg = random_weighted_graph(rng.randint(1, 7), 0.5, 4, rng)
        for kind in ENCODERS_GCP:
            assert solve_gcp(g, kind, backend="external").ub == exact_gcp(g)[0]
        for kind in ENCODERS_BCP:
            assert solve_bcp(wg, kind, backend="external").ub == exact_bcp(wg)[0]


def test_myciel4_internal():
    path = instance_dir() / "myciel4.col"
    if not path.exists():
        pytest.fail(f"instance file not found: {path}")
    rep = solve_gcp(read_instance(path), "pop-s")
    assert rep.optimal and rep.ub == 5 and gcp_log_ok(rep)


@needs_solver
@pytest.mark.external
@pytest.mark.slow
def test_jean_external():
    path = instance_dir() / "jean.col"
    if not path.exists():
        pytest.fail(f"instance file not found: {path}")
    rep = solve_gcp(read_instance(path), "pop-s", backend="external", budget=60)
    assert rep.optimal and rep.ub == 10
