import logging
import random

import pytest
from hypothesis import given, settings, strategies as st

from popcolor.encode_gcp import (
    POP_BASE_GROUPS,
    decode,
    encode_ass_s,
    encode_pop_s,
    encode_poph_s,
    size_after_fixing,
)
from popcolor.generators import complete, cycle, random_graph
from popcolor.instance import Instance, violations
from popcolor.oracle import exact_gcp
from popcolor.solve import solve_internal

ENCODERS = [encode_ass_s, encode_pop_s, encode_poph_s]


def sat(enc):
    return solve_internal(enc.cnf).sat


def test_single_vertex_one_color():
    enc = encode_ass_s(Instance(1), 1)
    assert enc.cnf.clauses == [[enc.x(1, 1)]]
    r = solve_internal(enc.cnf)
    assert r.sat and decode(r.model, enc) == {1: 1}


@pytest.mark.parametrize("k,clauses,aux", [(2, 2, 1), (3, 5, 2), (5, 11, 4), (9, 23, 8)])
def test_sequential_block_size(k, clauses, aux):
    enc = encode_ass_s(Instance(1), k, symmetry=False)
    assert enc.cnf.count("amo") == clauses == 3 * k - 4
    assert sum(1 for key, _ in enc.cnf.registry.items() if key[0] == "s") == aux == k - 1


def test_sequential_block_empty_for_one_color():
    enc = encode_ass_s(Instance(1), 1)
    assert enc.cnf.count("amo") == 0


@pytest.mark.parametrize("encoder", ENCODERS)
def test_triangle(encoder):
    k3 = complete(3)
    assert not sat(encoder(k3, 2))
    assert sat(encoder(k3, 3))


def test_pop_s_base_counts_example():
    g = Instance.from_edges(2, [(1, 2)])
    enc = encode_pop_s(g, 3)
    assert enc.cnf.count(*POP_BASE_GROUPS) == 9
    assert enc.cnf.nvars == 6
    assert size_after_fixing(enc.cnf, ("top",), POP_BASE_GROUPS) == (4, 7)


def test_pop_s_edge_step_clause_shape():
    g = Instance.from_edges(2, [(1, 2)])
    enc = encode_pop_s(g, 3, symmetry=False)
    y = enc.y
    step = [c for c, grp in zip(enc.cnf.clauses, enc.cnf.groups) if grp == "edge-step"]
    assert step == [[-y(1, 1), y(1, 2), -y(2, 1), y(2, 2)], [-y(1, 2), y(1, 3), -y(2, 2), y(2, 3)]]


@pytest.mark.parametrize("encoder", ENCODERS)
def test_c5_three_colors(encoder):
    enc = encoder(cycle(5), 3)
    r = solve_internal(enc.cnf)
    assert r.sat
    c = decode(r.model, enc)
    assert violations(cycle(5), c) == [] and max(c.values()) == 3
    assert not sat(encoder(cycle(5), 2))


def test_poph_k4():
    assert sat(encode_poph_s(complete(4), 4))


def test_decode_ladder_examples():
    enc = encode_pop_s(Instance(1), 3, symmetry=False)
    y = enc.y
    assert decode({y(1, 1): False, y(1, 2): False, y(1, 3): False}, enc) == {1: 1}
    assert decode({y(1, 1): True, y(1, 2): True, y(1, 3): False}, enc) == {1: 3}


def test_decode_rejects_non_model():
    enc = encode_pop_s(Instance(1), 3, symmetry=False)
    y = enc.y
    with pytest.raises(ValueError):
        decode({y(1, 1): False, y(1, 2): True, y(1, 3): False}, enc)


def test_decode_rejects_two_colors():
    enc = encode_ass_s(Instance.from_edges(2, [(1, 2)]), 2, symmetry=False)
    model = {v: True for v in range(1, enc.cnf.nvars + 1)}
    with pytest.raises(ValueError):
        decode(model, enc)


def _graphs(seed, count, nmax):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng.randint(1, nmax), rng.choice([0.2, 0.5, 0.8]), rng)


@pytest.mark.parametrize("encoder", ENCODERS)
def test_equisatisfiable_with_oracle(encoder):
    for g in _graphs(11, 40, 8):
        chi, _ = exact_gcp(g)
        for k in range(1, g.n + 1):
            enc = encoder(g, k)
            r = solve_internal(enc.cnf)
            assert r.sat == (chi <= k), (g, k)
            if r.sat:
                c = decode(r.model, enc)
                assert violations(g, c) == [] and max(c.values()) <= k


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_models_respect_ladder_and_channel(seed, n):
    g = random_graph(n, 0.5, random.Random(seed))
    chi, _ = exact_gcp(g)
    for encoder in (encode_pop_s, encode_poph_s):
        enc = encoder(g, max(chi, 1))
        r = solve_internal(enc.cnf)
        assert r.sat
        m = r.model
        for v in g.vertices:
            ys = [m[enc.y(v, i)] for i in range(1, enc.k + 1)]
            assert ys == sorted(ys, reverse=True) and not ys[-1]
            if encoder is encode_poph_s:
                xs = [i for i in range(1, enc.k + 1) if m[enc.x(v, i)]]
                assert xs == [1 + sum(ys)]


def test_smallest_vertex_order_of_classes():
    for g in _graphs(5, 60, 8):
        chi, _ = exact_gcp(g)
        for k in range(chi, g.n + 1):
            enc = encode_pop_s(g, k)
            c = decode(solve_internal(enc.cnf).model, enc)
            pos = {v: p for p, v in enumerate(enc.vertex_order)}
            first: dict[int, int] = {}
            for v, col in c.items():
                first[col] = min(first.get(col, len(pos)), pos[v])
            assert sorted(first) == list(range(1, max(c.values()) + 1))
            assert all(first[i] > first[i - 1] for i in range(2, max(first) + 1))


def test_precolored_clique_keeps_symmetry():
    g = complete(4)
    pre = {3: 1, 1: 2, 4: 3}
    for encoder in ENCODERS:
        enc = encoder(g, 4, precolor=pre)
        assert enc.vertex_order[:3] == (3, 1, 4)
        assert enc.symmetry
        r = solve_internal(enc.cnf)
        c = decode(r.model, enc)
        assert all(c[v] == col for v, col in pre.items())


def test_non_clique_first_precolor_drops_symmetry(caplog):
    g = Instance.from_edges(3, [(1, 2)])
    with caplog.at_level(logging.WARNING):
        enc = encode_pop_s(g, 3, precolor={3: 3})
    assert not enc.symmetry
    assert "symmetry clauses dropped" in caplog.text
    assert not any(grp.startswith("sym") for grp in enc.cnf.groups)
    r = solve_internal(enc.cnf)
    assert decode(r.model, enc)[3] == 3


def test_bad_precolor():
    g = Instance.from_edges(2, [(1, 2)])
    with pytest.raises(ValueError):
        encode_pop_s(g, 2, precolor={1: 1, 2: 1})
    with pytest.raises(ValueError):
        encode_ass_s(g, 2, precolor={1: 3})


def test_rejects_weighted_instance():
    with pytest.raises(ValueError):
        encode_pop_s(Instance(2, {(1, 2): 2}), 3)


def test_degree_order():
    g = Instance.from_edges(4, [(4, 1), (4, 2), (4, 3), (1, 2)])
    enc = encode_ass_s(g, 3, order="degree")
    assert enc.vertex_order == (4, 1, 2, 3)
    assert sat(enc)


def test_symmetry_free_matches_symmetric():
    for g in _graphs(9, 40, 8):
        chi, _ = exact_gcp(g)
        for k in range(chi, g.n + 1):
            assert sat(encode_pop_s(g, k, symmetry=False))
            assert sat(encode_pop_s(g, k, symmetry=True))
