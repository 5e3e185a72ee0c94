from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle_circuits, oracle_non_even, random_digraph, random_hosts
from noneven.digraph import Digraph, bond_matroid, build_bicycle, build_D, build_one_direction, graphic_matroid, odd_dijoin
from noneven.evenness import non_even_bruteforce
from noneven.exact_linalg import check_tu
from noneven.oriented_matroid import is_isomorphic, reorient
from noneven.r10_verifier import (
    R10Report,
    _check_chunk,
    forbidden_targets,
    forbidden_witness,
    has_forbidden_cographic_gbminor,
    r10_orientation,
    r10_reference,
)
from test_oriented_matroid import naive_gb_minors, signed_family

K23 = bond_matroid(build_one_direction(2, 3))


def test_reference():
    r = r10_reference()
    assert len(r) == 10 and r.rank == 5
    assert check_tu(r.rep, 5).verified
    circ = oracle_circuits(r.rep)
    assert len(circ) == 2 * 30
    sizes = sorted(len(p | q) for p, q in circ)
    assert sizes.count(4) == 30 and sizes.count(6) == 30
    # self-dual up to isomorphism
    assert len(r.cocircuit_bits()) == 30


def test_targets_for_ten_elements():
    got = {(t.m, t.n, t.size, t.rank) for t in forbidden_targets(10)}
    assert got == {(2, 3, 6, 2), (2, 5, 10, 4)}


def test_forbidden_examples():
    assert has_forbidden_cographic_gbminor(K23)
    assert not has_forbidden_cographic_gbminor(bond_matroid(build_one_direction(2, 2)))
    # M(bicycle C3) is isomorphic to M*(K_{3,2})
    assert has_forbidden_cographic_gbminor(graphic_matroid(build_bicycle(3)))
    w = forbidden_witness(K23)
    assert w == {"deleted": [], "contracted": [], "target": [2, 3]}
    with pytest.raises(ValueError):
        has_forbidden_cographic_gbminor(graphic_matroid(build_bicycle(7)))


def naive_has_forbidden(m) -> bool:
    return any(
        len(minor) == 6 and is_isomorphic(minor, K23) for minor in naive_gb_minors(m, 6).values()
    )


def perturbed_obstruction(rng: random.Random):
    """K_{2,3} or the 3-bicycle plus up to two random edges, randomly reoriented."""
    base = build_one_direction(2, 3) if rng.random() < 0.5 else build_bicycle(3)
    vs = list(base.vertices) + ["x"]
    extra = [(rng.choice(vs), rng.choice(vs), f"n{k}") for k in range(rng.randint(0, 2))]
    d = Digraph.from_edges([(e.tail, e.head, e.id) for e in base.edges] + extra, base.vertices)
    m = bond_matroid(d) if base.vertices[0] == "a1" else graphic_matroid(d)
    flips = [e for e in m.elements if rng.random() < 0.15]
    return reorient(m, flips)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_forbidden_search_matches_naive_search(seed):
    rng = random.Random(seed)
    d = random_digraph(rng, max_vertices=5, max_edges=8)
    while len(d.edges) < 6:
        d = random_digraph(rng, max_vertices=5, max_edges=8)
    m = bond_matroid(d)
    assert has_forbidden_cographic_gbminor(m) == naive_has_forbidden(m)


def test_forbidden_search_matches_naive_search_near_obstructions():
    rng = random.Random(5)
    outcomes = []
    for _ in range(40):
        m = perturbed_obstruction(rng)
        got = has_forbidden_cographic_gbminor(m)
        assert got == naive_has_forbidden(m)
        outcomes.append(got)
    # both answers must actually occur for the comparison to mean anything
    assert any(outcomes) and not all(outcomes)


def test_forbidden_implies_even_on_small_hosts():
    # a non-even host cannot contain an even GB-minor; M*(K_{2,3}) is even
    for m in random_hosts(11, 40, max_elements=8, min_elements=6):
        if has_forbidden_cographic_gbminor(m):
            assert non_even_bruteforce(m) is None


def test_orientation_sample_against_oracles():
    ref = r10_reference()
    rng = random.Random(3)
    signs = rng.sample(range(1024), 24)
    rows = _check_chunk((signs, ref.circuit_bits(), ref.cocircuit_bits(), ref.rank, len(ref)))
    for s, forbidden, non_even in rows:
        o = r10_orientation([str(i + 1) for i in range(10) if s >> i & 1])
        assert non_even == oracle_non_even(o)
        assert forbidden == has_forbidden_cographic_gbminor(o)
        if not forbidden:
            assert non_even


def test_orientation_helpers():
    r = r10_reference()
    assert r10_orientation([]).rep == r.rep
    flipped = r10_orientation(r.elements)
    assert signed_family(flipped) == signed_family(r)
    assert R10Report().to_dict()["counterexamples"] == []


def test_dijoin_criterion_on_five_vertex_digraphs():
    # on four vertices every digraph has an odd dijoin, so check five as well,
    # starting from small obstructions and their relatives plus random edges
    rng = random.Random(55)
    bases = [build_one_direction(2, 3), build_D(1, 2, 2), build_D(2, 2, 1), build_D(1, 2, 1), build_one_direction(2, 2)]
    samples = list(bases)
    while len(samples) < 80:
        base = rng.choice(bases)
        vs = list(base.vertices) + ["z"]
        extra = [(rng.choice(vs), rng.choice(vs), f"n{k}") for k in range(rng.randint(1, 3))]
        samples.append(Digraph.from_edges([(e.tail, e.head, e.id) for e in base.edges] + extra, base.vertices))
    outcomes = []
    for d in samples:
        has = odd_dijoin(d) is not None
        assert has != has_forbidden_cographic_gbminor(bond_matroid(d)), d.to_text()
        outcomes.append(has)
    assert sum(outcomes) >= 10 and len(outcomes) - sum(outcomes) >= 10
