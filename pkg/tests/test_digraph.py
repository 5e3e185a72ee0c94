from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle_directed_supports, oracle_non_even, random_digraph
from noneven.digraph import (
    ContractEdges,
    DeleteDeletable,
    Digraph,
    DigraphBoundExceeded,
    DropIsolated,
    NotDeletable,
    apply_cut_minor,
    bond_matroid,
    build_bicycle,
    build_D,
    build_one_direction,
    d_family_clause,
    d_family_has_odd_dijoin,
    d_family_odd_dijoin_construct,
    degrees_in,
    directed_bonds,
    graphic_matroid,
    is_deletable,
    is_minimal_obstruction,
    is_odd_dijoin,
    odd_dijoin,
    one_step_cut_minors,
    parse_digraph,
    t_join,
    two_layer_has_odd_dijoin,
)
from noneven.evenness import non_even_bruteforce
from noneven.oriented_matroid import circuits


def oracle_directed_bonds(d: Digraph) -> set[frozenset]:
    """Minimal nonempty one-way cuts, by direct enumeration of vertex subsets."""
    cuts = set()
    vs = d.vertices
    for k in range(1, len(vs)):
        for side in itertools.combinations(vs, k):
            side = set(side)
            out = {e.id for e in d.edges if e.tail in side and e.head not in side}
            back = {e.id for e in d.edges if e.head in side and e.tail not in side}
            if out and not back:
                cuts.add(frozenset(out))
    return {c for c in cuts if not any(o < c for o in cuts)}


# ---------------------------------------------------------------------------
# parsing and construction


def test_parse_roundtrip():
    text = "digraph\n# comment\nvertex z\na b x\nb c\n"
    d = parse_digraph(text)
    assert d.vertices == ("z", "a", "b", "c")
    assert d.edge_ids == ("x", "e2")
    assert parse_digraph(d.to_text()) == d
    with pytest.raises(ValueError):
        parse_digraph("a b\n")
    with pytest.raises(ValueError):
        parse_digraph("digraph\na b c d\n")


def test_builders():
    assert len(build_D(1, 1, 1).edges) == 2
    bic = build_bicycle(3)
    assert len(bic.edges) == 6
    k23 = build_one_direction(2, 3)
    assert len(k23.edges) == 6 and len(k23.vertices) == 5


def test_matroid_builders():
    tri = graphic_matroid(Digraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")]))
    assert [c.support for c in circuits(tri) if not c.negative or not c.positive] == [set(tri.elements)]
    loop = graphic_matroid(Digraph.from_edges([("a", "a")]))
    assert loop.is_loop("e1")
    k23 = build_one_direction(2, 3)
    b = bond_matroid(k23)
    dirs = {frozenset(c.support) for c in circuits(b) if not c.negative or not c.positive}
    assert dirs == set(directed_bonds(k23))


# ---------------------------------------------------------------------------
# bonds and dijoins


def test_bond_examples():
    assert directed_bonds(Digraph.from_edges([("a", "b", "x")])) == [frozenset({"x"})]
    k22 = build_one_direction(2, 2)
    stars = {frozenset(e.id for e in k22.edges if v in (e.tail, e.head)) for v in k22.vertices}
    assert set(directed_bonds(k22)) == stars
    assert directed_bonds(Digraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")])) == []


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_bonds_match_oracle_and_bond_matroid(seed):
    d = random_digraph(random.Random(seed), max_vertices=6, max_edges=8)
    bonds = set(directed_bonds(d))
    assert bonds == oracle_directed_bonds(d)
    b = bond_matroid(d)
    assert bonds == {frozenset(b.elements[i] for i in s) for s in oracle_directed_supports(b)}


def test_odd_dijoin_examples():
    assert odd_dijoin(build_one_direction(2, 3)) is None
    j = odd_dijoin(build_one_direction(2, 2))
    assert j is not None and is_odd_dijoin(build_one_direction(2, 2), j)
    assert odd_dijoin(Digraph.from_edges([("a", "b", "x")])) == {"x"}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_odd_dijoin_matches_bond_matroid_noneven(seed):
    d = random_digraph(random.Random(seed), max_vertices=6, max_edges=8)
    j = odd_dijoin(d)
    b = bond_matroid(d)
    assert (j is not None) == (non_even_bruteforce(b) is not None) == oracle_non_even(b)
    if j is not None:
        assert is_odd_dijoin(d, j)


def test_vertex_bound():
    d = Digraph.from_edges([(f"v{i}", f"v{i + 1}") for i in range(5)])
    with pytest.raises(DigraphBoundExceeded):
        odd_dijoin(d, bound=4)


# ---------------------------------------------------------------------------
# cut minors


def test_cut_minor_examples():
    tri = Digraph.from_edges([("a", "b", "ab"), ("b", "c", "bc"), ("c", "a", "ca")])
    out, vmap, emap = apply_cut_minor(tri, [ContractEdges(frozenset(tri.edge_ids))])
    assert out.vertices == ("a",) and out.edges == () and emap == {}
    assert set(vmap.values()) == {"a"}
    trans = Digraph.from_edges([("a", "b", "ab"), ("b", "c", "bc"), ("a", "c", "ac")])
    assert is_deletable(trans, "ac") and not is_deletable(trans, "ab")
    out, _, emap = apply_cut_minor(trans, [DeleteDeletable("ac")])
    assert out.edge_ids == ("ab", "bc") and "ac" not in emap
    assert apply_cut_minor(trans, [])[0] == trans
    with pytest.raises(NotDeletable):
        apply_cut_minor(trans, [DeleteDeletable("ab")])
    iso = Digraph.from_edges([("a", "b")], ["z"])
    assert apply_cut_minor(iso, [DropIsolated("z")])[0].vertices == ("a", "b")
    with pytest.raises(ValueError):
        apply_cut_minor(iso, [DropIsolated("a")])


def test_contraction_drops_created_loops():
    digon = Digraph.from_edges([("a", "b", "x"), ("b", "a", "y"), ("b", "c", "z")])
    out, _, emap = apply_cut_minor(digon, [ContractEdges(frozenset({"x"}))])
    assert out.edge_ids == ("z",) and set(emap) == {"z"}


def small_digraphs(max_edges: int):
    rng = random.Random(7)
    for _ in range(150):
        yield random_digraph(rng, max_vertices=5, max_edges=max_edges)


def test_cut_minor_closure():
    checked = 0
    for d in small_digraphs(6):
        if odd_dijoin(d) is None:
            continue
        for _, minor in one_step_cut_minors(d):
            assert odd_dijoin(minor) is not None
            checked += 1
    assert checked > 100


def test_minimal_obstructions():
    assert is_minimal_obstruction(build_D(1, 2, 2))
    assert is_minimal_obstruction(build_one_direction(2, 3))
    assert not is_minimal_obstruction(build_one_direction(2, 2))
    with pytest.raises(DigraphBoundExceeded):
        is_minimal_obstruction(build_one_direction(3, 5))


# ---------------------------------------------------------------------------
# T-joins and the layered family


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_t_join_degrees(seed, data):
    d = random_digraph(random.Random(seed), max_vertices=6, max_edges=9)
    t = set(data.draw(st.lists(st.sampled_from(d.vertices), max_size=len(d.vertices), unique=True)))
    j = t_join(d, t)
    # solvable iff every weak component holds an even number of t vertices
    comp = {v: v for v in d.vertices}

    def find(v):
        while comp[v] != v:
            v = comp[v]
        return v

    for e in d.edges:
        comp[find(e.tail)] = find(e.head)
    counts: dict = {}
    for v in t:
        counts[find(v)] = counts.get(find(v), 0) + 1
    solvable = all(c % 2 == 0 for c in counts.values())
    assert (j is not None) == solvable
    if j is not None:
        deg = degrees_in(d, j)
        assert {v for v, k in deg.items() if k % 2} == t


def test_two_layer_closed_form():
    for a in range(0, 6):
        for b in range(0, 6):
            d = build_one_direction(a, b)
            assert two_layer_has_odd_dijoin(a, b) == (odd_dijoin(d) is not None), (a, b)


def test_d_family_against_brute_force():
    for n1, n2, n3 in itertools.product(range(5), repeat=3):
        d = build_D(n1, n2, n3)
        brute = odd_dijoin(d) is not None
        assert d_family_has_odd_dijoin(n1, n2, n3) == brute, (n1, n2, n3)
        j, _ = d_family_odd_dijoin_construct(n1, n2, n3)
        assert (j is not None) == brute
        if j is not None:
            assert is_odd_dijoin(d, j)


def test_d_family_examples():
    assert d_family_has_odd_dijoin(3, 2, 1)
    assert not d_family_has_odd_dijoin(2, 2, 3)
    assert not d_family_has_odd_dijoin(2, 3, 2)
    assert d_family_has_odd_dijoin(1, 3, 1)
    assert d_family_clause(4, 1, 3) == "i"
    assert d_family_clause(3, 2, 1) == "ii"
    assert d_family_clause(1, 3, 1) == "iii"
    j, method = d_family_odd_dijoin_construct(1, 1, 1)
    assert j == set(build_D(1, 1, 1).edge_ids) and method == "closed-form"
    j, method = d_family_odd_dijoin_construct(1, 3, 1)
    assert method == "t-join" and is_odd_dijoin(build_D(1, 3, 1), j)
    assert d_family_odd_dijoin_construct(2, 3, 2)[0] is None
