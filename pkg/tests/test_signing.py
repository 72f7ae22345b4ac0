import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import instance, random_signing, signed_cycle
from oracles import cycle_word_product
from dp468.signing import (COLORS, ID, CyclicEdgeSet, ListSizeNot3, NotACycle, Perm, Signature,
                           SignedPlaneGraph, apply_switches, compose, cover_from_lists,
                           cycle_product, cycle_sign, is_proper, rename_coloring,
                           signed_from_cover, straightening_switches, switch, switch_many,
                           violations)

perms = st.sampled_from(list(Perm))


def test_compose_applies_right_argument_first():
    p, q = Perm.parse("231"), Perm.parse("213")
    assert all(compose(p, q)(c) == p(q(c)) for c in COLORS)


@given(perms, perms, perms)
def test_group_laws(p, q, r):
    assert (p * q) * r is p * (q * r)
    assert p * p.inverse is ID and ID * p is p


def test_inverse_pairing_of_stored_arcs():
    sig = Signature({(0, 1): Perm.parse("231")})
    assert sig(0, 1).word == "231"
    assert sig(1, 0).word == "312"
    assert Signature({(1, 0): Perm.parse("312")}) == sig


def test_parse_rejects_non_permutation():
    with pytest.raises(ValueError):
        Perm.parse("112")


def test_cycle_sign_examples():
    assert cycle_sign(signed_cycle(5), range(5)) == "POSITIVE"
    assert cycle_sign(signed_cycle(5, ["213"]), range(5)) == "NEGATIVE"
    # two transpositions that cancel
    assert cycle_sign(signed_cycle(5, ["213", "213"]), range(5)) == "POSITIVE"
    with pytest.raises(NotACycle):
        cycle_product(signed_cycle(5), [0, 1, 3])


@given(seed=st.integers(0, 10_000))
def test_cycle_product_matches_word_composition(seed):
    rng = random.Random(seed)
    sg = random_signing(signed_cycle(7), rng)
    assert cycle_product(sg, list(range(7))).word == cycle_word_product(sg, list(range(7)))


@given(seed=st.integers(0, 10_000), data=st.data())
def test_switching_preserves_cycle_signs_and_properness(seed, data):
    sg = random_signing(instance(16, seed), random.Random(seed))
    faces = [f.walk for f in sg.graph.faces if len(set(f.walk)) == f.length]
    rng = random.Random(seed + 1)
    taus = {v: rng.choice(list(Perm)) for v in range(sg.n)}
    sw = apply_switches(sg, taus)
    assert sw == switch_many(sg, taus)
    for walk in faces:
        assert cycle_sign(sg, walk) == cycle_sign(sw, walk)
    phi = {v: data.draw(st.sampled_from(COLORS)) for v in range(sg.n)}
    assert is_proper(sg, phi) == is_proper(sw, rename_coloring(phi, taus))


def test_switch_renames_precolour():
    sg = signed_cycle(5).with_precolor({0: 1})
    out = switch(sg, 0, Perm.parse("231"))
    assert out.precolor[0] == 2
    assert violations(out, out.precolor) == []


@given(seed=st.integers(0, 10_000))
def test_straightening_a_spanning_tree(seed):
    sg = random_signing(instance(18, seed), random.Random(seed))
    g = sg.graph
    order = [0]
    seen = {0}
    tree = []
    for v in order:
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                order.append(u)
                tree.append((v, u))
    out = apply_switches(sg, straightening_switches(sg, tree))
    assert all(out.sigma(u, v) is ID for u, v in tree)


def test_straightening_a_cycle_is_rejected():
    sg = signed_cycle(5)
    with pytest.raises(CyclicEdgeSet):
        straightening_switches(sg, [(i, (i + 1) % 5) for i in range(5)])


def test_list_cover_round_trip():
    sg = signed_cycle(5)
    lists = {v: (1, 2, 3) for v in range(5)}
    cover = cover_from_lists(sg.graph.edges(), lists)
    out = signed_from_cover(cover, sg.graph)
    assert all(out.sigma(u, v) is ID for u, v in sg.graph.edges())
    for cols in product(COLORS, repeat=5):
        phi = dict(enumerate(cols))
        labels = {v: (c, v) for v, c in phi.items()}
        assert cover.is_coloring(labels) == is_proper(out, phi)


def test_cover_needs_three_labels():
    sg = signed_cycle(5)
    cover = cover_from_lists(sg.graph.edges(), {v: (1, 2) for v in range(5)})
    with pytest.raises(ListSizeNot3):
        signed_from_cover(cover, sg.graph)


def test_bad_precolour_rejected():
    with pytest.raises(ValueError):
        SignedPlaneGraph(signed_cycle(5).graph, Signature(), {0: 4})
