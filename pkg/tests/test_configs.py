import random

import pytest
from hypothesis import given, strategies as st

from conftest import instance
from oracles import naive_matches
from dp468.configs.catalog import CatalogSyntaxError, UnknownEntry, default_catalog, parse
from dp468.configs.match import check_mapping, match, orbits
from dp468.configs.pattern import (BadK, ExtensionPreconditionFailed, build_i, build_j,
                                   extend_at_i, extend_at_j)
from dp468.generate import realize
from dp468.signing import Perm, apply_switches

CAT = default_catalog()


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_chain_sizes(k):
    assert build_i(k).counts() == (2 * k + 1, 3 * k)
    # counted from the construction: k+1 path vertices and four per hanging triangle
    assert build_j(k).counts() == (5 * k + 1, 7 * k)


def test_bad_k():
    with pytest.raises(BadK):
        build_i(0)
    with pytest.raises(BadK):
        build_j(0)


def test_extension_preconditions():
    b1 = CAT.instantiate("b-1")
    with pytest.raises(ExtensionPreconditionFailed):
        extend_at_i(b1, "w", 1)          # w has no free slot
    with pytest.raises(ExtensionPreconditionFailed):
        extend_at_j(b1, "u", 1)          # u is a 3-vertex
    ext = extend_at_i(b1, "y", 2)
    assert ext.vertices["y"].theta == 4
    assert {"y.u1", "y.w1", "y.u2", "y.w2"} <= set(ext.vertices)
    assert set(ext.script.remove) >= {"y.u1", "y.w1"}


def test_catalogue_has_every_family():
    names = set(CAT.names())
    for fam in "abcdefgh":
        assert any(n.startswith(fam + "-") for n in names)
    assert len(names) == 23


def test_catalogue_round_trip():
    again = parse(CAT.emit())
    assert again.names() == CAT.names()
    for name in CAT.names():
        for (v1, p1), (v2, p2) in zip(CAT.instances(name, 2), again.instances(name, 2)):
            assert v1 == v2 and p1.counts() == p2.counts() and p1.script == p2.script


@pytest.mark.parametrize("text", [
    "entry x\nvertex a 3\n",                 # missing end
    "entry x\nfoo a\nend\n",                  # unknown directive
    "entry x\nvertex a 3\nedge a b\nend\n",   # unknown vertex
])
def test_catalogue_syntax_errors(text):
    with pytest.raises((CatalogSyntaxError, ValueError)):
        cat = parse(text)
        for name in cat.names():
            list(cat.instances(name, 1))


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        CAT["z-9"]


def test_every_entry_instantiates_and_validates():
    for name in CAT.names():
        for _vals, pat in CAT.instances(name, 2):
            pat.validate()
            assert set(pat.script.remove) <= set(pat.vertices)


def test_b1_host_occurrences():
    pat = CAT.instantiate("b-1")
    r = realize(pat, 0)
    occ = match(r.sg, pat)
    assert check_mapping(r.sg, pat, r.mapping)
    assert tuple(sorted(r.mapping.items())) in {o.mapping for o in occ}
    # swapping u<->v and x<->y is a symmetry of the pattern, so the core is found twice
    core = {frozenset(o.map[x] for x in "uvwxy") for o in occ}
    assert len(core) == 1 and len(orbits(occ)) == 2


def test_triangle_free_host_has_no_i1():
    sg = instance(24, 0)
    assert not any(f.length == 3 for f in sg.graph.faces)
    assert match(sg, build_i(1)) == []


@given(seed=st.integers(0, 1000), which=st.sampled_from(["I", "a-1"]))
def test_matcher_agrees_with_brute_force(seed, which):
    pat = build_i(1) if which == "I" else CAT.instantiate("a-1")
    sg = realize(pat, seed).sg
    found = {(o.image, tuple(o.map[p] for p in pat.ports)) for o in match(sg, pat)}
    assert found == naive_matches(sg, pat)


@given(seed=st.integers(0, 1000))
def test_matches_invariant_under_switching(seed):
    pat = CAT.instantiate("b-1")
    sg = realize(pat, seed % 5).sg
    rng = random.Random(seed)
    sw = apply_switches(sg, {v: rng.choice(list(Perm)) for v in range(sg.n)})
    for p in (pat, build_i(1), build_i(2)):
        assert match(sg, p) == match(sw, p)
