import pytest
from hypothesis import given, strategies as st

from dp468 import spg
from dp468.generate import GenerationBudgetExceeded, GenOptions, generate, realize
from dp468.configs.catalog import default_catalog
from dp468.configs.match import check_mapping
from dp468.planegraph import boundary_audit, in_class_g, string_length_check


def test_deterministic_per_seed():
    assert spg.emit(generate(30, 7)) == spg.emit(generate(30, 7))
    assert spg.emit(generate(30, 7)) != spg.emit(generate(30, 8))


@given(seed=st.integers(0, 100_000), n=st.integers(13, 40))
def test_generated_instances_are_in_class(seed, n):
    sg = generate(n, seed)
    g = sg.graph
    assert g.n <= n and in_class_g(g)
    rep = boundary_audit(g)
    assert not rep.chords and not rep.too_long
    assert string_length_check(g) == []


@given(seed=st.integers(0, 10_000), L=st.sampled_from([5, 7, 9, 10, 11, 12]))
def test_boundary_option(seed, L):
    sg = generate(30, seed, GenOptions(boundary=L, precolor=True))
    assert sg.graph.outer.length == L
    assert set(sg.precolor) == set(sg.graph.external)


@pytest.mark.parametrize("L", [4, 6, 8, 2])
def test_illegal_boundary(L):
    with pytest.raises(ValueError):
        generate(30, 0, GenOptions(boundary=L))


def test_budget_exceeded_on_tiny_string_free_request():
    with pytest.raises(GenerationBudgetExceeded):
        generate(6, 0, GenOptions(max_tries=5))


@pytest.mark.parametrize("name", default_catalog().names())
def test_realize_contains_pattern(name):
    pat = next(iter(default_catalog().instances(name, 1)))[1]
    r = realize(pat, 0)
    assert in_class_g(r.sg.graph)
    assert check_mapping(r.sg, pat, r.mapping)
