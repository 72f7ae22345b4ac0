import pytest

from oracles import naive_i1_port_colours, naive_lemma7
from dp468.configs.catalog import default_catalog, parse
from dp468.configs.kernel import (build_problem, lemma7_table, lemma8, removed_components,
                                  verify_kernel, verify_pattern)

CAT = default_catalog()


def test_lemma7_matches_enumeration():
    rows = {(r.sigma_uv.word, r.color_u_out, r.color_v_out): r.free for r in lemma7_table()}
    assert rows == {(s, a, b): f for s, a, b, f in naive_lemma7()}
    assert all(r.ok for r in lemma7_table())


def test_lemma7_parts():
    rows = lemma7_table()
    assert len(rows) == 54
    straight = [r for r in rows if r.sigma_uv.word == "123" and r.color_u_out != r.color_v_out]
    assert straight and all(r.free == 3 for r in straight)
    assert min(r.free for r in rows if r.sigma_uv.word != "123") == 2


def test_lemma8_k1_against_raw_enumeration():
    rep = lemma8(1)
    n_raw, worst = naive_i1_port_colours()
    # 5 of the 6 switching classes of a triangle are negative; each has 36 raw signings
    assert n_raw == 5 * 36 and rep.signatures == 5
    assert rep.min_free == worst == 2
    assert rep.ok


@pytest.mark.parametrize("k, classes, colourings", [(1, 5, 45), (2, 25, 675)])
def test_lemma8_counts(k, classes, colourings):
    rep = lemma8(k)
    assert (rep.signatures, rep.colorings) == (classes, colourings)
    assert rep.ok and rep.min_free >= 2


@pytest.mark.parametrize("name", ["a-1", "c-1", "d-1", "e-1", "g-1", "h-1"])
def test_quick_entries_pass(name):
    rep = verify_kernel(name, 1)
    assert rep.status == "PASS", rep.describe()


def test_frontier_of_b1():
    pat = CAT.instantiate("b-1")
    (comp,) = removed_components(pat)
    prob = build_problem(pat, comp)
    assert set(comp) == {"u", "v", "w", "x", "y"}
    # v and y keep one outside edge each, modelled as pendants
    assert prob.frontier == ("u'", "x'", "v~0", "y~0")
    # the identification puts u' and x' into one colour class
    named = [sorted(prob.names[i] for i in cls) for cls in prob.classes]
    assert ["u'", "x'"] in named


def test_budget_overrun_is_skip():
    rep = verify_pattern(CAT.instantiate("f-1"), budget=1000)
    assert rep.status == "SKIP"


NEG_TRIANGLE = """
entry t
  provenance reconstructed-from-proof
  vertex a 4 Z
  vertex b 4 Z
  vertex c 4 Z
  tri a b c
  REMOVE a b c
end
"""


def test_negative_control_triangle_of_4_vertices_fails():
    rep = verify_pattern(parse(NEG_TRIANGLE).instantiate("t"))
    assert rep.status == "FAIL" and rep.failures


def test_negative_control_b1_without_identification_fails():
    text = CAT.emit()
    start = text.index("entry b-1")
    end = text.index("end", start) + 3
    block = "\n".join(l for l in text[start:end].splitlines() if "IDENTIFY" not in l)
    rep = verify_pattern(parse(block + "\n").instantiate("b-1"))
    assert rep.status == "FAIL"
