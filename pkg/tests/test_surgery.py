import pytest

from dp468.configs.catalog import default_catalog
from dp468.configs.pattern import ReductionScript
from dp468.configs.surgery import SurgeryCollision, apply_surgery, canonical_host
from dp468.generate import realize
from dp468.planegraph import in_class_g
from dp468.signing import ID

CAT = default_catalog()
ALL = [pat for name in CAT.names() for _vals, pat in CAT.instances(name, 2)]


@pytest.mark.parametrize("pat", ALL, ids=lambda p: p.name)
def test_canonical_host_reduces_and_stays_in_class(pat):
    found = canonical_host(pat, seeds=range(20))
    assert found is not None
    r, _seed = found
    out, rep = apply_surgery(r.sg, pat, r.mapping)
    assert rep.ok and rep.decreased and in_class_g(out.graph)
    assert rep.n_before - rep.n_after >= len(pat.script.remove)


def test_e1_inserted_edge_is_straight():
    pat = CAT.instantiate("e-1")
    r, _ = canonical_host(pat)
    out, rep = apply_surgery(r.sg, pat, r.mapping)
    ((a, b, perm),) = rep.inserted
    assert perm is ID and out.graph.has_edge(a, b) and out.sigma(a, b) is ID


def test_b1_identification_merges_outer_neighbours():
    pat = CAT.instantiate("b-1")
    r, _ = canonical_host(pat)
    out, rep = apply_surgery(r.sg, pat, r.mapping)
    assert rep.identified == [(r.mapping["u'"], r.mapping["x'"])]
    assert rep.n_after == rep.n_before - 6
    assert rep.id_map[r.mapping["x'"]] == rep.id_map[r.mapping["u'"]]


def test_short_cycle_after_identification_is_flagged():
    # on this host the merged vertices are joined by a short outside path
    pat = CAT.instantiate("g-1")
    r = realize(pat, 0)
    _out, rep = apply_surgery(r.sg, pat, r.mapping)
    assert not rep.in_class_g and not rep.ok
    assert any(len(c) in (4, 6, 8) for c in rep.forbidden_cycles)


def test_identifying_adjacent_vertices_collides():
    pat = CAT.instantiate("b-1")
    r, _ = canonical_host(pat)
    script = ReductionScript(identify=[("u'", "u")])  # u' and u are adjacent
    with pytest.raises(SurgeryCollision):
        apply_surgery(r.sg, pat, r.mapping, script)


def test_precolouring_survives_surgery():
    pat = CAT.instantiate("b-1")
    r, _ = canonical_host(pat)
    up = r.mapping["u'"]
    sg = r.sg.with_precolor({up: 1})
    out, rep = apply_surgery(sg, pat, r.mapping)
    assert rep.precolor_proper
    tau = rep.switched.get(up, ID)
    assert dict(out.precolor) == {rep.id_map[up]: tau(1)}
