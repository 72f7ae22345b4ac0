import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import cycle_graph, instance
from oracles import naive_cycles
from dp468.planegraph import (Disconnected, NonPlanarRotation, PlaneGraph, PlaneGraphError,
                              boundary_audit, cycles, facial_cycle_check, forbidden_cycle_check,
                              separating_cycles, string_length_check, strings)


def from_networkx(G, outer):
    ok, emb = nx.check_planarity(G)
    assert ok
    return PlaneGraph([list(emb.neighbors_cw_order(v)) for v in range(G.number_of_nodes())], outer)


def test_triangle_has_two_faces(triangle):
    g = triangle.graph
    assert len(g.faces) == 2
    assert sorted(f.length for f in g.faces) == [3, 3]


def test_bad_rotation_fails_euler():
    with pytest.raises(NonPlanarRotation):
        PlaneGraph([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]], (0, 1))


def test_k4_faces():
    g = PlaneGraph([[1, 3, 2], [0, 2, 3], [0, 3, 1], [0, 1, 2]], (0, 1))
    assert len(g.faces) == 4
    assert g.outer.walk == (0, 1, 2)
    assert g.is_internal(3)


@pytest.mark.parametrize("rot, err", [
    ([[1, 1], [0, 2], [1, 0]], PlaneGraphError),   # multi-edge
    ([[0, 1], [0, 2], [1, 0]], PlaneGraphError),   # loop
    ([[1], [0], [3], [2]], Disconnected),
    ([[1, 2], [2], [0, 1]], PlaneGraphError),      # missing reverse arc
])
def test_invalid_rotations(rot, err):
    with pytest.raises(err):
        PlaneGraph(rot, (0, 1))


def test_outer_dart_must_exist():
    with pytest.raises(PlaneGraphError):
        PlaneGraph([[1, 2], [2, 0], [0, 1]], (0, 0))


def test_c4_is_forbidden_and_c5_is_not():
    assert forbidden_cycle_check(cycle_graph(4)) == [(0, 1, 2, 3)]
    assert forbidden_cycle_check(cycle_graph(5)) == []


def test_separating_triangle():
    G = nx.Graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5),
                  (6, 3), (6, 4), (6, 5)])
    g = from_networkx(G, (0, 1))
    assert (3, 4, 5) in separating_cycles(g, 3)
    assert separating_cycles(g, 3) == [(3, 4, 5)]
    assert boundary_audit(g).clean


def test_boundary_audit_flags_chord_and_long_outer():
    n = 13
    rot = [[(v + 1) % n, (v - 1) % n] for v in range(n)]
    g = PlaneGraph(rot, (0, 1))
    rep = boundary_audit(g)
    assert rep.too_long and rep.outer_length == 13
    # chord 0-5 splits C9 into a 6-face and a 5-face
    rot9 = [[1, 8], [2, 0], [3, 1], [4, 2], [5, 3], [6, 4], [7, 5], [8, 6], [0, 7]]
    rot9[0] = [1, 5, 8]
    rot9[5] = [6, 0, 4]
    g9 = PlaneGraph(rot9, (0, 1))
    assert sorted(f.length for f in g9.faces) == [5, 6, 9]
    assert boundary_audit(g9).chords == [(0, 5)]
    # seen from the 6-face the same edge lies on the boundary
    assert boundary_audit(PlaneGraph(rot9, (1, 0))).chords == []


def test_cut_vertex_and_low_degree_internal():
    # two triangles sharing vertex 0
    g = PlaneGraph([[1, 2, 3, 4], [2, 0], [0, 1], [4, 0], [0, 3]], (0, 1))
    assert boundary_audit(g).cut_vertices == [0]


def test_string_on_short_face_is_flagged():
    # theta graph on paths 0-1-2-3, 0-4-3 and 0-5-6-7-8-3
    rot = {0: [1, 4, 5], 1: [0, 2], 2: [1, 3], 3: [2, 8, 4], 4: [3, 0], 5: [6, 0],
           6: [7, 5], 7: [8, 6], 8: [3, 7]}
    g = PlaneGraph([rot[v] for v in range(9)], (0, 1))
    assert g.outer.length == 8
    recs = {(r.vertices, g.faces[r.face].length) for r in strings(g)}
    assert recs == {((1, 2), 5), ((4,), 5), ((4,), 7), ((5, 6, 7, 8), 7)}
    flagged = {(r.vertices, g.faces[r.face].length) for r in string_length_check(g)}
    assert flagged == {((1, 2), 5), ((5, 6, 7, 8), 7)}


@given(seed=st.integers(0, 10_000), n=st.integers(13, 26))
def test_cycles_match_networkx(seed, n):
    g = instance(n, seed).graph
    mine = {frozenset(frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c)))
            for c in cycles(g, 11)}
    assert mine == naive_cycles(g, 11)


@given(seed=st.integers(0, 10_000), n=st.integers(3, 30))
def test_face_tracing_invariants(seed, n):
    g = instance(n, seed, fix_strings=n >= 13).graph
    darts = [d for f in g.faces for d in f.darts()]
    assert len(darts) == len(set(darts)) == 2 * g.m
    assert g.n - g.m + len(g.faces) == 2
    assert forbidden_cycle_check(g) == []


@given(seed=st.integers(0, 10_000))
def test_facial_cycle_check_reports_only_non_faces(seed):
    g = instance(24, seed).graph
    face_edges = {f.edge_set() for f in g.faces}
    for c in facial_cycle_check(g):
        k = len(c)
        assert frozenset(frozenset((c[i], c[(i + 1) % k])) for i in range(k)) not in face_edges


def test_facial_cycle_check_on_separating_triangle():
    G = nx.Graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5),
                  (6, 3), (6, 4), (6, 5)])
    g = from_networkx(G, (0, 1))
    assert (3, 4, 5) in facial_cycle_check(g, (3,))
