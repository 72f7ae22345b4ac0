"""Plane graphs given by rotation systems.

A plane graph is stored as a clockwise cyclic list of neighbours per vertex
together with one dart ``(u, v)`` that lies on the designated infinite face.
Faces are traced combinatorially: after arriving at ``v`` along ``u -> v`` the
walk leaves along ``v -> w`` where ``w`` is the clockwise successor of ``u`` in
the rotation at ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

DEFAULT_MAX_VERTICES = 64


class PlaneGraphError(ValueError):
    pass


class NonPlanarRotation(PlaneGraphError):
    pass


class Disconnected(PlaneGraphError):
    pass


@dataclass(frozen=True)
class FaceWalk:
    id: int
    walk: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.walk)

    def darts(self):
        k = len(self.walk)
        return [(self.walk[i], self.walk[(i + 1) % k]) for i in range(k)]

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(d) for d in self.darts())


@dataclass(frozen=True)
class StringRecord:
    vertices: tuple[int, ...]
    endpoints: tuple[int, ...]
    face: int


class PlaneGraph:
    """Connected simple plane graph with a designated outer face.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order and
    ``outer`` is a dart on the infinite face f0.
    """

    def __init__(self, rotation: Sequence[Sequence[int]], outer: tuple[int, int]):
        self.rotation = tuple(tuple(r) for r in rotation)
        self.n = len(self.rotation)
        if self.n <= 2:
            raise PlaneGraphError("need at least 3 vertices")
        self._pos = []
        for v, rot in enumerate(self.rotation):
            if len(set(rot)) != len(rot):
                raise PlaneGraphError(f"multi-edge at vertex {v}")
            pos = {}
            for i, u in enumerate(rot):
                if u == v:
                    raise PlaneGraphError(f"loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise PlaneGraphError(f"vertex {v}: unknown neighbour {u}")
                pos[u] = i
            self._pos.append(pos)
        for v in range(self.n):
            for u in self.rotation[v]:
                if v not in self._pos[u]:
                    raise PlaneGraphError(f"edge {v}-{u} missing at {u}")
        self.m = sum(len(r) for r in self.rotation) // 2
        self._check_connected()
        self.faces, self.face_of_dart = _trace(self)
        if self.n - self.m + len(self.faces) != 2:
            raise NonPlanarRotation(
                f"Euler check failed: n={self.n} m={self.m} f={len(self.faces)}")
        outer = tuple(outer)
        if outer not in self.face_of_dart:
            raise PlaneGraphError(f"outer dart {outer} is not an edge")
        self.outer_dart = outer
        self.outer_face = self.face_of_dart[outer]
        self.external = frozenset(self.faces[self.outer_face].walk)

    def _check_connected(self):
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for u in self.rotation[v]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        if len(seen) != self.n:
            raise Disconnected(f"{self.n - len(seen)} vertices unreachable from 0")

    # -- basic queries -----------------------------------------------------
    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.rotation[u] if u < v]

    def succ(self, v: int, u: int) -> int:
        """Clockwise successor of ``u`` around ``v``."""
        rot = self.rotation[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        return (v, self.succ(v, u))

    @property
    def outer(self) -> FaceWalk:
        return self.faces[self.outer_face]

    def is_external(self, v: int) -> bool:
        return v in self.external

    def is_internal(self, v: int) -> bool:
        return v not in self.external

    def faces_at(self, v: int) -> list[int]:
        """Face ids around ``v`` (one per corner, rotation order)."""
        return [self.face_of_dart[(v, u)] for u in self.rotation[v]]

    def corners(self, v: int) -> list[tuple[int, int, int]]:
        """Corners at ``v`` as ``(face, incoming neighbour, outgoing neighbour)``."""
        out = []
        for u in self.rotation[v]:
            w = self.succ(v, u)
            out.append((self.face_of_dart[(v, w)], u, w))
        return out

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m}, faces={len(self.faces)})"


def _trace(g: PlaneGraph):
    face_of = {}
    faces = []
    for v in range(g.n):
        for u in g.rotation[v]:
            if (v, u) in face_of:
                continue
            fid = len(faces)
            walk = []
            dart = (v, u)
            while dart not in face_of:
                face_of[dart] = fid
                walk.append(dart[0])
                dart = g.next_dart(*dart)
            faces.append(FaceWalk(fid, tuple(walk)))
    return faces, face_of


def trace_faces(g: PlaneGraph) -> list[FaceWalk]:
    return list(g.faces)


# -- cycles ------------------------------------------------------------------

def cycles(g: PlaneGraph, max_len: int, min_len: int = 3) -> list[tuple[int, ...]]:
    """All simple cycles of length in [min_len, max_len].

    Each cycle is reported once, starting at its smallest vertex and oriented
    so that the second vertex is smaller than the last.
    """
    found = []
    adj = g.rotation
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def dfs(v):
            for u in adj[v]:
                if u == s:
                    if min_len <= len(path) and len(path) >= 3 and path[1] < path[-1]:
                        found.append(tuple(path))
                    continue
                if u < s or u in on_path or len(path) >= max_len:
                    continue
                path.append(u)
                on_path.add(u)
                dfs(u)
                path.pop()
                on_path.discard(u)

        dfs(s)
    return found


def forbidden_cycle_check(g: PlaneGraph, lengths: Iterable[int] = (4, 6, 8)):
    lengths = set(lengths)
    if not lengths:
        return []
    return [c for c in cycles(g, max(lengths)) if len(c) in lengths]


def in_class_g(g: PlaneGraph) -> bool:
    return not forbidden_cycle_check(g, (4, 6, 8))


def _cycle_edges(cyc):
    k = len(cyc)
    return frozenset(frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k))


def facial_cycle_check(g: PlaneGraph, lengths=(3, 5, 7, 9)):
    """Cycles of the given lengths that are not face boundaries."""
    face_edges = {f.edge_set() for f in g.faces if len(set(f.walk)) == f.length}
    return [c for c in cycles(g, max(lengths)) if len(c) in lengths
            and _cycle_edges(c) not in face_edges]


def cycle_sides(g: PlaneGraph, cyc: Sequence[int]):
    """Split the vertices off ``cyc`` into (interior, exterior).

    Region growing over faces: faces are linked across every edge that is not
    on the cycle; the side holding the outer face is the exterior.
    """
    cedges = _cycle_edges(cyc)
    start = g.face_of_dart[(cyc[0], cyc[1])]
    side = {start}
    todo = deque([start])
    while todo:
        f = todo.popleft()
        for a, b in g.faces[f].darts():
            if frozenset((a, b)) in cedges:
                continue
            h = g.face_of_dart[(b, a)]
            if h not in side:
                side.add(h)
                todo.append(h)
    if g.face_of_dart[(cyc[1], cyc[0])] in side:
        raise PlaneGraphError(f"{cyc} does not separate the faces")
    on_cycle = set(cyc)
    a_verts, b_verts = set(), set()
    for f in g.faces:
        target = a_verts if f.id in side else b_verts
        target.update(v for v in f.walk if v not in on_cycle)
    if g.outer_face in side:
        return b_verts, a_verts
    return a_verts, b_verts


def separating_cycles(g: PlaneGraph, max_len: int = 12):
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    out = []
    for c in cycles(g, max_len):
        inside, outside = cycle_sides(g, c)
        if inside and outside:
            out.append(c)
    return out


# -- strings -----------------------------------------------------------------

def strings(g: PlaneGraph) -> list[StringRecord]:
    """Maximal paths of 2-vertices, one record per non-outer face holding them."""
    two = {v for v in range(g.n) if g.degree(v) == 2}
    seen = set()
    records = []
    for s in sorted(two):
        if s in seen:
            continue
        comp = {s}
        todo = [s]
        while todo:
            v = todo.pop()
            for u in g.rotation[v]:
                if u in two and u not in comp:
                    comp.add(u)
                    todo.append(u)
        seen |= comp
        ends = [v for v in comp if sum(u in comp for u in g.rotation[v]) < 2]
        if not ends:
            path = _order_cycle(g, comp)
        else:
            path = _order_path(g, comp, min(ends))
        endpoints = tuple(sorted({u for v in comp for u in g.rotation[v] if u not in comp}))
        faces = sorted({g.face_of_dart[(v, u)] for v in comp for u in g.rotation[v]})
        for f in faces:
            if f != g.outer_face:
                records.append(StringRecord(tuple(path), endpoints, f))
    return records


def _order_path(g, comp, start):
    path = [start]
    prev = None
    while True:
        nxt = [u for u in g.rotation[path[-1]] if u in comp and u != prev and u not in path]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def _order_cycle(g, comp):
    return _order_path(g, comp, min(comp))


def string_length_check(g: PlaneGraph):
    """Strings of t vertices on a non-outer k-face with t >= floor((k-1)/2)."""
    bad = []
    for rec in strings(g):
        k = g.faces[rec.face].length
        if len(rec.vertices) >= (k - 1) // 2:
            bad.append(rec)
    return bad


# -- boundary audit ------------------------------------------------------------

@dataclass
class BoundaryReport:
    outer_length: int
    too_long: bool
    chords: list = field(default_factory=list)
    cut_vertices: list = field(default_factory=list)
    low_degree_internal: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.too_long or self.chords or self.cut_vertices
                    or self.low_degree_internal)

    def flags(self) -> list[str]:
        out = []
        if self.too_long:
            out.append(f"outer face has length {self.outer_length} > 12")
        out += [f"chord {a}-{b} of the outer boundary" for a, b in self.chords]
        out += [f"cut vertex {v}" for v in self.cut_vertices]
        out += [f"internal vertex {v} has degree {d}" for v, d in self.low_degree_internal]
        return out


def boundary_audit(g: PlaneGraph, max_outer: int = 12) -> BoundaryReport:
    walk = g.outer.walk
    k = len(walk)
    boundary_edges = {frozenset((walk[i], walk[(i + 1) % k])) for i in range(k)}
    ext = g.external
    chords = sorted((u, v) for u, v in g.edges()
                    if u in ext and v in ext and frozenset((u, v)) not in boundary_edges)
    cuts = sorted(nx.articulation_points(g.to_networkx()))
    low = [(v, g.degree(v)) for v in range(g.n) if v not in ext and g.degree(v) <= 2]
    return BoundaryReport(k, k > max_outer, chords, cuts, low)
