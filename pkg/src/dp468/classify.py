"""Vertex roles, snowflakes and nice 9-faces.

Terminology follows the discharging argument: a 3Δ-vertex is an internal
3-vertex on a 3-face, a 4⋈-vertex is an internal 4-vertex on two 3-faces that
share no edge, and C-vertices are everything else of degree other than 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

import networkx as nx

from .signing import SignedPlaneGraph, is_positive


class Role(Enum):
    TWO = "2"
    THREE_DELTA_PLUS = "3D+"
    THREE_DELTA_MINUS = "3D-"
    THREE_DELTA_CIRC = "3Do"
    FOUR_BOWTIE = "4B"
    C_VERTEX = "C"

    @property
    def is_three_delta(self) -> bool:
        return self in (Role.THREE_DELTA_PLUS, Role.THREE_DELTA_MINUS, Role.THREE_DELTA_CIRC)


class NotThreeDelta(ValueError):
    pass


@dataclass(frozen=True)
class VertexInfo:
    vertex: int
    role: Role
    degree: int
    external: bool
    bad: bool = False
    star: bool = False
    triangle: int | None = None
    outer_neighbor: int | None = None


class Classification:
    """Roles of every vertex of a signed plane graph, plus the face data they rely on."""

    def __init__(self, sg: SignedPlaneGraph):
        self.sg = sg
        g = self.g = sg.graph
        self.triangles = [f.id for f in g.faces
                          if f.length == 3 and f.id != g.outer_face and len(set(f.walk)) == 3]
        self.positive = {f: is_positive(sg, g.faces[f].walk) for f in self.triangles}
        tri_at: dict[int, list[int]] = {v: [] for v in range(g.n)}
        for f in self.triangles:
            for v in g.faces[f].walk:
                tri_at[v].append(f)
        self.triangles_at = tri_at
        self.bad = frozenset(v for f in self.triangles if self.positive[f]
                             and all(self._internal_deg(x, 3) for x in g.faces[f].walk)
                             for v in g.faces[f].walk)
        three_delta = {v for v in range(g.n) if self._internal_deg(v, 3) and tri_at[v]}
        bowtie = {v for v in range(g.n) if self._internal_deg(v, 4) and self._has_disjoint_pair(v)}
        info = {}
        for v in range(g.n):
            d = g.degree(v)
            ext = g.is_external(v)
            if d == 2:
                info[v] = VertexInfo(v, Role.TWO, d, ext)
            elif v in three_delta:
                f = tri_at[v][0]
                on_f = [x for x in g.faces[f].walk if x in three_delta]
                if len(on_f) >= 2:
                    role = Role.THREE_DELTA_PLUS if self.positive[f] else Role.THREE_DELTA_MINUS
                else:
                    role = Role.THREE_DELTA_CIRC
                tri = set(g.faces[f].walk)
                outer = next(u for u in g.neighbors(v) if u not in tri)
                info[v] = VertexInfo(v, role, d, ext, v in self.bad, False, f, outer)
            elif v in bowtie:
                info[v] = VertexInfo(v, Role.FOUR_BOWTIE, d, ext, v in self.bad)
            else:
                info[v] = VertexInfo(v, Role.C_VERTEX, d, ext, v in self.bad)
        for v, vi in info.items():
            if vi.role is Role.THREE_DELTA_CIRC and vi.outer_neighbor not in self.bad:
                info[v] = VertexInfo(v, vi.role, vi.degree, vi.external, vi.bad, True,
                                     vi.triangle, vi.outer_neighbor)
        self.info: dict[int, VertexInfo] = info

    def _internal_deg(self, v, d):
        return self.g.degree(v) == d and self.g.is_internal(v)

    def _edges_of(self, f):
        return self.g.faces[f].edge_set()

    def _has_disjoint_pair(self, v):
        return any(not (self._edges_of(a) & self._edges_of(b))
                   for a, b in combinations(self.triangles_at[v], 2))

    def role(self, v) -> Role:
        return self.info[v].role

    def is_three_delta(self, v) -> bool:
        return self.info[v].role.is_three_delta

    def is_bowtie(self, v) -> bool:
        return self.info[v].role is Role.FOUR_BOWTIE

    def is_c(self, v) -> bool:
        return self.info[v].role is Role.C_VERTEX

    def is_bad(self, v) -> bool:
        return v in self.bad

    def outer_neighbor(self, v) -> int:
        vi = self.info[v]
        if not vi.role.is_three_delta:
            raise NotThreeDelta(f"vertex {v} has role {vi.role.value}")
        return vi.outer_neighbor

    def external_c1(self, v) -> bool:
        """External 3-vertex, or external 4-vertex on two edge-disjoint non-f0 3-faces."""
        g = self.g
        if not g.is_external(v):
            return False
        if g.degree(v) == 3:
            return True
        return g.degree(v) == 4 and self._has_disjoint_pair(v)

    def to_json(self):
        return {str(v): {"role": vi.role.value, "bad": vi.bad, "star": vi.star,
                         "external": vi.external, "outer_neighbor": vi.outer_neighbor}
                for v, vi in sorted(self.info.items())}


def classify_vertices(sg: SignedPlaneGraph) -> Classification:
    return Classification(sg)


def outer_neighbor(cls: Classification, u: int) -> int:
    return cls.outer_neighbor(u)


# -- snowflakes ----------------------------------------------------------------

@dataclass
class SnowflakeStats:
    n_plus: int
    n_minus: int
    n_circ: int
    n_star: int
    n_bowtie: int
    n_faces: int
    t: dict
    c1: frozenset
    c2: frozenset
    t1: int
    t2: int

    @property
    def n_delta(self) -> int:
        return self.n_plus + self.n_minus + self.n_circ

    def eq3_holds(self) -> bool:
        return 3 * self.n_faces == self.n_delta + 2 * self.n_bowtie + self.t1 + self.t2

    def eq4_holds(self) -> bool:
        return self.n_bowtie >= self.n_faces - 1

    def parity_holds(self) -> bool:
        return self.n_plus % 2 == 0 and self.n_minus % 2 == 0


@dataclass
class Snowflake:
    id: int
    faces: frozenset
    vertices: frozenset
    three_delta: frozenset
    bowtie: frozenset
    c_vertices: frozenset
    stats: SnowflakeStats

    @property
    def name(self) -> str:
        return f"S{self.id}"

    def initial_charge(self) -> int:
        return -self.stats.n_delta - self.stats.n_faces


@dataclass
class RejectedComponent:
    faces: frozenset
    vertices: frozenset
    reason: str


@dataclass
class SnowflakeSet:
    accepted: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    def containing(self, v: int) -> list[Snowflake]:
        return [s for s in self.accepted if v in s.vertices]

    def rejected_containing(self, v: int) -> list[RejectedComponent]:
        return [r for r in self.rejected if v in r.vertices]

    def of_face(self, f: int):
        for s in self.accepted:
            if f in s.faces:
                return s
        return None


def _bowtie_connected(cls: Classification, a: int, b: int) -> bool:
    g = cls.g
    seen = {a}
    todo = deque([a])
    while todo:
        x = todo.popleft()
        for y in g.neighbors(x):
            if y == b:
                return True
            if y not in seen and cls.is_bowtie(y):
                seen.add(y)
                todo.append(y)
    return False


def snowflakes(cls: Classification) -> SnowflakeSet:
    g = cls.g
    faces = cls.triangles
    parent = {f: f for f in faces}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for v in range(g.n):
        if cls.is_bowtie(v):
            at = cls.triangles_at[v]
            for f in at[1:]:
                parent[find(f)] = find(at[0])
    comps: dict[int, list[int]] = {}
    for f in faces:
        comps.setdefault(find(f), []).append(f)
    out = SnowflakeSet()
    for comp in sorted(comps.values(), key=min):
        fset = frozenset(comp)
        verts = frozenset(v for f in comp for v in g.faces[f].walk)
        reason = _reject_reason(cls, fset, verts)
        if reason:
            out.rejected.append(RejectedComponent(fset, verts, reason))
            continue
        out.accepted.append(_make_snowflake(cls, len(out.accepted), fset, verts))
    return out


def _reject_reason(cls, fset, verts):
    g = cls.g
    twos = sorted(v for v in verts if cls.role(v) is Role.TWO)
    if twos:
        return f"contains 2-vertices {twos}"
    for w in sorted(verts):
        if cls.is_bowtie(w) and not set(cls.triangles_at[w]) <= fset:
            return f"condition (1): 3-face at 4-bowtie vertex {w} lies outside"
    for a, b in combinations(sorted(verts), 2):
        if not g.has_edge(a, b) and not _bowtie_connected(cls, a, b):
            return f"condition (2): {a} and {b} are not bowtie-connected"
    return None


def _make_snowflake(cls, sid, fset, verts) -> Snowflake:
    g = cls.g
    delta = frozenset(v for v in verts if cls.is_three_delta(v))
    bow = frozenset(v for v in verts if cls.is_bowtie(v))
    cs = frozenset(v for v in verts if cls.is_c(v))
    t = {u: sum(u in g.faces[f].walk for f in fset) for u in cs}
    c1 = frozenset(u for u in cs if cls.external_c1(u))
    c2 = cs - c1
    roles = [cls.role(v) for v in delta]
    stats = SnowflakeStats(
        n_plus=roles.count(Role.THREE_DELTA_PLUS),
        n_minus=roles.count(Role.THREE_DELTA_MINUS),
        n_circ=roles.count(Role.THREE_DELTA_CIRC),
        n_star=sum(cls.info[v].star for v in delta),
        n_bowtie=len(bow),
        n_faces=len(fset),
        t=t,
        c1=c1,
        c2=c2,
        t1=sum(t[u] for u in c1),
        t2=sum(t[u] for u in c2),
    )
    return Snowflake(sid, fset, verts, delta, bow, cs, stats)


def snowflake_graph_h(cls: Classification, s: Snowflake) -> nx.Graph:
    """Faces of ``s`` joined when they meet at a 4⋈-vertex."""
    h = nx.Graph()
    h.add_nodes_from(sorted(s.faces))
    for w in s.bowtie:
        at = [f for f in cls.triangles_at[w] if f in s.faces]
        h.add_edges_from(combinations(at, 2))
    return h


# -- nice 9-faces ----------------------------------------------------------------

@dataclass
class NiceFaceRecord:
    face: int
    case: int
    nice_vertices: dict
    related: int | None
    labelings: list = field(default_factory=list)
    unmodeled: bool = False


def _strong(cls, v, min_deg=4):
    """A ``min_deg``-plus vertex, or an external 3-vertex."""
    d = cls.g.degree(v)
    return d >= min_deg or (d == 3 and cls.g.is_external(v))


def _clauses(cls: Classification, lab: list[int]):
    """(clause, nice vertices) pairs met by the labelling ``v1..v9`` (0-based list)."""
    v = [None] + lab
    bow, delta, bad = cls.is_bowtie, cls.is_three_delta, cls.is_bad
    found = []
    if all(bow(v[i]) for i in (2, 3, 4, 5)) and delta(v[1]) and delta(v[6]):
        xs = []
        if cls.g.degree(v[8]) >= 5:
            xs.append(v[8])
        xs += [v[i] for i in (7, 9) if _strong(cls, v[i])]
        if xs:
            found.append((1, xs))
    if bow(v[4]) and delta(v[3]) and delta(v[5]) and all(bad(v[i]) for i in (1, 2, 6, 7)):
        xs = [v[i] for i in (8, 9) if _strong(cls, v[i])]
        if xs:
            found.append((2, xs))
    if (bow(v[4]) and bow(v[5]) and delta(v[3]) and delta(v[6])
            and all(bad(v[i]) for i in (1, 2, 7, 8))):
        if _strong(cls, v[9]):
            found.append((3, [v[9]]))
    return found


def nice_faces(cls: Classification, flakes: SnowflakeSet) -> list[NiceFaceRecord]:
    g = cls.g
    records = []
    for f in g.faces:
        if f.length != 9 or len(set(f.walk)) != 9 or f.id == g.outer_face:
            continue
        w = list(f.walk)
        kinds: dict[int, int] = {}
        labelings = []
        related_vertices = set()
        for start in range(9):
            for direction in (1, -1):
                lab = [w[(start + direction * i) % 9] for i in range(9)]
                for clause, xs in _clauses(cls, lab):
                    labelings.append((clause, lab[0], direction))
                    related_vertices.add(lab[3])
                    for x in xs:
                        kinds[x] = max(kinds.get(x, 0), 2 if clause == 1 else 1)
        if not kinds:
            continue
        related, unmodeled = None, False
        for v4 in sorted(related_vertices):
            owners = [s for s in flakes.accepted
                      if any(t in s.faces for t in cls.triangles_at[v4])]
            if owners:
                related = owners[0].id
            else:
                unmodeled = True
        records.append(NiceFaceRecord(f.id, min(c for c, _, _ in labelings), kinds, related,
                                      labelings, unmodeled))
    return records


# -- J-chain face lemmas -----------------------------------------------------------

def check_j_face_lemmas(cls: Classification, nice: list[NiceFaceRecord],
                        j_occurrences: Iterable[tuple[int, Mapping[str, int]]]):
    """Face-length and nice-face conditions around located J_k chains.

    ``j_occurrences`` yields ``(k, names)`` where ``names`` maps ``u0..uk`` and
    ``w1..wk`` to host vertices.
    """
    g = cls.g
    nice_ids = {r.face for r in nice}
    out = []
    for k, names in j_occurrences:
        mids = [names[f"u{i}"] for i in range(1, k)]
        tri = {names[f"w{i}"] for i in range(1, k + 1)}
        if k == 2:
            mid = mids[0]
            others = [fid for fid in set(g.faces_at(mid))
                      if not (g.faces[fid].length == 3 and set(g.faces[fid].walk) & tri)]
            lens = sorted(g.faces[fid].length for fid in others)
            if any(L != 9 for L in lens):
                out.append(f"J_2 at {mid}: non-triangle faces have lengths {lens}")
        elif k >= 4:
            touching = {fid for m in mids for fid in g.faces_at(m) if fid in nice_ids}
            if len(touching) < k - 2:
                out.append(f"J_{k} through {mids}: {len(touching)} nice 9-faces < {k - 2}")
    return out


@dataclass
class Structure:
    """Everything the discharging rules read from the classifier."""

    cls: Classification
    flakes: SnowflakeSet
    nice: list

    @classmethod
    def of(cls_, sg: SignedPlaneGraph) -> "Structure":
        c = Classification(sg)
        fl = snowflakes(c)
        return cls_(c, fl, nice_faces(c, fl))

    def to_json(self):
        g = self.cls.g
        return {
            "vertices": self.cls.to_json(),
            "snowflakes": [{
                "id": s.name,
                "faces": sorted(s.faces),
                "vertices": sorted(s.vertices),
                "three_delta": len(s.three_delta),
                "bowtie": len(s.bowtie),
                "t1": s.stats.t1,
                "t2": s.stats.t2,
                "h_edges": sorted(snowflake_graph_h(self.cls, s).edges()),
            } for s in self.flakes.accepted],
            "rejected": [{"faces": sorted(r.faces), "reason": r.reason}
                         for r in self.flakes.rejected],
            "nice_faces": [{"face": r.face, "length": g.faces[r.face].length, "case": r.case,
                            "nice": {str(v): k for v, k in sorted(r.nice_vertices.items())},
                            "related": None if r.related is None else f"S{r.related}"}
                           for r in self.nice],
        }
