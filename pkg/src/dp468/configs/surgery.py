"""Carry out a reduction script on a concrete host and audit the result."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..embedding import Embedding
from ..generate import RealizeFailed, realize
from ..planegraph import PlaneGraphError, forbidden_cycle_check
from ..signing import ID, Perm, Signature, SignedPlaneGraph, apply_switches, straightening_switches, violations
from .match import Occurrence
from .pattern import ConfigPattern, ReductionScript


class SurgeryError(ValueError):
    pass


class SurgeryCollision(SurgeryError):
    """An identification or insertion would create a loop or a parallel edge."""


@dataclass
class SurgeryReport:
    pattern: str
    n_before: int
    n_after: int
    in_class_g: bool
    forbidden_cycles: list = field(default_factory=list)
    precolor_proper: bool = True
    identified: list = field(default_factory=list)   # (kept, merged) host ids before surgery
    inserted: list = field(default_factory=list)     # (a, b, perm) in the new graph's ids
    switched: dict = field(default_factory=dict)
    id_map: dict = field(default_factory=dict)       # old host id -> new id for survivors

    @property
    def decreased(self) -> bool:
        return self.n_after < self.n_before

    @property
    def ok(self) -> bool:
        return self.in_class_g and self.precolor_proper and self.decreased

    def describe(self) -> list[str]:
        out = [f"{self.pattern}: |V| {self.n_before} -> {self.n_after}",
               f"  in class: {'yes' if self.in_class_g else 'no'}",
               f"  precolouring proper: {'yes' if self.precolor_proper else 'no'}"]
        for cyc in self.forbidden_cycles[:5]:
            out.append(f"  forbidden cycle {list(cyc)}")
        return out


def _common_face(emb: Embedding, a: int, b: int):
    for f in emb.faces():
        on = {d[1] for d in f}
        if a in on and b in on:
            return f
    return None


def _component(emb: Embedding, v: int) -> set:
    seen, stack = {v}, [v]
    while stack:
        x = stack.pop()
        for y in emb.rot[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _opened_corners(emb: Embedding, a: int, b: int, original: set):
    """Corners for joining two components that removal split apart.

    Each vertex is taken on a face that did not exist before the removal, so
    the pieces are glued back inside the region the configuration occupied.
    """
    if b in _component(emb, a):
        return None
    out = []
    for x in (a, b):
        if not emb.rot[x]:
            out.append((None, x, None))
            continue
        face = next((f for f in emb.faces() if frozenset(f) not in original
                     and any(d[1] == x for d in f)), None)
        if face is None:
            return None
        out.append(Embedding.corner_of(face, x))
    return out


class _Arcs:
    """Signs keyed by unordered vertex pairs, kept in sync with vertex merges."""

    def __init__(self, sg: SignedPlaneGraph):
        self.store = {(u, v): sg.sigma(u, v) for u, v in sg.graph.edges()}

    def get(self, u, v) -> Perm:
        if (u, v) in self.store:
            return self.store[u, v]
        return self.store[v, u].inverse

    def set(self, u, v, p: Perm):
        self.store.pop((v, u), None)
        self.store[u, v] = p

    def drop_vertex(self, x):
        self.store = {k: p for k, p in self.store.items() if x not in k}

    def rename(self, old, new):
        out = {}
        for (u, v), p in self.store.items():
            out[new if u == old else u, new if v == old else v] = p
        self.store = out


def apply_surgery(sg: SignedPlaneGraph, pattern: ConfigPattern, occurrence: Occurrence | dict,
                  script: ReductionScript | None = None) -> tuple[SignedPlaneGraph, SurgeryReport]:
    script = script or pattern.script
    m = occurrence.map if isinstance(occurrence, Occurrence) else dict(occurrence)
    g = sg.graph

    straight = [(m[a], m[b]) for path in script.straight for a, b in zip(path, path[1:])]
    taus = straightening_switches(sg, straight)
    work = apply_switches(sg, taus)
    precolor = dict(work.precolor)
    arcs = _Arcs(work)
    emb = Embedding.from_graph(g)
    precolor_ok = True

    removed = {m[v] for v in script.remove}
    original = {frozenset(f) for f in emb.faces()}
    for v in sorted(removed):
        emb.remove_vertex(v)
        arcs.drop_vertex(v)
        precolor.pop(v, None)

    alias: dict[int, int] = {}

    def cur(x):
        while x in alias:
            x = alias[x]
        return x

    identified = []
    for a_name, b_name in script.identify:
        a, b = cur(m[a_name]), cur(m[b_name])
        if a == b:
            continue
        if a in removed or b in removed:
            raise SurgeryError(f"{pattern.name}: cannot identify a removed vertex")
        if emb.has_edge(a, b):
            raise SurgeryCollision(f"{pattern.name}: {a_name} and {b_name} are adjacent")
        if set(emb.rot[a]) & set(emb.rot[b]):
            raise SurgeryCollision(f"{pattern.name}: {a_name} and {b_name} share a neighbour")
        face = _common_face(emb, a, b)
        if face is not None:
            corners = Embedding.corner_of(face, a), Embedding.corner_of(face, b)
        else:
            corners = _opened_corners(emb, a, b, original)
            if corners is None:
                raise SurgeryCollision(f"{pattern.name}: {a_name} and {b_name} share no face")
        emb.merge(a, b, *corners)
        arcs.rename(b, a)
        if b in precolor:
            if a in precolor and precolor[a] != precolor[b]:
                precolor_ok = False
            precolor.setdefault(a, precolor[b])
            del precolor[b]
        alias[b] = a
        identified.append((m[a_name], m[b_name]))

    inserted_old = []
    for a_name, b_name, perm in script.insert:
        a, b = cur(m[a_name]), cur(m[b_name])
        if a == b or emb.has_edge(a, b):
            raise SurgeryCollision(f"{pattern.name}: inserted edge {a_name}-{b_name} already present")
        face = _common_face(emb, a, b)
        if face is None:
            raise SurgeryCollision(f"{pattern.name}: {a_name} and {b_name} share no face")
        emb.add_path(Embedding.corner_of(face, a), Embedding.corner_of(face, b), 1)
        arcs.set(a, b, perm)
        inserted_old.append((a, b, perm))

    outer = _surviving_outer_dart(g, emb, cur)
    try:
        g2, ids = emb.freeze(outer)
    except PlaneGraphError as exc:
        raise SurgeryError(f"{pattern.name}: {exc}") from None
    sig = Signature({(ids[u], ids[v]): p for (u, v), p in arcs.store.items()})
    pre2 = {ids[v]: c for v, c in precolor.items()}
    out = SignedPlaneGraph(g2, sig, pre2)
    if violations(out, pre2):
        precolor_ok = False
    bad = forbidden_cycle_check(g2)
    report = SurgeryReport(
        pattern=pattern.name, n_before=g.n, n_after=g2.n, in_class_g=not bad,
        forbidden_cycles=list(bad), precolor_proper=precolor_ok, identified=identified,
        inserted=[(ids[a], ids[b], p) for a, b, p in inserted_old],
        switched={v: t for v, t in taus.items() if t is not ID},
        id_map={v: ids[cur(v)] for v in range(g.n) if v not in removed and cur(v) in ids})
    return out, report


def _surviving_outer_dart(g, emb: Embedding, cur) -> tuple[int, int]:
    for u, v in g.faces[g.outer_face].darts():
        a, b = cur(u), cur(v)
        if a in emb.rot and emb.has_edge(a, b):
            return a, b
    for v in sorted(emb.rot):
        if emb.rot[v]:
            return v, emb.rot[v][0]
    raise SurgeryError("surgery left no edges")


def canonical_host(pattern: ConfigPattern, seeds=range(200), ring_lengths=(2, 3, 4, 5)):
    """First realised host on which the script runs cleanly.

    Random hosts lack the structure a minimal counterexample has, so an
    identification may close a short cycle there.  We search seeds until the
    surgery keeps the host in the class and returns ``(realization, seed)``;
    ``None`` if no seed in range works.
    """
    for seed in seeds:
        try:
            r = realize(pattern, seed, ring_lengths=ring_lengths)
            _out, rep = apply_surgery(r.sg, pattern, r.mapping)
        except (RealizeFailed, SurgeryError):
            continue
        if rep.ok:
            return r, seed
    return None
