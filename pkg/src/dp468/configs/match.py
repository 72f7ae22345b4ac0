"""Induced, embedding-respecting occurrences of a pattern in a host."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..signing import SignedPlaneGraph, is_positive
from .pattern import ConfigPattern


@dataclass(frozen=True)
class Occurrence:
    pattern: str
    mapping: tuple  # sorted (pattern vertex, host vertex) pairs

    @property
    def map(self) -> dict:
        return dict(self.mapping)

    @property
    def image(self) -> frozenset:
        return frozenset(h for _, h in self.mapping)

    def __getitem__(self, name):
        return self.map[name]

    def describe(self) -> str:
        body = " ".join(f"{p}={h}" for p, h in self.mapping)
        return f"{self.pattern}: {body}"


def _search_order(p: ConfigPattern) -> list[str]:
    order, seen = [], set()
    # start from the most constrained vertex so the first level is small
    start_rank = sorted(p.vertices, key=lambda v: (p.vertices[v].theta is None, -p.degree(v), v))
    for s in start_rank:
        if s in seen:
            continue
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            order.append(x)
            for y in sorted(p.neighbors(x)):
                if y not in seen:
                    seen.add(y)
                    q.append(y)
    return order


def _is_face(g, walk) -> bool:
    k = len(walk)
    darts = [(walk[i], walk[(i + 1) % k]) for i in range(k)]
    for ds in (darts, [(b, a) for a, b in reversed(darts)]):
        fids = {g.face_of_dart.get(d) for d in ds}
        if len(fids) == 1 and None not in fids and g.faces[fids.pop()].length == k:
            return True
    return False


def _consecutive(g, c, a, b) -> bool:
    rot = g.neighbors(c)
    i = rot.index(a)
    return rot[(i + 1) % len(rot)] == b or rot[i - 1] == b


def _maps(sg: SignedPlaneGraph, p: ConfigPattern):
    g = sg.graph
    order = _search_order(p)
    pos = {v: i for i, v in enumerate(order)}
    earlier_nbrs = {v: [u for u in p.neighbors(v) if pos[u] < pos[v]] for v in order}
    earlier_all = {v: order[:pos[v]] for v in order}
    adj = {v: set(p.neighbors(v)) for v in order}
    assign: dict[str, int] = {}
    used: set[int] = set()

    def ok(v, h):
        pv = p.vertices[v]
        if not pv.admits(g.degree(h)):
            return False
        if pv.internal and g.is_external(h):
            return False
        for u in earlier_all[v]:
            if (u in adj[v]) != g.has_edge(h, assign[u]):
                return False
        return True

    def rec(i):
        if i == len(order):
            yield dict(assign)
            return
        v = order[i]
        if earlier_nbrs[v]:
            cand = g.neighbors(assign[earlier_nbrs[v][0]])
        else:
            cand = range(g.n)
        for h in sorted(cand):
            if h in used or not ok(v, h):
                continue
            assign[v] = h
            used.add(h)
            yield from rec(i + 1)
            used.discard(h)
            del assign[v]

    for m in rec(0):
        if all(_is_face(g, [m[x] for x in walk]) for walk in p.faces) and \
                all(not _consecutive(g, m[c], m[a], m[b]) for c, a, b in p.opposite) and \
                all(sign == "ANY" or is_positive(sg, [m[x] for x in cyc]) == (sign == "POS")
                    for cyc, sign in p.signs):
            yield m


def match(sg: SignedPlaneGraph, p: ConfigPattern, dedupe: bool = True) -> list[Occurrence]:
    """All occurrences, deduplicated on (image set, port images) unless ``dedupe`` is off."""
    out, seen = [], set()
    for m in _maps(sg, p):
        key = (frozenset(m.values()), tuple(m[x] for x in p.ports))
        if dedupe and key in seen:
            continue
        seen.add(key)
        out.append(Occurrence(p.name, tuple(sorted(m.items()))))
    return out


def orbits(occs: list[Occurrence]) -> list[frozenset]:
    return sorted({o.image for o in occs}, key=sorted)


def check_mapping(sg: SignedPlaneGraph, p: ConfigPattern, m: dict) -> bool:
    """Whether a given name -> host map is an occurrence of ``p``."""
    g = sg.graph
    hs = [m[v] for v in p.vertices]
    if len(set(hs)) != len(hs):
        return False
    for v, pv in p.vertices.items():
        if not pv.admits(g.degree(m[v])) or (pv.internal and g.is_external(m[v])):
            return False
    names = list(p.vertices)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if p.has_edge(a, b) != g.has_edge(m[a], m[b]):
                return False
    if not all(_is_face(g, [m[x] for x in walk]) for walk in p.faces):
        return False
    if any(_consecutive(g, m[c], m[a], m[b]) for c, a, b in p.opposite):
        return False
    return all(sign == "ANY" or is_positive(sg, [m[x] for x in cyc]) == (sign == "POS")
               for cyc, sign in p.signs)
