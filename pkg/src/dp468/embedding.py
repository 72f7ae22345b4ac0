"""Mutable rotation systems for building and editing plane graphs.

Corners follow the face-tracing convention of :mod:`dp468.planegraph`: a face
walk that reaches ``v`` from ``p`` leaves towards ``succ(v, p)``.  Inserting a
new neighbour right after ``p`` in the rotation of ``v`` therefore places it in
that corner.
"""

from __future__ import annotations

from .planegraph import PlaneGraph


class Embedding:
    def __init__(self, rotation: dict[int, list[int]] | None = None):
        self.rot: dict[int, list[int]] = {v: list(r) for v, r in (rotation or {}).items()}
        self._next = max(self.rot, default=-1) + 1

    @classmethod
    def from_graph(cls, g: PlaneGraph) -> "Embedding":
        return cls({v: list(g.neighbors(v)) for v in range(g.n)})

    @classmethod
    def cycle(cls, k: int) -> "Embedding":
        return cls({i: [(i - 1) % k, (i + 1) % k] for i in range(k)})

    def new_vertex(self) -> int:
        v = self._next
        self._next += 1
        self.rot[v] = []
        return v

    def has_edge(self, a, b) -> bool:
        return b in self.rot.get(a, ())

    def succ(self, v, u) -> int:
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def pred(self, v, u) -> int:
        r = self.rot[v]
        return r[r.index(u) - 1]

    def place(self, v, after, x):
        """Put ``x`` right after ``after`` around ``v`` (anywhere if ``v`` is bare)."""
        r = self.rot[v]
        if after is None or not r:
            r.append(x)
        else:
            r.insert(r.index(after) + 1, x)

    def face(self, dart) -> list[tuple[int, int]]:
        out = []
        d = dart
        while True:
            out.append(d)
            u, v = d
            d = (v, self.succ(v, u))
            if d == dart:
                return out

    def faces(self) -> list[list[tuple[int, int]]]:
        seen, out = set(), []
        for v, r in self.rot.items():
            for u in r:
                if (v, u) not in seen:
                    f = self.face((v, u))
                    seen.update(f)
                    out.append(f)
        return out

    @staticmethod
    def corner_of(face_darts, v):
        """First corner ``(p, v, q)`` of the face at ``v``."""
        k = len(face_darts)
        for i, (a, b) in enumerate(face_darts):
            if b == v:
                return a, v, face_darts[(i + 1) % k][1]
        raise KeyError(v)

    def add_path(self, corner_a, corner_b, length: int) -> list[int]:
        """Draw a path with ``length`` edges inside a face between two corners."""
        pa, a, _ = corner_a
        pb, b, _ = corner_b
        inner = [self.new_vertex() for _ in range(length - 1)]
        chain = [a, *inner, b]
        for i in range(1, len(chain) - 1):
            self.rot[chain[i]] = [chain[i - 1], chain[i + 1]]
        self.place(a, pa, chain[1])
        self.place(b, pb, chain[-2])
        return inner

    def add_pendant(self, corner) -> int:
        p, v, _ = corner
        x = self.new_vertex()
        self.place(v, p, x)
        self.rot[x] = [v]
        return x

    def remove_vertex(self, v):
        for u in self.rot.pop(v):
            self.rot[u].remove(v)

    def merge(self, a, b, corner_a, corner_b):
        """Identify ``b`` into ``a`` across a common face."""
        pa, _, qa = corner_a
        pb, _, qb = corner_b
        ra, rb = self.rot[a], self.rot[b]
        i = ra.index(qa) if ra else 0
        j = rb.index(qb) if rb else 0
        merged = ra[i:] + ra[:i] + rb[j:] + rb[:j]
        for u in rb:
            r = self.rot[u]
            r[r.index(b)] = a
        del self.rot[b]
        self.rot[a] = merged

    def freeze(self, outer_dart) -> tuple[PlaneGraph, dict[int, int]]:
        """Compact ids to 0..n-1 and build a PlaneGraph; returns it and the id map."""
        ids = {v: i for i, v in enumerate(sorted(self.rot))}
        rotation = [[ids[u] for u in self.rot[v]] for v in sorted(self.rot)]
        g = PlaneGraph(rotation, (ids[outer_dart[0]], ids[outer_dart[1]]))
        return g, ids
