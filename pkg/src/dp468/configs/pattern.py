"""Configuration patterns and the I_k / J_k chain families."""

from __future__ import annotations

from copy import deepcopy
from dataclasses import dataclass, field
from typing import Optional

from ..signing import Perm

STAR = None  # theta value of an unconstrained vertex


class BadK(ValueError):
    pass


class ExtensionPreconditionFailed(ValueError):
    pass


@dataclass
class PVertex:
    name: str
    theta: Optional[int]
    internal: bool = False
    at_least: bool = False

    def admits(self, degree: int) -> bool:
        if self.theta is None:
            return True
        return degree >= self.theta if self.at_least else degree == self.theta


@dataclass
class ReductionScript:
    straight: list = field(default_factory=list)
    remove: list = field(default_factory=list)
    identify: list = field(default_factory=list)
    insert: list = field(default_factory=list)
    equal: list = field(default_factory=list)

    def equalities(self) -> list[tuple[str, str]]:
        return list(self.identify) + list(self.equal)

    @property
    def empty(self) -> bool:
        return not (self.straight or self.remove or self.identify or self.insert or self.equal)


@dataclass
class ConfigPattern:
    name: str
    vertices: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    signs: list = field(default_factory=list)
    faces: list = field(default_factory=list)
    opposite: list = field(default_factory=list)
    ports: list = field(default_factory=list)
    script: ReductionScript = field(default_factory=ReductionScript)
    provenance: str = "text-defined"
    notes: list = field(default_factory=list)

    # -- construction ------------------------------------------------------
    def add_vertex(self, name, theta, internal=False, at_least=False):
        if name in self.vertices:
            raise ValueError(f"duplicate vertex {name}")
        self.vertices[name] = PVertex(name, theta, internal, at_least)

    def add_edge(self, a, b):
        for x in (a, b):
            if x not in self.vertices:
                raise ValueError(f"edge uses unknown vertex {x}")
        if a == b or self.has_edge(a, b):
            raise ValueError(f"bad edge {a}-{b}")
        self.edges.append((a, b))

    def add_triangle(self, a, b, c, sign="ANY", facial=True):
        for x, y in ((a, b), (b, c), (c, a)):
            if not self.has_edge(x, y):
                self.add_edge(x, y)
        if sign != "ANY":
            self.signs.append(((a, b, c), sign))
        if facial:
            self.faces.append((a, b, c))

    def copy(self, name=None) -> "ConfigPattern":
        out = deepcopy(self)
        if name:
            out.name = name
        return out

    # -- queries -----------------------------------------------------------
    def has_edge(self, a, b) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def neighbors(self, v) -> list[str]:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def triangles_at(self, v) -> list[tuple]:
        return [f for f in self.faces if len(f) == 3 and v in f]

    def validate(self):
        for v in self.vertices.values():
            if v.theta is not None and not v.at_least and v.theta < self.degree(v.name):
                raise ValueError(f"{self.name}: theta({v.name}) < pattern degree")
        for cyc, sign in self.signs:
            if sign not in ("POS", "NEG", "ANY"):
                raise ValueError(f"bad sign label {sign}")
            self._check_cycle(cyc)
        for walk in self.faces:
            self._check_cycle(walk)
        for p in self.ports:
            if p not in self.vertices:
                raise ValueError(f"unknown port {p}")
        s = self.script
        names = set(self.vertices)
        for group in (s.remove, [x for p in s.straight for x in p],
                      [x for p in s.identify + s.equal for x in p],
                      [x for a, b, _ in s.insert for x in (a, b)]):
            for x in group:
                if x not in names:
                    raise ValueError(f"{self.name}: script names unknown vertex {x}")
        for path in s.straight:
            for a, b in zip(path, path[1:]):
                if not self.has_edge(a, b):
                    raise ValueError(f"{self.name}: straight path uses non-edge {a}-{b}")
        return self

    def _check_cycle(self, cyc):
        k = len(cyc)
        if k < 3 or len(set(cyc)) != k:
            raise ValueError(f"{self.name}: {cyc} is not a cycle")
        for i in range(k):
            if not self.has_edge(cyc[i], cyc[(i + 1) % k]):
                raise ValueError(f"{self.name}: {cyc} uses a non-edge")

    @property
    def kept(self) -> list[str]:
        rm = set(self.script.remove)
        return [v for v in self.vertices if v not in rm]

    def counts(self) -> tuple[int, int]:
        return len(self.vertices), len(self.edges)


# -- chain families ----------------------------------------------------------------

def build_i(k: int, prefix: str = "") -> ConfigPattern:
    """Chain of k negative triangles [u_{i-1} u_i w_i]; u0 is the port."""
    if k < 1:
        raise BadK(f"I_k needs k >= 1, got {k}")
    p = ConfigPattern(f"I_{k}")
    n = lambda s: prefix + s  # noqa: E731
    p.add_vertex(n("u0"), STAR)
    for i in range(1, k + 1):
        p.add_vertex(n(f"u{i}"), 3 if i == k else 4, True)
        p.add_vertex(n(f"w{i}"), 3, True)
    for i in range(1, k + 1):
        p.add_triangle(n(f"u{i-1}"), n(f"u{i}"), n(f"w{i}"), "NEG")
    p.ports = [n("u0")]
    return p


def build_j(k: int, prefix: str = "") -> ConfigPattern:
    """k triangles on the path u0..uk, each w_i tied to a positive triangle [x_i y_i z_i]."""
    if k < 1:
        raise BadK(f"J_k needs k >= 1, got {k}")
    p = ConfigPattern(f"J_{k}")
    n = lambda s: prefix + s  # noqa: E731
    for i in range(k + 1):
        p.add_vertex(n(f"u{i}"), STAR if i in (0, k) else 4, i not in (0, k))
    for i in range(1, k + 1):
        for s in "wxyz":
            p.add_vertex(n(f"{s}{i}"), 3, True)
    for i in range(1, k + 1):
        p.add_triangle(n(f"u{i-1}"), n(f"u{i}"), n(f"w{i}"))
        p.add_triangle(n(f"x{i}"), n(f"y{i}"), n(f"z{i}"), "POS")
        p.add_edge(n(f"w{i}"), n(f"z{i}"))
    p.ports = [n("u0"), n(f"u{k}")]
    return p


def extend_at_i(base: ConfigPattern, v: str, k: int) -> ConfigPattern:
    """Glue the port of I_k onto ``v``; new vertices are named ``v.u1``, ``v.w1``, ..."""
    pv = base.vertices.get(v)
    if pv is None or pv.theta is None or pv.at_least or pv.theta != base.degree(v) + 1:
        raise ExtensionPreconditionFailed(f"{base.name}: {v} has no single free slot")
    chain = build_i(k, prefix=f"{v}.")
    out = base.copy()
    port = f"{v}.u0"
    rename = lambda x: v if x == port else x  # noqa: E731
    for name, pvx in chain.vertices.items():
        if name != port:
            out.add_vertex(name, pvx.theta, pvx.internal)
    for a, b in chain.edges:
        out.add_edge(rename(a), rename(b))
    for cyc, sign in chain.signs:
        out.signs.append((tuple(rename(x) for x in cyc), sign))
    out.faces += [tuple(rename(x) for x in f) for f in chain.faces]
    out.vertices[v] = PVertex(v, pv.theta + 1, pv.internal)
    if v in out.script.remove:
        out.script.remove += [x for x in chain.vertices if x != port]
    return out


def extend_at_j(base: ConfigPattern, v: str, k: int) -> ConfigPattern:
    """Split ``v`` along a J_k chain.

    The half on the first listed triangle at ``v`` keeps the name ``v``; the
    other half is ``v.uk``.  The positive triangles hang off the chain and are
    scripted for removal: path ``w_i z_i x_i x_i'`` is straightened and a
    straight edge ``x_i' w_i`` is inserted.
    """
    pv = base.vertices.get(v)
    tris = base.triangles_at(v)
    if pv is None or pv.theta != 4 or base.degree(v) != 4 or len(tris) != 2:
        raise ExtensionPreconditionFailed(f"{base.name}: {v} is not a 4-vertex on two triangles")
    t1, t2 = tris
    if len(set(t1) & set(t2)) != 1:
        raise ExtensionPreconditionFailed(f"{base.name}: triangles at {v} share an edge")
    far = f"{v}.uk"
    chain = build_j(k, prefix=f"{v}.")
    rename_chain = {f"{v}.u0": v, f"{v}.u{k}": far}
    other_side = set(t2) - {v}

    out = base.copy()
    out.add_vertex(far, 4, pv.internal)
    out.vertices[v] = PVertex(v, 4, pv.internal)

    def side(x, ctx):
        return far if x == v and set(ctx) & other_side else x

    out.edges = [(side(a, (b,)), side(b, (a,))) for a, b in out.edges]
    out.faces = [tuple(side(x, f) for x in f) for f in out.faces]
    out.signs = [(tuple(side(x, c) for x in c), s) for c, s in out.signs]
    out.opposite = [o for o in out.opposite if o[0] != v]

    r = lambda x: rename_chain.get(x, x)  # noqa: E731
    for name, pvx in chain.vertices.items():
        if name not in rename_chain:
            out.add_vertex(name, pvx.theta, pvx.internal)
    for a, b in chain.edges:
        out.add_edge(r(a), r(b))
    for cyc, sign in chain.signs:
        out.signs.append((tuple(r(x) for x in cyc), sign))
    out.faces += [tuple(r(x) for x in f) for f in chain.faces]
    sc = out.script
    for i in range(1, k + 1):
        w, x, y, z = (f"{v}.{s}{i}" for s in "wxyz")
        xo = f"{x}'"
        out.add_vertex(xo, STAR)
        out.add_edge(x, xo)
        sc.straight.append((w, z, x, xo))
        sc.remove += [x, y, z]
        sc.insert.append((xo, w, Perm.ID))
    return out
