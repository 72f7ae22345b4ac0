"""Exact 3-colouring of S3-signed graphs by backtracking search.

The search uses bitmask domains, forward checking and minimum-remaining-values
ordering with ties broken by the lowest vertex id.  Colours are tried in the
order 1, 2, 3 unless a random generator is supplied.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from .planegraph import forbidden_cycle_check
from .signing import COLORS, ID, Perm, SignedPlaneGraph, violations

FULL = 0b111
_BITS = {1: 1, 2: 2, 3: 4}
_POP = [bin(m).count("1") for m in range(8)]
_COLORS_OF = [[c for c in COLORS if m & _BITS[c]] for m in range(8)]


class ImproperPrecoloring(ValueError):
    pass


class BoundaryTooLong(ValueError):
    pass


class NotInScriptG(ValueError):
    pass


class ConstraintNet:
    """Signed constraint graph on vertices ``0..n-1``.

    ``arcs`` yields ``(u, v, sigma(u, v))``; each edge needs to be given once.
    Unlike a PlaneGraph this carries no embedding, so kernel checks can build
    one for any pattern.
    """

    def __init__(self, n: int, arcs: Iterable[tuple[int, int, Perm]]):
        self.n = n
        self.out: list[list[tuple[int, dict]]] = [[] for _ in range(n)]
        self.edges = []
        for u, v, p in arcs:
            p = Perm.parse(p)
            self.edges.append((u, v, p))
            # colour c at u forbids p(c) at v, and colour c at v forbids p^-1(c) at u
            self.out[u].append((v, {c: _BITS[p(c)] for c in COLORS}))
            q = p.inverse
            self.out[v].append((u, {c: _BITS[q(c)] for c in COLORS}))

    @classmethod
    def from_signed(cls, sg: SignedPlaneGraph) -> "ConstraintNet":
        return cls(sg.graph.n, ((u, v, sg.sigma(u, v)) for u, v in sg.graph.edges()))

    def violated(self, phi: Mapping[int, int]) -> list[tuple[int, int]]:
        return [(u, v) for u, v, p in self.edges
                if u in phi and v in phi and phi[v] == p(phi[u])]


def _as_net(obj) -> ConstraintNet:
    return obj if isinstance(obj, ConstraintNet) else ConstraintNet.from_signed(obj)


def _search(net: ConstraintNet, fixed: Mapping[int, int], rng: random.Random | None = None,
            restrict: Mapping[int, int] | None = None) -> Iterator[dict[int, int]]:
    """Yield every total proper colouring extending ``fixed``.

    ``restrict`` maps vertices to colour bitmasks that narrow their domains.
    """
    n = net.n
    dom = [FULL] * n
    if restrict:
        for v, mask in restrict.items():
            dom[v] &= mask
    assign: list[int] = [0] * n
    for v, c in fixed.items():
        if not dom[v] & _BITS[c]:
            return
        dom[v] = _BITS[c]
    # propagate fixed colours
    for v, c in fixed.items():
        for u, table in net.out[v]:
            if u in fixed:
                continue
            dom[u] &= ~table[c] & FULL
            if not dom[u]:
                return
    for v, c in fixed.items():
        for u, table in net.out[v]:
            if u in fixed and table[c] == _BITS[fixed[u]]:
                return
    free = [v for v in range(n) if v not in fixed]
    for v, c in fixed.items():
        assign[v] = c

    def pick(unassigned):
        best, best_size = -1, 4
        for v in unassigned:
            s = _POP[dom[v]]
            if s < best_size:
                best, best_size = v, s
                if s <= 1:
                    break
        return best

    unassigned = set(free)

    def rec():
        if not unassigned:
            yield {v: assign[v] for v in range(n)}
            return
        v = pick(sorted(unassigned))
        options = list(_COLORS_OF[dom[v]])
        if rng is not None:
            rng.shuffle(options)
        unassigned.discard(v)
        saved = dom[v]
        for c in options:
            assign[v] = c
            dom[v] = _BITS[c]
            changed = []
            ok = True
            for u, table in net.out[v]:
                if u in unassigned:
                    bit = table[c]
                    if dom[u] & bit:
                        changed.append((u, dom[u]))
                        dom[u] &= ~bit
                        if not dom[u]:
                            ok = False
                            break
            if ok:
                yield from rec()
            for u, old in reversed(changed):
                dom[u] = old
        dom[v] = saved
        assign[v] = 0
        unassigned.add(v)

    yield from rec()


def _precolor(sg) -> dict[int, int]:
    if isinstance(sg, SignedPlaneGraph):
        bad = violations(sg, sg.precolor)
        if bad:
            raise ImproperPrecoloring(f"precolouring violates edges {bad}")
        return dict(sg.precolor)
    return {}


def solve(sg, fixed: Mapping[int, int] | None = None, rng: random.Random | None = None):
    """A total proper colouring extending the precolouring, or ``None`` (UNSAT)."""
    pre = _precolor(sg)
    pre.update(fixed or {})
    net = _as_net(sg)
    if net.violated(pre):
        raise ImproperPrecoloring(f"precolouring violates edges {net.violated(pre)}")
    return next(_search(net, pre, rng), None)


def count(sg, fixed: Mapping[int, int] | None = None) -> int:
    pre = _precolor(sg)
    pre.update(fixed or {})
    net = _as_net(sg)
    if net.violated(pre):
        raise ImproperPrecoloring(f"precolouring violates edges {net.violated(pre)}")
    return sum(1 for _ in _search(net, pre))


def iter_colorings(sg, fixed: Mapping[int, int] | None = None) -> Iterator[dict[int, int]]:
    pre = _precolor(sg)
    pre.update(fixed or {})
    return _search(_as_net(sg), pre)


def extends(net: ConstraintNet, fixed: Mapping[int, int]) -> bool:
    if net.violated(fixed):
        return False
    return next(_search(net, fixed), None) is not None


def kernel_colorings(sg, frontier: Iterable[int]) -> set[tuple[int, ...]]:
    """Frontier colourings (in sorted frontier order) that extend to the whole graph."""
    net = _as_net(sg)
    front = sorted(set(frontier))
    base = _precolor(sg) if isinstance(sg, SignedPlaneGraph) else {}
    out = set()
    for cols in product(COLORS, repeat=len(front)):
        phi = dict(base)
        clash = False
        for v, c in zip(front, cols):
            if phi.get(v, c) != c:
                clash = True
                break
            phi[v] = c
        if not clash and extends(net, phi):
            out.add(cols)
    return out


def free_color_count(sg, frontier_coloring: Mapping[int, int], target: int) -> int:
    if target in frontier_coloring:
        raise ValueError("target must not be precoloured")
    net = _as_net(sg)
    return sum(extends(net, {**frontier_coloring, target: c}) for c in COLORS)


# -- boundary extension ----------------------------------------------------------

@dataclass
class ExtensionReport:
    boundary: tuple[int, ...]
    checked: int = 0
    failures: list = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures


def boundary_net(sg: SignedPlaneGraph):
    """Constraint net of G[V(f0)] relabelled to 0..k-1, and the vertex order."""
    verts = sorted(sg.graph.external)
    index = {v: i for i, v in enumerate(verts)}
    arcs = [(index[u], index[v], sg.sigma(u, v)) for u, v in sg.graph.edges()
            if u in index and v in index]
    return ConstraintNet(len(verts), arcs), verts


def boundary_colorings(sg: SignedPlaneGraph, limit: int | None = None,
                       rng: random.Random | None = None) -> Iterator[dict[int, int]]:
    """Proper colourings of G[V(f0)]: all of them, or ``limit`` random ones when ``rng`` is given."""
    net, verts = boundary_net(sg)
    if rng is None:
        for i, phi in enumerate(_search(net, {})):
            if limit is not None and i >= limit:
                return
            yield {verts[j]: c for j, c in phi.items()}
        return
    for _ in range(limit or 1):
        phi = next(_search(net, {}, rng), None)
        if phi is None:
            return
        yield {verts[j]: c for j, c in phi.items()}


def extend_boundary(sg: SignedPlaneGraph, samples: int | None = None,
                    rng: random.Random | None = None, max_outer: int = 12,
                    check_class: bool = True) -> ExtensionReport:
    """Try to extend boundary colourings to the whole graph.

    Uses the precolouring when one is given; otherwise enumerates every proper
    boundary colouring, or draws ``samples`` of them from ``rng``.  Any failure
    is a counterexample to the boundary-extension theorem and is recorded.
    """
    g = sg.graph
    if g.outer.length > max_outer:
        raise BoundaryTooLong(f"outer face has length {g.outer.length}")
    if check_class:
        bad = forbidden_cycle_check(g, (4, 6, 8))
        if bad:
            raise NotInScriptG(f"graph has forbidden cycle {bad[0]}")
    net = ConstraintNet.from_signed(sg)
    report = ExtensionReport(tuple(g.outer.walk))
    if sg.precolor:
        phis: Iterable[dict[int, int]] = [dict(sg.precolor)]
        if violations(sg, sg.precolor):
            raise ImproperPrecoloring("boundary precolouring is not proper")
    elif samples is not None and rng is not None:
        phis = boundary_colorings(sg, samples, rng)
        report.exhaustive = False
    else:
        phis = boundary_colorings(sg, samples)
        report.exhaustive = samples is None
    for phi in phis:
        report.checked += 1
        if not extends(net, phi):
            report.failures.append(phi)
    return report


__all__ = [
    "ConstraintNet", "ExtensionReport", "ImproperPrecoloring", "BoundaryTooLong",
    "NotInScriptG", "solve", "count", "iter_colorings", "extends", "kernel_colorings",
    "free_color_count", "extend_boundary", "boundary_colorings", "ID",
]
