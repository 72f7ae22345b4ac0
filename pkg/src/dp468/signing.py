"""S3 signatures on plane graphs, switching, cycle signs and DP covers.

Composition convention: ``compose(p, q)`` (also ``p * q``) applies ``q`` first,
then ``p``.  ``sigma(u, v)`` is the permutation on the arc ``u -> v``; an edge
``uv`` forbids ``phi(v) == sigma(u, v)(phi(u))``.  The stored direction of each
edge is from the smaller to the larger vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .planegraph import PlaneGraph

COLORS = (1, 2, 3)


class Perm(Enum):
    ID = "123"
    P132 = "132"
    P213 = "213"
    P231 = "231"
    P312 = "312"
    P321 = "321"

    @classmethod
    def parse(cls, word) -> "Perm":
        if isinstance(word, Perm):
            return word
        try:
            return cls(str(word))
        except ValueError:
            raise ValueError(f"not a permutation of 123: {word!r}") from None

    @property
    def word(self) -> str:
        return self.value

    def __call__(self, c: int) -> int:
        return _APPLY[self][c]

    def __mul__(self, other: "Perm") -> "Perm":
        return _COMPOSE[self, other]

    @property
    def inverse(self) -> "Perm":
        return _INVERSE[self]

    def __str__(self):
        return self.value


_APPLY = {p: {c: int(p.value[c - 1]) for c in COLORS} for p in Perm}
_BY_IMAGE = {tuple(_APPLY[p][c] for c in COLORS): p for p in Perm}
_COMPOSE = {(p, q): _BY_IMAGE[tuple(_APPLY[p][_APPLY[q][c]] for c in COLORS)]
            for p in Perm for q in Perm}
_INVERSE = {p: next(q for q in Perm if _COMPOSE[p, q] is Perm.ID) for p in Perm}
ID = Perm.ID
NON_IDENTITY = tuple(p for p in Perm if p is not ID)


def compose(p: Perm, q: Perm) -> Perm:
    return _COMPOSE[p, q]


def invert(p: Perm) -> Perm:
    return _INVERSE[p]


def apply(p: Perm, c: int) -> int:
    return _APPLY[p][c]


class CyclicEdgeSet(ValueError):
    pass


class NotACycle(ValueError):
    pass


class ListSizeNot3(ValueError):
    pass


class Signature:
    """Immutable map from ordered edges to permutations; unset edges are straight."""

    def __init__(self, arcs: Mapping[tuple[int, int], Perm] | None = None):
        store = {}
        for (u, v), p in (arcs or {}).items():
            p = Perm.parse(p)
            if u > v:
                u, v, p = v, u, p.inverse
            if p is not ID:
                store[u, v] = p
        self._store = store

    def __call__(self, u: int, v: int) -> Perm:
        if u < v:
            return self._store.get((u, v), ID)
        return self._store.get((v, u), ID).inverse

    def items(self):
        return sorted(self._store.items())

    def replace(self, updates: Mapping[tuple[int, int], Perm]) -> "Signature":
        merged = {k: v for k, v in self._store.items()}
        for (u, v), p in updates.items():
            if u > v:
                u, v, p = v, u, p.inverse
            merged[u, v] = p
        return Signature(merged)

    def __eq__(self, other):
        return isinstance(other, Signature) and self._store == other._store

    def __hash__(self):
        return hash(frozenset(self._store.items()))

    def __repr__(self):
        body = ", ".join(f"{u}-{v}:{p}" for (u, v), p in self.items())
        return f"Signature({body})"


@dataclass(frozen=True)
class SignedPlaneGraph:
    graph: PlaneGraph
    sig: Signature = field(default_factory=Signature)
    precolor: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, c in self.precolor.items():
            if c not in COLORS or not 0 <= v < self.graph.n:
                raise ValueError(f"bad precolouring entry {v}:{c}")

    def sigma(self, u: int, v: int) -> Perm:
        return self.sig(u, v)

    @property
    def n(self) -> int:
        return self.graph.n

    def with_precolor(self, precolor: Mapping[int, int]) -> "SignedPlaneGraph":
        return SignedPlaneGraph(self.graph, self.sig, dict(precolor))

    def with_sig(self, sig: Signature) -> "SignedPlaneGraph":
        return SignedPlaneGraph(self.graph, sig, dict(self.precolor))


def switch(sg: SignedPlaneGraph, v: int, tau: Perm) -> SignedPlaneGraph:
    """Rename the colours at ``v`` by ``tau``.

    Arcs into ``v`` become ``tau * sigma(u, v)`` and a precoloured ``v`` is
    renamed to ``tau(phi(v))`` so that properness is preserved.
    """
    tau = Perm.parse(tau)
    updates = {(u, v): tau * sg.sigma(u, v) for u in sg.graph.neighbors(v)}
    precolor = dict(sg.precolor)
    if v in precolor:
        precolor[v] = tau(precolor[v])
    return SignedPlaneGraph(sg.graph, sg.sig.replace(updates), precolor)


def switch_many(sg: SignedPlaneGraph, taus: Mapping[int, Perm]) -> SignedPlaneGraph:
    for v, tau in sorted(taus.items()):
        if tau is not ID:
            sg = switch(sg, v, tau)
    return sg


def rename_coloring(phi: Mapping[int, int], taus: Mapping[int, Perm]) -> dict[int, int]:
    return {v: taus.get(v, ID)(c) for v, c in phi.items()}


def straightening_switches(sg: SignedPlaneGraph, edges: Iterable[tuple[int, int]]):
    """Switchings that make every edge in ``edges`` straight.

    Returns ``{vertex: tau}``; raises CyclicEdgeSet if the edges contain a cycle.
    """
    adj: dict[int, list[int]] = {}
    seen_edges = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen_edges:
            continue
        if not sg.graph.has_edge(u, v):
            raise ValueError(f"{u}-{v} is not an edge")
        seen_edges.add(key)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    # frame[x] = permutation by which x gets switched
    frame: dict[int, Perm] = {}
    for root in sorted(adj):
        if root in frame:
            continue
        frame[root] = ID
        stack = [(root, None)]
        while stack:
            x, parent = stack.pop()
            for y in sorted(adj[x]):
                if y == parent:
                    continue
                if y in frame:
                    raise CyclicEdgeSet(f"edge set contains a cycle through {x}-{y}")
                # after switching x by frame[x], arc x->y reads sigma(x,y) * frame[x]^-1
                frame[y] = (sg.sigma(x, y) * frame[x].inverse).inverse
                stack.append((y, x))
    return {v: t for v, t in frame.items() if t is not ID}


def apply_switches(sg: SignedPlaneGraph, taus: Mapping[int, Perm]) -> SignedPlaneGraph:
    """Apply several switchings at once (order independent)."""
    updates = {}
    for u, v in sg.graph.edges():
        tu, tv = taus.get(u, ID), taus.get(v, ID)
        if tu is ID and tv is ID:
            continue
        updates[u, v] = tv * sg.sigma(u, v) * tu.inverse
    precolor = rename_coloring(sg.precolor, taus)
    return SignedPlaneGraph(sg.graph, sg.sig.replace(updates), precolor)


def normalize_tree(sg: SignedPlaneGraph, edges: Iterable[tuple[int, int]]) -> SignedPlaneGraph:
    return apply_switches(sg, straightening_switches(sg, edges))


def cycle_product(sg: SignedPlaneGraph, cycle: Sequence[int]) -> Perm:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise NotACycle(f"{tuple(cycle)} is not a cycle")
    prod = ID
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if not sg.graph.has_edge(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
        prod = sg.sigma(a, b) * prod
    return prod


def cycle_sign(sg: SignedPlaneGraph, cycle: Sequence[int]) -> str:
    return "POSITIVE" if cycle_product(sg, cycle) is ID else "NEGATIVE"


def is_positive(sg: SignedPlaneGraph, cycle: Sequence[int]) -> bool:
    return cycle_product(sg, cycle) is ID


def violations(sg: SignedPlaneGraph, phi: Mapping[int, int]) -> list[tuple[int, int]]:
    """Edges whose two coloured ends break ``phi(v) != sigma(u, v)(phi(u))``."""
    bad = []
    for u, v in sg.graph.edges():
        if u in phi and v in phi and phi[v] == sg.sigma(u, v)(phi[u]):
            bad.append((u, v))
    return bad


def is_proper(sg: SignedPlaneGraph, phi: Mapping[int, int]) -> bool:
    return not violations(sg, phi)


# -- covers --------------------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    """Lists ``L(v)`` and per-edge matchings ``M[(u, v)]`` of pairs (a in L(u), b in L(v))."""

    lists: Mapping[int, tuple]
    matchings: Mapping[tuple[int, int], frozenset]

    def __post_init__(self):
        owner = {}
        for v, labels in self.lists.items():
            for a in labels:
                if a in owner:
                    raise ValueError(f"label {a!r} shared by {owner[a]} and {v}")
                owner[a] = v
        for (u, v), pairs in self.matchings.items():
            left = [a for a, _ in pairs]
            right = [b for _, b in pairs]
            if len(set(left)) != len(left) or len(set(right)) != len(right):
                raise ValueError(f"M_{u}{v} is not a matching")
            for a, b in pairs:
                if a not in self.lists[u] or b not in self.lists[v]:
                    raise ValueError(f"M_{u}{v} uses labels outside the lists")

    def is_f_cover(self, f: Mapping[int, int]) -> bool:
        return all(len(self.lists[v]) >= f[v] for v in f)

    def is_coloring(self, phi: Mapping[int, object]) -> bool:
        if any(phi[v] not in self.lists[v] for v in self.lists):
            return False
        return all((phi[u], phi[v]) not in pairs for (u, v), pairs in self.matchings.items())


def cover_from_lists(edges: Iterable[tuple[int, int]], lists: Mapping[int, Iterable[int]]) -> Cover:
    L = {v: tuple(sorted((i, v) for i in set(cols))) for v, cols in lists.items()}
    M = {}
    for u, v in edges:
        common = set(lists[u]) & set(lists[v])
        M[u, v] = frozenset(((i, u), (i, v)) for i in sorted(common))
    return Cover(L, M)


def signed_from_cover(cover: Cover, graph: PlaneGraph) -> SignedPlaneGraph:
    """Convert a 3-cover into a signature, completing partial matchings greedily.

    List elements are indexed 1..3 in sorted order.  Completing a matching only
    adds constraints, so colourings proper after conversion are (L,M)-colourings.
    """
    index = {}
    for v, labels in cover.lists.items():
        if len(labels) != 3:
            raise ListSizeNot3(f"|L({v})| = {len(labels)}")
        for i, a in enumerate(sorted(labels), start=1):
            index[a] = i
    arcs = {}
    for u, v in graph.edges():
        pairs = cover.matchings.get((u, v))
        flip = False
        if pairs is None:
            pairs = cover.matchings.get((v, u), frozenset())
            flip = True
        image = {}
        for a, b in pairs:
            if flip:
                a, b = b, a
            image[index[a]] = index[b]
        free_right = [j for j in COLORS if j not in image.values()]
        for i in COLORS:
            if i not in image:
                image[i] = free_right.pop(0)
        arcs[u, v] = Perm("".join(str(image[i]) for i in COLORS))
    return SignedPlaneGraph(graph, Signature(arcs))


def coloring_to_cover(cover: Cover, phi: Mapping[int, int]) -> dict:
    return {v: sorted(cover.lists[v])[c - 1] for v, c in phi.items()}


def all_perms() -> list[Perm]:
    return list(Perm)


assert len({"".join(p) for p in permutations("123")}) == len(Perm)
