"""Exhaustive checks that removed vertices can always be recoloured.

For a configuration and its reduction script we model what the smaller graph
hands back: a proper colouring of everything that survives, in the frame where
the script's straight paths are straight, with identified vertices sharing a
colour and inserted edges respected.  The check asks whether every such
colouring of the frontier extends over the removed vertices.

Each connected component of removed vertices is handled on its own.  Its
frontier is the set of surviving pattern neighbours plus one unnamed pendant
per missing host edge (``theta - deg``); a pendant forbids one colour of its
choosing, which we model by a straight edge to a freely coloured leaf.

Signatures are enumerated modulo switching.  Vertices tied together by the
script (straight edges, identifications, identity insertions) form blocks that
may only be switched as a whole; a greedy spanning forest over the blocks is
made straight and every remaining edge ranges over all six permutations.
Cycle-sign constraints are applied to every cycle that shares an edge with the
component, after closing the edge set under those cycles.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from ..signing import COLORS, ID, Perm, compose
from ..solver import ConstraintNet, extends
from .catalog import Catalog, default_catalog
from .pattern import ConfigPattern, ReductionScript, build_i

DEFAULT_BUDGET = 3_000_000


class EnumerationBudgetExceeded(RuntimeError):
    pass


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass
class Problem:
    """One removed component together with its frontier and signature space."""

    removed: tuple
    frontier: tuple
    names: list
    edges: list                      # (i, j) with i < j, every edge in the closure
    fixed: dict                      # (i, j) -> Perm, tree and straight edges
    free: list                       # co-tree edges, six options each
    cycles: list                     # (index tuple, "POS" | "NEG")
    classes: list                    # frontier equality classes, lists of indices
    inserts: list                    # (i, j, Perm) constraints between frontier vertices
    net_edges: list                  # edges with both ends in removed + frontier

    @property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.names)}

    def raw_signature_count(self) -> int:
        return 6 ** len(self.free)

    def signatures(self) -> Iterator[dict]:
        for choice in product(tuple(Perm), repeat=len(self.free)):
            sig = dict(self.fixed)
            sig.update(zip(self.free, choice))
            if all(_positive(sig, cyc) == (s == "POS") for cyc, s in self.cycles):
                yield sig

    def net(self, sig: dict) -> ConstraintNet:
        return ConstraintNet(len(self.names), ((i, j, sig[i, j]) for i, j in self.net_edges))

    def frontier_colorings(self, sig: dict) -> Iterator[dict]:
        front_edges = [(i, j) for i, j in self.net_edges
                       if self.names[i] in self._front_set and self.names[j] in self._front_set]
        for cols in product(COLORS, repeat=len(self.classes)):
            phi = {v: c for cls, c in zip(self.classes, cols) for v in cls}
            if any(phi[j] == sig[i, j](phi[i]) for i, j in front_edges):
                continue
            if any(phi[b] == p(phi[a]) for a, b, p in self.inserts):
                continue
            yield phi

    @property
    def _front_set(self):
        return set(self.frontier)

    def coloring_count_bound(self) -> int:
        return 3 ** len(self.classes)


def _positive(sig: dict, cyc: tuple) -> bool:
    prod = ID
    k = len(cyc)
    for t in range(k):
        a, b = cyc[t], cyc[(t + 1) % k]
        p = sig[a, b] if a < b else sig[b, a].inverse
        prod = compose(p, prod)
    return prod is ID


def _pendant_counts(p: ConfigPattern, comp) -> dict:
    out = {}
    for v in comp:
        pv = p.vertices[v]
        if pv.theta is None or pv.at_least:
            raise ValueError(f"{p.name}: removed vertex {v} has an open degree")
        out[v] = pv.theta - p.degree(v)
    return out


def removed_components(p: ConfigPattern) -> list[tuple]:
    rm = set(p.script.remove)
    seen, out = set(), []
    for v in p.vertices:
        if v not in rm or v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in p.neighbors(x):
                if y in rm and y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return out


def build_problem(p: ConfigPattern, comp: tuple, script: ReductionScript | None = None) -> Problem:
    script = script or p.script
    cset = set(comp)
    pend = _pendant_counts(p, comp)
    front_named = sorted({y for x in comp for y in p.neighbors(x) if y not in cset})
    fset = set(front_named)
    edge_set = {frozenset(e) for e in p.edges if cset & set(e) or set(e) <= fset}
    sign_cycles = [(cyc, s) for cyc, s in p.signs if s != "ANY"]
    while True:
        grown = False
        for cyc, _ in sign_cycles:
            ce = {frozenset((cyc[t], cyc[(t + 1) % len(cyc)])) for t in range(len(cyc))}
            if ce & edge_set and not ce <= edge_set:
                edge_set |= ce
                grown = True
        if not grown:
            break
    touched = {x for e in edge_set for x in e}
    extras = sorted(touched - cset - fset)
    pendants = [f"{v}~{i}" for v in comp for i in range(pend[v])]
    names = list(comp) + front_named + pendants + extras
    idx = {v: i for i, v in enumerate(names)}
    key = lambda a, b: (min(idx[a], idx[b]), max(idx[a], idx[b]))  # noqa: E731

    edges = sorted({key(*tuple(e)) for e in edge_set})
    pend_edges = [key(v, f"{v}~{i}") for v in comp for i in range(pend[v])]
    edges += pend_edges
    frontier = tuple(front_named + pendants)

    straight = set()
    for path in script.straight:
        for a, b in zip(path, path[1:]):
            if a in idx and b in idx and key(a, b) in edges:
                straight.add(key(a, b))
    straight |= set(pend_edges)
    real = _UnionFind(len(names))
    for i, j in sorted(straight):
        if not real.union(i, j):
            raise ValueError(f"{p.name}: the script straightens a whole cycle")

    classes_uf = _UnionFind(len(names))
    for a, b in script.equalities():
        if a in fset and b in fset:
            classes_uf.union(idx[a], idx[b])
    inserts = [(idx[a], idx[b], perm) for a, b, perm in script.insert if a in fset and b in fset]

    blocks = _UnionFind(len(names))
    rigid = [False] * len(names)
    for i, j in straight:
        blocks.union(i, j)
    for a, b in script.equalities():
        if a in fset and b in fset:
            blocks.union(idx[a], idx[b])
    for a, b, perm in inserts:
        blocks.union(a, b)
    for a, b, perm in inserts:
        if perm is not ID:
            rigid[blocks.find(a)] = True

    fixed = {e: ID for e in straight}
    free = []
    for i, j in edges:
        if (i, j) in fixed:
            continue
        ri, rj = blocks.find(i), blocks.find(j)
        if ri != rj and not (rigid[ri] and rigid[rj]):
            blocks.union(ri, rj)
            rigid[blocks.find(ri)] = rigid[ri] or rigid[rj]
            fixed[i, j] = ID
        else:
            free.append((i, j))

    cycles = []
    for cyc, s in sign_cycles:
        ce = {key(cyc[t], cyc[(t + 1) % len(cyc)]) for t in range(len(cyc)) if
              cyc[t] in idx and cyc[(t + 1) % len(cyc)] in idx}
        if len(ce) == len(cyc) and ce <= set(edges):
            cycles.append((tuple(idx[x] for x in cyc), s))

    groups: dict[int, list] = {}
    for v in frontier:
        groups.setdefault(classes_uf.find(idx[v]), []).append(idx[v])
    coloured = set(range(len(comp) + len(frontier)))
    net_edges = [(i, j) for i, j in edges if i in coloured and j in coloured]
    return Problem(tuple(comp), frontier, names, edges, fixed, free, cycles,
                   list(groups.values()), inserts, net_edges)


# -- reports -----------------------------------------------------------------------

@dataclass
class Failure:
    signature: tuple
    coloring: tuple

    def describe(self) -> str:
        sig = " ".join(f"{a}{b}:{p.word}" for a, b, p in self.signature if p is not ID)
        col = " ".join(f"{v}={c}" for v, c in self.coloring)
        return f"sig[{sig or 'all straight'}] frontier[{col}]"


@dataclass
class ComponentReport:
    removed: tuple
    frontier: tuple
    signatures: int = 0
    colorings: int = 0
    failures: list = field(default_factory=list)


@dataclass
class KernelReport:
    name: str
    components: list = field(default_factory=list)
    skipped: str | None = None
    elapsed: float = 0.0

    @property
    def failures(self) -> list:
        return [f for c in self.components for f in c.failures]

    @property
    def ok(self) -> bool:
        return self.skipped is None and not self.failures

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return "SKIP"
        return "PASS" if self.ok else "FAIL"

    @property
    def checks(self) -> int:
        return sum(c.colorings for c in self.components)

    def describe(self) -> list[str]:
        head = f"{self.name}: {self.status}"
        if self.skipped:
            return [f"{head} ({self.skipped})"]
        lines = [f"{head} ({len(self.components)} component(s), {self.checks} checks, "
                 f"{self.elapsed:.2f}s)"]
        lines += ["  " + f.describe() for f in self.failures[:10]]
        return lines


@dataclass
class EntryReport:
    name: str
    instances: list = field(default_factory=list)

    @property
    def status(self) -> str:
        got = {r.status for r in self.instances}
        if "FAIL" in got:
            return "FAIL"
        if "SKIP" in got:
            return "SKIP"
        return "PASS"

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def describe(self) -> list[str]:
        return [line for r in self.instances for line in r.describe()]


def _check_signature(prob: Problem, sig: dict, max_failures: int) -> tuple[int, list]:
    net = prob.net(sig)
    checked, bad = 0, []
    for phi in prob.frontier_colorings(sig):
        checked += 1
        if not extends(net, phi):
            bad.append(Failure(
                tuple((prob.names[i], prob.names[j], sig[i, j]) for i, j in prob.net_edges),
                tuple((prob.names[v], c) for v, c in sorted(phi.items()))))
            if len(bad) >= max_failures:
                break
    return checked, bad


def _check_chunk(args):
    prob, sigs, max_failures = args
    total, out = 0, []
    for sig in sigs:
        n, bad = _check_signature(prob, sig, max_failures)
        total += n
        out += bad
    return len(sigs), total, out


def check_problem(prob: Problem, budget: int = DEFAULT_BUDGET, workers: int = 1,
                  max_failures: int = 20) -> ComponentReport:
    bound = prob.raw_signature_count()
    if bound > budget:
        raise EnumerationBudgetExceeded(f"{6}^{len(prob.free)} raw signatures")
    sigs = list(prob.signatures())
    if len(sigs) * prob.coloring_count_bound() > budget:
        raise EnumerationBudgetExceeded(
            f"{len(sigs)} signatures x {prob.coloring_count_bound()} frontier colourings")
    rep = ComponentReport(prob.removed, prob.frontier)
    if workers > 1 and len(sigs) > workers:
        chunks = [sigs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_check_chunk, [(prob, c, max_failures) for c in chunks]))
    else:
        results = [_check_chunk((prob, sigs, max_failures))]
    for n_sig, n_col, bad in results:
        rep.signatures += n_sig
        rep.colorings += n_col
        rep.failures += bad
    return rep


def verify_pattern(p: ConfigPattern, budget: int = DEFAULT_BUDGET, workers: int = 1) -> KernelReport:
    """Check every removed component of ``p``; budget overruns become SKIP."""
    start = time.perf_counter()
    rep = KernelReport(p.name)
    if not p.script.remove:
        rep.skipped = "script removes nothing"
        return rep
    try:
        for comp in removed_components(p):
            rep.components.append(check_problem(build_problem(p, comp), budget, workers))
    except EnumerationBudgetExceeded as exc:
        rep.components = []
        rep.skipped = f"enumeration budget exceeded: {exc}"
    rep.elapsed = time.perf_counter() - start
    return rep


def verify_kernel(name: str, k_bound: int = 3, budget: int = DEFAULT_BUDGET,
                  catalog: Catalog | None = None, workers: int = 1) -> EntryReport:
    cat = catalog or default_catalog()
    out = EntryReport(name)
    for _vals, pat in cat.instances(name, k_bound):
        out.instances.append(verify_pattern(pat, budget, workers))
    return out


# -- colouring lemmas on small gadgets ---------------------------------------------

@dataclass(frozen=True)
class Lemma7Row:
    sigma_uv: Perm
    color_u_out: int
    color_v_out: int
    free: int

    @property
    def part(self) -> int | None:
        if self.sigma_uv is ID:
            return 1 if self.color_u_out != self.color_v_out else None
        return 2

    @property
    def ok(self) -> bool:
        if self.part == 1:
            return self.free == 3
        if self.part == 2:
            return self.free >= 2
        return True


def lemma7_table() -> list[Lemma7Row]:
    """Free colours at the apex of a triangle whose base vertices have degree three.

    Vertices: 0 = u, 1 = v, 2 = w, 3 = u', 4 = v'.  Edges u'u, uw, wv, vv' are
    straight and uv carries every permutation in turn.
    """
    rows = []
    for s in Perm:
        net = ConstraintNet(5, [(3, 0, ID), (0, 2, ID), (2, 1, ID), (1, 4, ID), (0, 1, s)])
        for a, b in product(COLORS, repeat=2):
            free = sum(extends(net, {3: a, 4: b, 2: c}) for c in COLORS)
            rows.append(Lemma7Row(s, a, b, free))
    return rows


@dataclass
class Lemma8Report:
    k: int
    signatures: int
    colorings: int
    min_free: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def lemma8(k: int) -> Lemma8Report:
    """At least two port colours of I_k extend, for every class and pendant colouring."""
    p = build_i(k)
    p.script = ReductionScript(remove=[v for v in p.vertices if v != "u0"])
    (comp,) = removed_components(p)
    prob = build_problem(p, comp)
    port = prob.index["u0"]
    n_sig = n_col = 0
    min_free, failures = 3, []
    for sig in prob.signatures():
        n_sig += 1
        net = prob.net(sig)
        for phi in prob.frontier_colorings(sig):
            # the port is its own frontier class; keep one copy per pendant colouring
            if phi.pop(port) != 1:
                continue
            key = tuple(sorted(phi.items()))
            n_col += 1
            free = sum(extends(net, {**phi, port: c}) for c in COLORS)
            min_free = min(min_free, free)
            if free < 2:
                failures.append((sig, key, free))
    return Lemma8Report(k, n_sig, n_col, min_free, failures)
