"""Brute-force reference implementations used to pin down expected values.

Nothing here imports the search, matching or kernel code under test.  Each
oracle enumerates its space directly and reads permutations as image words.
"""

from __future__ import annotations

from itertools import permutations, product

import networkx as nx

COLORS = (1, 2, 3)


def image(word: str, c: int) -> int:
    return int(word[c - 1])


def arc_words(sg) -> dict:
    """(u, v) -> image word of sigma(u, v), both directions."""
    out = {}
    for u, v in sg.graph.edges():
        w = sg.sigma(u, v).word
        inv = [0, 0, 0]
        for c in COLORS:
            inv[image(w, c) - 1] = c
        out[u, v] = w
        out[v, u] = "".join(map(str, inv))
    return out


def proper(words: dict, phi: dict) -> bool:
    return all(phi[v] != image(w, phi[u]) for (u, v), w in words.items()
               if u in phi and v in phi)


def naive_colorings(sg, fixed=None):
    words = arc_words(sg)
    pre = dict(sg.precolor)
    pre.update(fixed or {})
    free = [v for v in range(sg.n) if v not in pre]
    for cols in product(COLORS, repeat=len(free)):
        phi = dict(pre)
        phi.update(zip(free, cols))
        if proper(words, phi):
            yield phi


def naive_count(sg, fixed=None) -> int:
    return sum(1 for _ in naive_colorings(sg, fixed))


def naive_cycles(g, max_len: int) -> set:
    """Vertex sets and edge sets of all cycles up to ``max_len``, via networkx."""
    G = nx.Graph(g.edges())
    out = set()
    for cyc in nx.simple_cycles(G, length_bound=max_len):
        if len(cyc) >= 3:
            k = len(cyc)
            out.add(frozenset(frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)))
    return out


def cycle_word_product(sg, cyc) -> str:
    """Compose the arc words around a cycle, first arc applied first."""
    words = arc_words(sg)
    cur = {c: c for c in COLORS}
    k = len(cyc)
    for i in range(k):
        w = words[cyc[i], cyc[(i + 1) % k]]
        cur = {c: image(w, cur[c]) for c in COLORS}
    return "".join(str(cur[c]) for c in COLORS)


def naive_lemma7():
    """Rows (sigma_uv, colour u', colour v', free colours at w) over all 3^5 colourings."""
    rows = []
    for s in ("".join(p) for p in permutations("123")):
        # 0=u, 1=v, 2=w, 3=u', 4=v'
        words = {(3, 0): "123", (0, 2): "123", (2, 1): "123", (1, 4): "123", (0, 1): s}
        for a, b in product(COLORS, repeat=2):
            free = set()
            for cu, cv, cw in product(COLORS, repeat=3):
                phi = {0: cu, 1: cv, 2: cw, 3: a, 4: b}
                if all(phi[y] != image(w, phi[x]) for (x, y), w in words.items()):
                    free.add(cw)
            rows.append((s, a, b, len(free)))
    return rows


def naive_i1_port_colours():
    """Minimum number of extendable port colours of one negative triangle.

    Raw enumeration over all 6^3 arc words of the triangle u0 u1 w1, every
    colour forbidden at u1 and w1 by their outside neighbour, and every port
    colour.  No switching reduction is used.
    """
    perms_ = ["".join(p) for p in permutations("123")]
    worst = 3
    n_sig = 0
    for a, b, c in product(perms_, repeat=3):
        # arcs u0->u1, u1->w1, w1->u0 ; cycle product must be non-identity
        cur = {x: image(c, image(b, image(a, x))) for x in COLORS}
        if all(cur[x] == x for x in COLORS):
            continue
        n_sig += 1
        words = {(0, 1): a, (1, 2): b, (2, 0): c}
        for f1, f2 in product(COLORS, repeat=2):
            ok = 0
            for c0 in COLORS:
                if any(phi0 for phi0 in _tri_ext(words, c0, f1, f2)):
                    ok += 1
            worst = min(worst, ok)
    return n_sig, worst


def _tri_ext(words, c0, f1, f2):
    for c1, c2 in product(COLORS, repeat=2):
        if c1 == f1 or c2 == f2:
            continue
        phi = {0: c0, 1: c1, 2: c2}
        yield all(phi[y] != image(w, phi[x]) for (x, y), w in words.items())


def naive_matches(sg, pattern) -> set:
    """Occurrences of a small pattern by trying every injective assignment.

    Returns the set of (image set, port images) keys, the deduplication key of
    the matcher.
    """
    g = sg.graph
    names = list(pattern.vertices)
    edges = {frozenset(e) for e in pattern.edges}
    faces = {frozenset(frozenset(d) for d in f.darts()): f.length for f in g.faces}
    found = set()
    for hs in permutations(range(g.n), len(names)):
        m = dict(zip(names, hs))
        if any(not pattern.vertices[v].admits(g.degree(m[v])) for v in names):
            continue
        if any(pattern.vertices[v].internal and g.is_external(m[v]) for v in names):
            continue
        if any((frozenset((a, b)) in edges) != g.has_edge(m[a], m[b])
               for i, a in enumerate(names) for b in names[i + 1:]):
            continue
        ok = True
        for walk in pattern.faces:
            k = len(walk)
            es = frozenset(frozenset((m[walk[i]], m[walk[(i + 1) % k]])) for i in range(k))
            if faces.get(es) != k:
                ok = False
        for cyc, sign in pattern.signs:
            if sign == "ANY":
                continue
            pos = cycle_word_product(sg, [m[x] for x in cyc]) == "123"
            if pos != (sign == "POS"):
                ok = False
        if ok:
            found.add((frozenset(hs), tuple(m[p] for p in pattern.ports)))
    return found
