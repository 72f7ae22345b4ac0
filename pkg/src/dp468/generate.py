"""Random instances in the class of plane graphs without 4-, 6- or 8-cycles.

Two sources:

* :func:`generate` grows ears inside a chordless outer cycle of length at
  most 12 and rejects any ear that would close a forbidden cycle.
* :func:`realize` builds a host around a configuration pattern: the pattern
  is drawn face by face, every vertex with a fixed degree gets pendant stubs,
  and a ring through the stubs and the unconstrained vertices becomes f0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .configs.match import check_mapping
from .configs.pattern import ConfigPattern
from .embedding import Embedding
from .planegraph import PlaneGraph, forbidden_cycle_check
from .signing import Perm, Signature, SignedPlaneGraph, cycle_product

FORBIDDEN = (4, 6, 8)
LEGAL_OUTER = (3, 5, 7, 9, 10, 11, 12)


class GenerationBudgetExceeded(RuntimeError):
    pass


@dataclass
class GenOptions:
    boundary: int | None = None
    max_tries: int = 400
    ear_weights: dict = field(default_factory=lambda: {1: 5, 2: 4, 3: 3, 4: 2, 5: 1, 6: 1, 7: 1})
    fix_strings: bool = True
    sample: int = 16
    precolor: bool = False
    apex_weight: int = 0  # weight of two-edge ears on a single edge, which make triangles


def _path_lengths(emb: Embedding, a: int, b: int, max_len: int) -> set[int]:
    """Lengths of simple a-b paths with at most ``max_len`` edges."""
    out = set()
    on = {a}

    def dfs(v, d):
        for u in emb.rot[v]:
            if u == b:
                out.add(d + 1)
                continue
            if u in on or d + 1 >= max_len:
                continue
            on.add(u)
            dfs(u, d + 1)
            on.discard(u)

    dfs(a, 0)
    return out


def _ear_ok(emb: Embedding, a: int, b: int, t: int) -> bool:
    if t == 1 and emb.has_edge(a, b):
        return False
    return not any(t + ell in FORBIDDEN for ell in _path_lengths(emb, a, b, 8 - t))


def random_signature(g: PlaneGraph, rng: random.Random) -> Signature:
    """Straight BFS tree, uniform permutations on the co-tree edges."""
    tree = set()
    seen = {0}
    order = [0]
    for v in order:
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                order.append(u)
                tree.add((min(u, v), max(u, v)))
    perms = list(Perm)
    return Signature({e: rng.choice(perms) for e in g.edges() if e not in tree})


def _split_ok(k: int, d: int, t: int) -> bool:
    la, lb = t + d, t + k - d
    if t == 2 and 3 in (la, lb):
        return False  # the new apex would be a 2-vertex on a triangle
    return min(la, lb) >= 3 and la not in FORBIDDEN and lb not in FORBIDDEN


def _ear_options(f, k, t_max, ear_weights, apex_weight=0):
    opts = []
    for t, w in ear_weights.items():
        if t > t_max:
            continue
        for i in range(k):
            for j in range(i + 1, k):
                if _split_ok(k, j - i, t):
                    opts.append((w, i, j, t))
    if apex_weight and t_max >= 2 and k + 1 not in FORBIDDEN:
        opts += [(apex_weight, i, i + 1, 2) for i in range(k - 1)]
    return opts


def _string_violations(emb: Embedding, outer: set) -> int:
    """Runs of 2-vertices along inner faces that are too long for the face."""
    bad = 0
    for f in emb.faces():
        if f[0] in outer:
            continue
        k = len(f)
        two = [len(emb.rot[d[0]]) == 2 for d in f]
        limit = (k - 1) // 2
        if all(two):
            bad += k - limit + 1
            continue
        start = two.index(False)
        run = 0
        for i in range(1, k + 1):
            if two[(start + i) % k]:
                run += 1
            else:
                if run and run >= limit:
                    bad += run - limit + 1
                run = 0
    return bad


def _candidates(emb, faces, external, rng, t_max, ear_weights, sample, apex_weight=0):
    out = []
    for f in faces:
        for w, i, j, t in _ear_options(f, len(f), t_max, ear_weights, apex_weight):
            a, b = f[i][0], f[j][0]
            if t == 1 and a in external and b in external:
                continue
            out.append((w * rng.random(), f, a, b, t))
    out.sort(key=lambda c: -c[0])
    picked = []
    for _, f, a, b, t in out:
        if _ear_ok(emb, a, b, t):
            picked.append((f, a, b, t))
            if len(picked) >= sample:
                break
    return picked


def _best_ear(emb, outer_dart, external, rng, t_max, ear_weights, sample=12, apex_weight=0):
    outer = set(emb.face(outer_dart))
    faces = [f for f in emb.faces() if f[0] not in outer and len(f) >= 5]
    best, best_score = None, None
    for f, a, b, t in _candidates(emb, faces, external, rng, t_max, ear_weights, sample,
                                  apex_weight):
        trial = Embedding(emb.rot)
        trial._next = emb._next
        trial.add_path(Embedding.corner_of(f, a), Embedding.corner_of(f, b), t)
        score = (_string_violations(trial, set(trial.face(outer_dart))),
                 sum(len(r) == 2 for r in trial.rot.values()))
        if best_score is None or score < best_score:
            best, best_score = trial, score
    return best, best_score


def _grow(n: int, L: int, rng: random.Random, opts: GenOptions):
    emb = Embedding.cycle(L)
    outer_dart = (1, 0)
    external = set(range(L))
    target = n - rng.randint(0, max(0, n // 6))
    score = (_string_violations(emb, set(emb.face(outer_dart))), L)
    while len(emb.rot) < target or (opts.fix_strings and score[0]):
        nxt, sc = _best_ear(emb, outer_dart, external, rng, n - len(emb.rot) + 1,
                            opts.ear_weights, sample=opts.sample,
                            apex_weight=opts.apex_weight)
        if nxt is None:
            break
        emb, score = nxt, sc
    return emb, outer_dart, external, score[0]


def generate(n: int, seed: int, options: GenOptions | None = None, **kw) -> SignedPlaneGraph:
    """A connected instance on at most ``n`` vertices with a chordless outer face.

    Deterministic per seed.  Each step tries a sample of legal ears and keeps
    one leaving the fewest over-long strings of 2-vertices; once the vertex
    budget (less a random slack) is spent, ears are only added while they
    reduce that count.
    """
    opts = options or GenOptions(**kw)
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    for _ in range(opts.max_tries):
        if opts.boundary is not None:
            L = opts.boundary
            if L in FORBIDDEN or L < 3 or L > n:
                raise ValueError(f"boundary length {L} is not allowed")
        else:
            L = rng.choice([x for x in LEGAL_OUTER if x <= n] or [3])
        emb, outer_dart, external, bad = _grow(n, L, rng, opts)
        if opts.fix_strings and bad:
            continue
        g, _ = emb.freeze(outer_dart)
        if forbidden_cycle_check(g, FORBIDDEN):
            continue
        sg = SignedPlaneGraph(g, random_signature(g, rng))
        if opts.precolor:
            from .solver import boundary_colorings
            phi = next(boundary_colorings(sg, 1, rng), None)
            if phi is None:
                continue
            sg = sg.with_precolor(phi)
        return sg
    raise GenerationBudgetExceeded(f"no instance after {opts.max_tries} attempts (n={n})")


# -- gadget hosts ----------------------------------------------------------------

class RealizeFailed(RuntimeError):
    pass


@dataclass
class Realization:
    sg: SignedPlaneGraph
    mapping: dict = field(default_factory=dict)


def _working_face(emb: Embedding, pattern_darts: list):
    """The one face that carries none of the recorded pattern-face darts."""
    taken = set(pattern_darts)
    cands = [f for f in emb.faces() if not taken.intersection(f)]
    if len(cands) != 1:
        raise RealizeFailed("could not isolate the working face")
    return cands[0]


def _record_face(emb: Embedding, ids, pf: list):
    want = set(ids)
    for f in emb.faces():
        if len(f) == len(ids) and {d[0] for d in f} == want and not set(pf).intersection(f):
            pf.append(f[0])
            return
    raise RealizeFailed("new pattern face not found")


def _draw_pattern(p: ConfigPattern, rng: random.Random):
    emb = Embedding()
    at: dict[str, int] = {}
    faces = sorted(p.faces, key=len, reverse=True)
    if not faces:
        raise RealizeFailed("pattern has no faces to start from")
    first = faces[0]
    k = len(first)
    emb = Embedding.cycle(k)
    emb._next = k
    for i, name in enumerate(first):
        at[name] = i
    done_faces = {0}
    pf = [(0, 1)]
    face_edges = {frozenset((f[i], f[(i + 1) % len(f)])) for f in faces for i in range(len(f))}
    edges_left = {frozenset(e) for e in p.edges} - {
        frozenset((first[i], first[(i + 1) % k])) for i in range(k)}

    def w_face():
        return _working_face(emb, pf)

    progress = True
    while progress:
        progress = False
        for fi, walk in enumerate(faces):
            if fi in done_faces:
                continue
            placed = [x in at for x in walk]
            if not any(placed):
                continue
            k = len(walk)
            if all(placed):
                raise RealizeFailed(f"face {walk} closes a cycle of placed vertices")
            start = next(i for i in range(k) if placed[i] and not placed[i - 1])
            seg = []
            i = start
            while placed[i % k]:
                seg.append(walk[i % k])
                i += 1
            if sum(placed) != len(seg):
                raise RealizeFailed(f"placed vertices of {walk} are not contiguous")
            rest = [walk[(start + len(seg) + r) % k] for r in range(k - len(seg))]
            W = w_face()
            if len(seg) == 1:
                v = at[seg[0]]
                corners = [Embedding.corner_of(W[i:] + W[:i], v) for i, d in enumerate(W) if d[1] == v]
                pv, _, _ = rng.choice(corners)
                new = [emb.new_vertex() for _ in rest]
                chain = [v, *new, v]
                for i2 in range(1, len(chain) - 1):
                    emb.rot[chain[i2]] = [chain[i2 - 1], chain[i2 + 1]]
                first_n, last_n = new[0], new[-1]
                if rng.random() < 0.5:
                    first_n, last_n = last_n, first_n
                emb.place(v, pv, first_n)
                emb.place(v, first_n, last_n)
            else:
                ids = [at[x] for x in seg]
                a, b = ids[0], ids[-1]
                darts = set(W)
                fwd = all((ids[i], ids[i + 1]) in darts for i in range(len(ids) - 1))
                bwd = all((ids[i + 1], ids[i]) in darts for i in range(len(ids) - 1))
                if not (fwd or bwd):
                    raise RealizeFailed(f"segment {seg} is not on the working face")
                if bwd and not fwd:
                    a, b = b, a
                    rest = rest[::-1]
                # W walks a -> ... -> b; draw b -> rest -> a through W
                cb = next(Embedding.corner_of(W[i:] + W[:i], b) for i, d in enumerate(W)
                          if d[1] == b and W[(i + 1) % len(W)][1] not in ids)
                ca = next(Embedding.corner_of(W[i:] + W[:i], a) for i, d in enumerate(W)
                          if d[1] == a and d[0] not in ids)
                new = emb.add_path(cb, ca, len(rest) + 1)
            for name, vid in zip(rest, new):
                at[name] = vid
            _record_face(emb, [at[x] for x in walk], pf)
            edges_left -= {frozenset((walk[i], walk[(i + 1) % k])) for i in range(k)}
            done_faces.add(fi)
            progress = True
        for e in sorted(edges_left, key=sorted):
            a, b = sorted(e)
            if e in face_edges or (a in at) == (b in at):
                continue
            if b in at:
                a, b = b, a
            W = w_face()
            v = at[a]
            corners = [Embedding.corner_of(W[i:] + W[:i], v) for i, d in enumerate(W) if d[1] == v]
            at[b] = emb.add_pendant(rng.choice(corners))
            edges_left.discard(e)
            progress = True
    if len(at) != len(p.vertices) or edges_left:
        raise RealizeFailed("pattern could not be drawn by face and pendant steps")
    return emb, at, pf


def _ring(emb: Embedding, p: ConfigPattern, at: dict, pf, rng: random.Random, ring_lengths):
    W = _working_face(emb, pf)
    back = {v: k for k, v in at.items()}
    corners_of: dict[int, list] = {}
    for i, (x, v) in enumerate(W):
        corners_of.setdefault(v, []).append((x, v, W[(i + 1) % len(W)][1]))
    star_darts = set()
    stub_plan: dict[tuple, int] = {}
    for name, pv in p.vertices.items():
        v = at[name]
        if pv.theta is None:
            _, _, q = rng.choice(corners_of[v])
            star_darts.add((v, q))
            continue
        deficit = pv.theta - p.degree(name) + (rng.randint(0, 1) if pv.at_least else 0)
        for _ in range(deficit):
            c = rng.choice(corners_of[v])
            stub_plan[c] = stub_plan.get(c, 0) + 1
    for (x, v, q), cnt in stub_plan.items():
        prev = x
        for _ in range(cnt):
            prev = emb.add_pendant((prev, v, q))
    W = _working_face(emb, pf)
    order = []  # darts by which W leaves each attachment point, in walk order
    for i, (x, v) in enumerate(W):
        nxt = W[(i + 1) % len(W)][1]
        if v not in back and emb.rot[v] == [x]:
            order.append((v, x))
        elif (v, nxt) in star_darts:
            order.append((v, nxt))
            star_darts.discard((v, nxt))
    if len(order) < 2:
        raise RealizeFailed("not enough attachment points for a ring")
    leave = {d[0]: d for d in order}
    names = [a for a, _ in order]
    m = len(names)
    total = 0
    for i in range(m):
        a, b = names[i], names[(i + 1) % m]
        lo = 2 if (a in back and b in back) or emb.has_edge(a, b) else 1
        closing = _path_lengths(emb, a, b, 8) if a != b else set()
        valid = [ell for ell in range(lo, 13) if not any(ell + d in FORBIDDEN for d in closing)]
        if not valid:
            raise RealizeFailed("no ring segment length avoids the forbidden cycles")
        ell = valid[min(len(valid) - 1, rng.choice(ring_lengths))]
        total += ell
        W = emb.face(leave[a])
        ia, ib = W.index(leave[a]), W.index(leave[b])
        ca = (W[ia - 1][0], a, leave[a][1])
        cb = (W[ib - 1][0], b, leave[b][1])
        new = emb.add_path(cb, ca, ell)
        leave[a] = (a, new[-1] if new else b)
    return leave[names[-1]], total


def _fit_signs(g: PlaneGraph, p: ConfigPattern, at: dict, ids: dict, rng: random.Random):
    sig = random_signature(g, rng)
    sg = SignedPlaneGraph(g, sig)
    owner = {}
    for ci, (cyc, _) in enumerate(p.signs):
        for i in range(len(cyc)):
            e = frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))
            owner.setdefault(e, []).append(ci)
    for ci, (cyc, sign) in enumerate(p.signs):
        if sign == "ANY":
            continue
        hc = [ids[at[x]] for x in cyc]
        free = [i for i in range(len(cyc))
                if owner[frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))] == [ci]]
        if not free:
            raise RealizeFailed(f"sign of {cyc} has no private edge")
        i = rng.choice(free)
        a, b = hc[i], hc[(i + 1) % len(hc)]
        perms = list(Perm)
        rng.shuffle(perms)
        for q in perms:
            trial = sg.with_sig(sg.sig.replace({(a, b): q}))
            if (cycle_product(trial, hc) is Perm.ID) == (sign == "POS"):
                sg = trial
                break
    return sg


def realize(p: ConfigPattern, seed: int = 0, tries: int = 300, max_outer: int | None = None,
            ring_lengths=(0, 0, 0, 1, 2)) -> Realization:
    """A host in the forbidden-cycle class containing ``p`` at a known mapping."""
    rng = random.Random(seed)
    last = None
    for _ in range(tries):
        try:
            emb, at, pf = _draw_pattern(p, rng)
            outer, outer_len = _ring(emb, p, at, pf, rng, ring_lengths)
            if max_outer is not None and outer_len > max_outer:
                last = f"outer length {outer_len}"
                continue
            g, ids = emb.freeze(outer)
        except RealizeFailed as exc:
            last = str(exc)
            continue
        if forbidden_cycle_check(g, FORBIDDEN):
            last = "forbidden cycle"
            continue
        sg = _fit_signs(g, p, at, ids, rng)
        mapping = {name: ids[v] for name, v in at.items()}
        if check_mapping(sg, p, mapping):
            return Realization(sg, mapping)
        last = "mapping check failed"
    raise RealizeFailed(f"{p.name}: no host after {tries} tries ({last})")
