"""Line-oriented text format for signed plane graphs.

::

    spg 1                 header, first non-comment line
    n N                   vertex count, before any rot line
    rot V U1 U2 ...       rotation of V, one line per vertex
    outer U V             a dart of the outer face
    sign U V PERM         sigma(U, V) as an image word; unset edges are straight
    color V C             precoloured vertex

``#`` starts a comment.  Every malformed line is an error carrying its line
number.
"""

from __future__ import annotations

from pathlib import Path

from .planegraph import PlaneGraph, PlaneGraphError
from .signing import COLORS, Perm, Signature, SignedPlaneGraph


class SpgError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise SpgError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse(text: str) -> SignedPlaneGraph:
    n = None
    rot: dict[int, list[int]] = {}
    outer = None
    signs: dict[tuple[int, int], tuple[Perm, int]] = {}
    colors: dict[int, int] = {}
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        if not header:
            if word != "spg" or rest != ["1"]:
                raise SpgError("expected header 'spg 1'", lineno)
            header = True
            continue
        if word == "n":
            if n is not None:
                raise SpgError("duplicate n line", lineno)
            if len(rest) != 1:
                raise SpgError("n takes one value", lineno)
            (n,) = _ints(rest, lineno)
            if n < 3:
                raise SpgError("need at least 3 vertices", lineno)
        elif word == "rot":
            if n is None:
                raise SpgError("rot before n", lineno)
            vals = _ints(rest, lineno)
            if not vals:
                raise SpgError("rot needs a vertex", lineno)
            v, nbrs = vals[0], vals[1:]
            if not 0 <= v < n:
                raise SpgError(f"vertex {v} out of range", lineno)
            if v in rot:
                raise SpgError(f"duplicate rot line for vertex {v}", lineno)
            rot[v] = nbrs
        elif word == "outer":
            if outer is not None:
                raise SpgError("duplicate outer line", lineno)
            if len(rest) != 2:
                raise SpgError("outer takes two vertices", lineno)
            outer = tuple(_ints(rest, lineno))
        elif word == "sign":
            if len(rest) != 3:
                raise SpgError("sign takes two vertices and a permutation", lineno)
            u, v = _ints(rest[:2], lineno)
            try:
                p = Perm.parse(rest[2])
            except ValueError as exc:
                raise SpgError(str(exc), lineno) from None
            key = (min(u, v), max(u, v))
            if key in signs:
                raise SpgError(f"duplicate sign for edge {u}-{v}", lineno)
            signs[key] = ((p if u < v else p.inverse), lineno)
        elif word == "color":
            if len(rest) != 2:
                raise SpgError("color takes a vertex and a colour", lineno)
            v, c = _ints(rest, lineno)
            if c not in COLORS:
                raise SpgError(f"colour {c} not in 1..3", lineno)
            if v in colors:
                raise SpgError(f"duplicate colour for vertex {v}", lineno)
            colors[v] = c
        else:
            raise SpgError(f"unknown directive {word!r}", lineno)
    if not header:
        raise SpgError("empty document")
    if n is None:
        raise SpgError("missing n line")
    missing = [v for v in range(n) if v not in rot]
    if missing:
        raise SpgError(f"missing rot lines for {missing}")
    if outer is None:
        raise SpgError("missing outer line")
    try:
        g = PlaneGraph([rot[v] for v in range(n)], outer)
    except PlaneGraphError as exc:
        raise SpgError(str(exc)) from None
    for (u, v), (_p, lineno) in signs.items():
        if not (0 <= u < n and 0 <= v < n and g.has_edge(u, v)):
            raise SpgError(f"sign on non-edge {u}-{v}", lineno)
    for v in colors:
        if not 0 <= v < n:
            raise SpgError(f"colour on unknown vertex {v}")
    return SignedPlaneGraph(g, Signature({k: p for k, (p, _l) in signs.items()}), colors)


def emit(sg: SignedPlaneGraph) -> str:
    g = sg.graph
    out = ["spg 1", f"n {g.n}"]
    out += [" ".join(["rot", str(v), *map(str, g.neighbors(v))]) for v in range(g.n)]
    out.append(f"outer {g.outer_dart[0]} {g.outer_dart[1]}")
    out += [f"sign {u} {v} {p.word}" for (u, v), p in sg.sig.items()]
    out += [f"color {v} {c}" for v, c in sorted(sg.precolor.items())]
    return "\n".join(out) + "\n"


def load(path: str | Path) -> SignedPlaneGraph:
    return parse(Path(path).read_text("utf-8"))


def save(sg: SignedPlaneGraph, path: str | Path):
    Path(path).write_text(emit(sg), "utf-8")
