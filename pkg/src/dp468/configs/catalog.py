"""Line-oriented catalogue of reducible configurations.

Grammar (one directive per line, whitespace separated, ``#`` starts a comment)::

    entry NAME                  open an entry; closed by ``end``
    provenance WORD             text-defined | reconstructed-from-proof
    source TEXT                 how the entry was reconstructed (free text)
    note TEXT                   residual ambiguity or remarks (free text)
    from BASE [K]               start from another entry, or from the I / J
                                chain builders; K is an integer or ``k``/``j``
    vertex NAME THETA [Z]       THETA: integer, ``N+`` (at least N) or ``*``;
                                Z marks a must-be-internal vertex.  Re-declaring
                                a vertex inherited through ``from`` overrides it
    edge A B
    tri A B C [POS|NEG|ANY]     three edges, a facial walk and a sign line
    face V1 V2 ...              facial walk over existing edges
    cycle V1 V2 ... POS|NEG|ANY sign constraint on a cycle of the pattern
    opposite C A B              A and B are not consecutive around C
    port V
    ext I V [K]                 I_K-extension at V (K defaults to ``k``)
    ext J V KMAX                J_j-extension at V for 1 <= j <= KMAX
    STRAIGHT V1 V2 ...          path made straight by switching before surgery
    REMOVE V ... | REMOVE @all
    IDENTIFY A B                merge B into A (implies equal colours)
    INSERT A B PERM             add edge with sigma(A, B) = PERM
    EQUAL A B                   extra post-colouring equality
    end

Entries that declare any script directive replace the script inherited via
``from``; otherwise the inherited script is kept.  Extensions then add their
own script lines (an I-extension at a removed vertex removes the whole chain;
a J-extension removes each positive triangle and re-attaches it by a straight
inserted edge).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator

from ..signing import Perm
from .pattern import (STAR, BadK, ConfigPattern, PVertex, ReductionScript, build_i,
                      build_j, extend_at_i, extend_at_j)

SCRIPT_WORDS = ("STRAIGHT", "REMOVE", "IDENTIFY", "INSERT", "EQUAL")
FREE_TEXT = ("source", "note", "provenance")
KNOWN = {"entry", "end", "from", "vertex", "edge", "tri", "face", "cycle", "opposite",
         "port", "ext", *SCRIPT_WORDS, *FREE_TEXT}


class CatalogSyntaxError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class UnknownEntry(KeyError):
    pass


@dataclass
class Entry:
    name: str
    directives: list = field(default_factory=list)

    def values(self, word: str) -> list[tuple[str, ...]]:
        return [args for w, args in self.directives if w == word]

    @property
    def provenance(self) -> str:
        got = self.values("provenance")
        return got[0][0] if got else "text-defined"

    @property
    def notes(self) -> list[str]:
        return [" ".join(a) for a in self.values("note")]

    @property
    def sources(self) -> list[str]:
        return [" ".join(a) for a in self.values("source")]

    @property
    def has_script(self) -> bool:
        return any(w in SCRIPT_WORDS for w, _ in self.directives)


@dataclass
class Catalog:
    entries: dict = field(default_factory=dict)

    def __contains__(self, name):
        return name in self.entries

    def __iter__(self):
        return iter(self.entries.values())

    def names(self) -> list[str]:
        return list(self.entries)

    def __getitem__(self, name) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownEntry(name) from None

    # -- parameters --------------------------------------------------------
    def params(self, name: str) -> tuple[set, dict]:
        """Free parameters of an entry and the bound for ``j`` if any."""
        e = self[name]
        free, caps = set(), {}
        for args in e.values("from"):
            if args[0] in ("I", "J"):
                if len(args) < 2 or args[1] in ("k", "j"):
                    free.add("k")
            else:
                f2, c2 = self.params(args[0])
                free |= f2
                caps.update(c2)
        for args in e.values("ext"):
            if args[0] == "I" and (len(args) < 3 or not args[2].isdigit()):
                free.add("k")
            if args[0] == "J":
                free.add("j")
                caps["j"] = min(caps.get("j", 99), int(args[2]))
        return free, caps

    def instances(self, name: str, k_bound: int = 3) -> Iterator[tuple[dict, ConfigPattern]]:
        free, caps = self.params(name)
        ks = range(1, k_bound + 1) if "k" in free else [1]
        js = range(1, min(k_bound, caps.get("j", k_bound)) + 1) if "j" in free else [1]
        for k in ks:
            for j in js:
                vals = {p: v for p, v in (("k", k), ("j", j)) if p in free}
                yield vals, self.instantiate(name, k=k, j=j)

    # -- building ----------------------------------------------------------
    def instantiate(self, name: str, k: int = 1, j: int = 1) -> ConfigPattern:
        pat = self._build(name, k, j)
        tag = name
        free, _ = self.params(name)
        if free:
            tag += "[" + ",".join(f"{p}={dict(k=k, j=j)[p]}" for p in sorted(free)) + "]"
        pat.name = tag
        return pat.validate()

    def _build(self, name: str, k: int, j: int) -> ConfigPattern:
        e = self[name]
        pat = ConfigPattern(name)
        for args in e.values("from"):
            base = args[0]
            kk = _param(args[1], k, j) if len(args) > 1 else k
            if base == "I":
                pat = build_i(kk)
            elif base == "J":
                pat = build_j(kk)
            else:
                pat = self._build(base, k, j)
            pat.name = name
        pat.provenance = e.provenance
        pat.notes = e.notes
        if e.has_script:
            pat.script = ReductionScript()
        for word, args in e.directives:
            if word == "vertex":
                theta, at_least = _theta(args[1])
                pv = PVertex(args[0], theta, len(args) > 2 and args[2] == "Z", at_least)
                pat.vertices[args[0]] = pv
            elif word == "edge":
                pat.add_edge(*args)
            elif word == "tri":
                pat.add_triangle(args[0], args[1], args[2], args[3] if len(args) > 3 else "ANY")
            elif word == "face":
                pat.faces.append(tuple(args))
            elif word == "cycle":
                pat.signs.append((tuple(args[:-1]), args[-1]))
            elif word == "opposite":
                pat.opposite.append(tuple(args))
            elif word == "port":
                pat.ports.append(args[0])
        s = pat.script
        for word, args in e.directives:
            if word == "STRAIGHT":
                s.straight.append(tuple(args))
            elif word == "REMOVE":
                s.remove += list(pat.vertices) if args == ("@all",) else list(args)
            elif word == "IDENTIFY":
                s.identify.append(tuple(args))
            elif word == "EQUAL":
                s.equal.append(tuple(args))
            elif word == "INSERT":
                s.insert.append((args[0], args[1], Perm.parse(args[2])))
        for args in e.values("ext"):
            kind, v = args[0], args[1]
            if kind == "I":
                pat = extend_at_i(pat, v, _param(args[2], k, j) if len(args) > 2 else k)
            elif kind == "J":
                pat = extend_at_j(pat, v, j)
        return pat

    # -- text ----------------------------------------------------------------
    def emit(self) -> str:
        out = []
        for e in self.entries.values():
            out.append(f"entry {e.name}")
            for word, args in e.directives:
                out.append("  " + " ".join((word, *args)))
            out.append("end")
            out.append("")
        return "\n".join(out)


def _param(tok: str, k: int, j: int) -> int:
    if tok == "k":
        return k
    if tok == "j":
        return j
    return int(tok)


def _theta(tok: str):
    if tok == "*":
        return STAR, False
    if tok.endswith("+"):
        return int(tok[:-1]), True
    return int(tok), False


def _check_args(lineno: int, word: str, args: tuple):
    need = {"vertex": (2, 3), "edge": (2, 2), "tri": (3, 4), "opposite": (3, 3),
            "port": (1, 1), "ext": (2, 3), "IDENTIFY": (2, 2), "EQUAL": (2, 2),
            "INSERT": (3, 3), "from": (1, 2), "provenance": (1, 1)}
    lo, hi = need.get(word, (1, 10**6))
    if not lo <= len(args) <= hi:
        raise CatalogSyntaxError(lineno, f"'{word}' takes {lo}..{hi} arguments, got {len(args)}")
    if word == "vertex":
        try:
            _theta(args[1])
        except ValueError:
            raise CatalogSyntaxError(lineno, f"bad degree spec {args[1]!r}") from None
        if len(args) == 3 and args[2] != "Z":
            raise CatalogSyntaxError(lineno, f"expected Z, got {args[2]!r}")
    if word == "cycle" and args[-1] not in ("POS", "NEG", "ANY"):
        raise CatalogSyntaxError(lineno, "cycle line must end with POS, NEG or ANY")
    if word == "tri" and len(args) == 4 and args[3] not in ("POS", "NEG", "ANY"):
        raise CatalogSyntaxError(lineno, f"bad sign label {args[3]!r}")
    if word == "INSERT":
        try:
            Perm.parse(args[2])
        except ValueError as exc:
            raise CatalogSyntaxError(lineno, str(exc)) from None
    if word == "ext":
        if args[0] not in ("I", "J"):
            raise CatalogSyntaxError(lineno, "ext kind must be I or J")
        if args[0] == "J" and (len(args) != 3 or not args[2].isdigit()):
            raise CatalogSyntaxError(lineno, "ext J needs an integer bound")


def parse(text: str) -> Catalog:
    cat = Catalog()
    cur: Entry | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        args = tuple(rest)
        if word not in KNOWN:
            raise CatalogSyntaxError(lineno, f"unknown directive {word!r}")
        if word == "entry":
            if cur is not None:
                raise CatalogSyntaxError(lineno, f"entry {cur.name} not closed")
            if len(args) != 1:
                raise CatalogSyntaxError(lineno, "entry takes one name")
            if args[0] in cat.entries:
                raise CatalogSyntaxError(lineno, f"duplicate entry {args[0]}")
            cur = Entry(args[0])
            continue
        if cur is None:
            raise CatalogSyntaxError(lineno, f"'{word}' outside an entry")
        if word == "end":
            cat.entries[cur.name] = cur
            cur = None
            continue
        _check_args(lineno, word, args)
        if word == "from" and args[0] not in ("I", "J") and args[0] not in cat.entries:
            raise CatalogSyntaxError(lineno, f"unknown base entry {args[0]}")
        cur.directives.append((word, args))
    if cur is not None:
        raise CatalogSyntaxError(len(text.splitlines()), f"entry {cur.name} not closed")
    for e in cat:
        try:
            for _vals, _pat in cat.instances(e.name, k_bound=1):
                pass
        except (ValueError, BadK) as exc:
            raise CatalogSyntaxError(0, f"entry {e.name}: {exc}") from None
    return cat


def load(path: str | Path | None = None) -> Catalog:
    if path is None:
        text = resources.files("dp468.configs").joinpath("catalog.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return parse(text)


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load()
    return _DEFAULT
