"""One pass over a host collecting every catalogue occurrence and structural flag."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..classify import Structure, check_j_face_lemmas
from ..planegraph import (boundary_audit, facial_cycle_check, forbidden_cycle_check,
                          separating_cycles, string_length_check)
from ..signing import SignedPlaneGraph
from .catalog import Catalog, default_catalog
from .match import match
from .pattern import build_j


@dataclass(frozen=True)
class Finding:
    kind: str            # "occurrence" or "structure"
    label: str
    vertices: frozenset

    def describe(self) -> str:
        return self.label


@dataclass
class ScanSummary:
    findings: list = field(default_factory=list)

    @property
    def occurrences(self) -> list[Finding]:
        return [f for f in self.findings if f.kind == "occurrence"]

    @property
    def structural(self) -> list[Finding]:
        return [f for f in self.findings if f.kind == "structure"]

    @property
    def empty(self) -> bool:
        return not self.findings

    def entries(self) -> set[str]:
        return {f.label.split(":", 1)[0].split("[", 1)[0] for f in self.occurrences}

    def describe(self) -> list[str]:
        return [f.describe() for f in self.findings]

    def near(self, vertices) -> list[str]:
        vs = set(vertices)
        return [f.label for f in self.findings if f.vertices & vs]


def scan_all(sg: SignedPlaneGraph, max_k: int = 3, structure: Structure | None = None,
             catalog: Catalog | None = None, separating_max: int = 12) -> ScanSummary:
    cat = catalog or default_catalog()
    g = sg.graph
    out = ScanSummary()
    add = lambda kind, label, vs: out.findings.append(Finding(kind, label, frozenset(vs)))  # noqa: E731

    for name in cat.names():
        for _vals, pat in cat.instances(name, max_k):
            for occ in match(sg, pat):
                add("occurrence", occ.describe(), occ.image)

    audit = boundary_audit(g)
    if audit.too_long:
        add("structure", f"outer face has length {audit.outer_length} > 12", g.outer.walk)
    for a, b in audit.chords:
        add("structure", f"chord {a}-{b} of the outer boundary", (a, b))
    for v in audit.cut_vertices:
        add("structure", f"cut vertex {v}", (v,))
    for v, d in audit.low_degree_internal:
        add("structure", f"internal vertex {v} has degree {d}", (v,))
    for c in forbidden_cycle_check(g):
        add("structure", f"forbidden {len(c)}-cycle {list(c)}", c)
    for c in facial_cycle_check(g):
        add("structure", f"non-facial {len(c)}-cycle {list(c)}", c)
    for c in separating_cycles(g, separating_max):
        add("structure", f"separating {len(c)}-cycle {list(c)}", c)
    for rec in string_length_check(g):
        add("structure", f"{len(rec.vertices)}-string on face {rec.face} "
            f"of length {g.faces[rec.face].length}", rec.vertices)

    st = structure or Structure.of(sg)
    for r in st.flakes.rejected:
        add("structure", f"triangle component rejected as snowflake ({r.reason})", r.vertices)
    for k in range(2, max(max_k, 4) + 1):
        for occ in match(sg, build_j(k)):
            for msg in check_j_face_lemmas(st.cls, st.nice, [(k, occ.map)]):
                add("structure", msg, occ.image)
    return out
