"""Exact-rational discharging ledger: rules R1-R6, snowflake accounts, charge claims.

Element ids are ``v<i>`` for vertices, ``f<i>`` for faces and ``S<i>`` for
snowflakes.  Every transfer records the rule that caused it.  Snowflake
accounts only ever hold R5 credits; the rest of a snowflake's charge lives on
its member vertices and faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .classify import Role, Snowflake, Structure
from .planegraph import strings
from .signing import SignedPlaneGraph

INT64 = 2 ** 63 - 1

R1_AMOUNT = Fraction(4, 3)
R2_LOW, R2_HIGH = Fraction(5, 9), Fraction(1)
R4_BAD, R4_SMALL = Fraction(2, 9), Fraction(2, 27)
R5_ONE, R5_TWO = Fraction(2, 27), Fraction(4, 27)
R6_CAP = Fraction(1, 4)


class UnmodeledStructure(Exception):
    pass


def checked(x: Fraction) -> Fraction:
    if abs(x.numerator) > INT64 or x.denominator > INT64:
        raise OverflowError(f"{x} leaves the 64-bit range")
    return x


def vid(v: int) -> str:
    return f"v{v}"


def fid(f: int) -> str:
    return f"f{f}"


@dataclass(frozen=True)
class Transfer:
    rule: str
    src: str
    dst: str
    amount: Fraction
    via: str | None = None


@dataclass
class Ledger:
    initial: dict = field(default_factory=dict)
    transfers: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def add(self, rule, src, dst, amount, via=None):
        if amount <= 0:
            raise ValueError("transfers carry positive charge")
        self.transfers.append(Transfer(rule, src, dst, checked(Fraction(amount)), via))

    def final(self) -> dict:
        acc = dict(self.initial)
        for t in self.transfers:
            acc[t.src] = checked(acc[t.src] - t.amount)
            acc[t.dst] = checked(acc[t.dst] + t.amount)
        return acc

    def total(self, which: str = "final") -> Fraction:
        acc = self.initial if which == "initial" else self.final()
        return sum(acc.values(), Fraction(0))

    def to_json(self):
        fin = self.final()
        return {
            "accounts": {k: {"num": v.numerator, "den": v.denominator} for k, v in fin.items()},
            "transfers": [{"rule": t.rule, "from": t.src, "to": t.dst,
                           "num": t.amount.numerator, "den": t.amount.denominator}
                          for t in self.transfers],
            "flags": list(self.flags),
        }


def initial_charges(sg: SignedPlaneGraph, st: Structure | None = None) -> Ledger:
    g = sg.graph
    led = Ledger()
    for v in range(g.n):
        led.initial[vid(v)] = Fraction(g.degree(v) - 4)
    for f in g.faces:
        d = f.length
        led.initial[fid(f.id)] = Fraction(d + 4 if f.id == g.outer_face else d - 4)
    if st is not None:
        for s in st.flakes.accepted:
            led.initial[s.name] = Fraction(0)
    return led


def apply_rules(sg: SignedPlaneGraph, st: Structure, strict: bool = False) -> Ledger:
    g = sg.graph
    cls = st.cls
    led = initial_charges(sg, st)
    f0 = g.outer_face

    for v in g.outer.walk:
        led.add("R1", fid(f0), vid(v), R1_AMOUNT)

    for u in range(g.n):
        if not cls.is_c(u):
            continue
        amount = R2_LOW if cls.external_c1(u) else R2_HIGH
        for f in cls.triangles_at[u]:
            led.add("R2", vid(u), fid(f), amount)

    for f in g.faces:
        if f.id != f0 and f.length >= 5:
            share = Fraction(f.length - 4, f.length)
            for v in f.walk:
                led.add("R3", fid(f.id), vid(v), share)

    for r in st.flakes.rejected:
        led.flags.append(f"unmodeled component {sorted(r.faces)}: {r.reason}")
        if strict:
            raise UnmodeledStructure(r.reason)

    for s in st.flakes.accepted:
        for u in sorted(s.three_delta):
            up = cls.outer_neighbor(u)
            if up in s.vertices:
                continue
            amount = _r4_amount(cls, u, up)
            if amount:
                led.add("R4", vid(up), vid(u), amount)
    rejected_delta = {v for r in st.flakes.rejected for v in r.vertices if cls.is_three_delta(v)}
    for u in sorted(rejected_delta):
        led.flags.append(f"R4 skipped at 3-delta vertex {u} of a rejected component")

    for rec in st.nice:
        if rec.unmodeled or rec.related is None:
            led.flags.append(f"R5 skipped at nice face {rec.face}: related component rejected")
            if strict:
                raise UnmodeledStructure(f"nice face {rec.face}")
            continue
        target = f"S{rec.related}"
        for x, kind in sorted(rec.nice_vertices.items()):
            led.add("R5", vid(x), target, R5_TWO if kind == 2 else R5_ONE, via=fid(rec.face))

    for i, rec in enumerate(strings(g)):
        d = g.faces[rec.face].length
        if d > 11:
            continue
        share = Fraction(12 - d, 6 * d)
        for u in rec.endpoints:
            for x in rec.vertices:
                led.add("R6", vid(u), vid(x), share, via=f"L{i}@{fid(rec.face)}")
    return led


_CIRC_OR_C = (Role.THREE_DELTA_CIRC, Role.C_VERTEX)


def _r4_amount(cls, u, up):
    ru, rup = cls.role(u), cls.role(up)
    if cls.is_bad(u):
        return R4_BAD if rup in _CIRC_OR_C else None
    if ru is Role.THREE_DELTA_PLUS:
        return R4_SMALL if rup in (Role.THREE_DELTA_MINUS,) + _CIRC_OR_C else None
    if ru is Role.THREE_DELTA_MINUS:
        return R4_SMALL if rup in _CIRC_OR_C else None
    return None


def snowflake_members(s: Snowflake) -> list[str]:
    return [vid(v) for v in sorted(s.three_delta | s.bowtie)] + [fid(f) for f in sorted(s.faces)]


def snowflake_charge(s: Snowflake, led: Ledger, phase: str = "final") -> Fraction:
    """Initial phase: the closed formula, cross-checked against member accounts."""
    members = snowflake_members(s)
    if phase == "initial":
        formula = Fraction(s.initial_charge())
        summed = sum((led.initial[m] for m in members), Fraction(0))
        if formula != summed:
            raise AssertionError(f"{s.name}: closed form {formula} != member sum {summed}")
        return formula
    fin = led.final()
    return sum((fin[m] for m in members), Fraction(0)) + fin.get(s.name, Fraction(0))


# -- claims ------------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimResult:
    id: str
    element: str
    value: Fraction
    passed: bool
    note: str = ""


@dataclass
class ClaimReport:
    results: list = field(default_factory=list)

    @property
    def failures(self) -> list[ClaimResult]:
        return [r for r in self.results if not r.passed]

    def by_id(self, cid: str) -> list[ClaimResult]:
        return [r for r in self.results if r.id == cid]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return [{"id": r.id, "element": r.element,
                 "value": {"num": r.value.numerator, "den": r.value.denominator},
                 "pass": r.passed, "note": r.note} for r in self.results]


def verify_claims(sg: SignedPlaneGraph, st: Structure, led: Ledger) -> ClaimReport:
    g = sg.graph
    cls = st.cls
    fin = led.final()
    rep = ClaimReport()
    add = rep.results.append
    zero = Fraction(0)

    for s in st.flakes.accepted:
        snowflake_charge(s, led, "initial")
        add(ClaimResult("eq_1", s.name, Fraction(s.initial_charge()), True))
        val = snowflake_charge(s, led, "final")
        add(ClaimResult("claim_12", s.name, val, val >= 0))
        st_ = s.stats
        add(ClaimResult("eq_3", s.name, Fraction(3 * st_.n_faces), st_.eq3_holds()))
        add(ClaimResult("eq_4", s.name, Fraction(st_.n_bowtie), st_.eq4_holds()))
        add(ClaimResult("parity", s.name, Fraction(st_.n_plus + st_.n_minus), st_.parity_holds()))

    for v in range(g.n):
        val = fin[vid(v)]
        role = cls.role(v)
        if role is Role.C_VERTEX and g.is_internal(v):
            add(ClaimResult("claim_13", vid(v), val, val >= 0))
        elif role is Role.C_VERTEX:
            note = "equality" if val == 0 else ""
            add(ClaimResult("claim_14", vid(v), val, val > 0, note))
        elif role is Role.TWO:
            add(ClaimResult("claim_15", vid(v), val, val >= 0))

    d0 = g.outer.length
    val = fin[fid(g.outer_face)]
    expected = 4 - Fraction(d0, 3)
    add(ClaimResult("claim_16", fid(g.outer_face), val, val == expected and val >= 0,
                    "" if d0 <= 12 else "outer face longer than 12"))

    for f in g.faces:
        if f.id != g.outer_face and f.length >= 5:
            val = fin[fid(f.id)]
            add(ClaimResult("claim_17", fid(f.id), val, val == zero))

    total = sum(fin.values(), zero)
    add(ClaimResult("conservation", "all", total, total == 0 and led.total("initial") == 0))
    for r in r6_cap_check(led):
        add(r)
    return rep


def r6_cap_check(led: Ledger) -> list[ClaimResult]:
    out: dict[tuple[str, str], Fraction] = {}
    for t in led.transfers:
        if t.rule == "R6":
            key = (t.src, t.via)
            out[key] = out.get(key, Fraction(0)) + t.amount
    return [ClaimResult("r6_cap", f"{src}->{via}", amt, amt <= R6_CAP)
            for (src, via), amt in sorted(out.items())]


# -- witness -------------------------------------------------------------------------

@dataclass
class Verdict:
    claims: ClaimReport
    witnesses: list
    local: dict
    notes: list
    flags: list

    @property
    def failing(self) -> list[ClaimResult]:
        return self.claims.failures

    @property
    def explained(self) -> bool:
        return not self.failing or bool(self.witnesses)

    @property
    def passed(self) -> bool:
        return self.explained

    def to_json(self):
        return {
            "pass": self.passed,
            "failing": [f"{r.id}:{r.element}" for r in self.failing],
            "witnesses": list(self.witnesses),
            "local": {k: v for k, v in sorted(self.local.items())},
            "notes": list(self.notes),
            "flags": list(self.flags),
        }


def run(sg: SignedPlaneGraph, strict: bool = False):
    st = Structure.of(sg)
    led = apply_rules(sg, st, strict)
    return st, led, verify_claims(sg, st, led)


def witness(sg: SignedPlaneGraph, max_k: int = 3) -> Verdict:
    """Pair every failing claim with reducible structure found anywhere in the graph.

    A failing claim is explained when the scan finds at least one catalogue
    occurrence or structural violation.  Occurrences touching the failing
    element are listed under ``local`` for information only.
    """
    from .configs.scan import scan_all

    st, led, claims = run(sg)
    summary = scan_all(sg, max_k=max_k, structure=st)
    witnesses = summary.describe()
    local = {}
    for r in claims.failures:
        near = summary.near(_element_vertices(sg, st, r.element))
        if near:
            local[f"{r.id}:{r.element}"] = near
    fin = led.final()
    notes = []
    positives = [k for k, v in fin.items() if v > 0]
    if claims.ok and positives and sum(fin.values()) == 0:
        notes.append("all claims hold yet charge sums to 0 with a positive element: inconsistent")
    ext_c = [v for v in range(sg.n) if st.cls.is_c(v) and sg.graph.is_external(v)]
    if ext_c and claims.ok:
        notes.append("external C-vertex present and every claim holds: total would be > 0")
    return Verdict(claims, witnesses, local, notes, list(led.flags))


def _element_vertices(sg, st, element: str) -> set[int]:
    element = element.split("->", 1)[0]  # r6_cap elements read "<vertex>-><string>"
    if element.startswith("v"):
        return {int(element[1:])}
    if element.startswith("f"):
        return set(sg.graph.faces[int(element[1:])].walk)
    if element.startswith("S"):
        return next((set(s.vertices) for s in st.flakes.accepted if s.name == element), set())
    return set()


def claim_values(report: ClaimReport, cid: str) -> Iterable[Fraction]:
    return (r.value for r in report.by_id(cid))
