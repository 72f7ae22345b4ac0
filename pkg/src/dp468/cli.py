"""Command-line front end.  Exit codes: 0 all checks pass, 1 violations, 2 input error."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import spg
from .classify import Structure
from .configs.catalog import CatalogSyntaxError, UnknownEntry, default_catalog, load
from .configs.kernel import DEFAULT_BUDGET, lemma7_table, lemma8, verify_kernel
from .configs.match import match
from .discharge import run, witness
from .generate import GenerationBudgetExceeded, GenOptions, generate
from .planegraph import boundary_audit, facial_cycle_check, forbidden_cycle_check, string_length_check
from .solver import (BoundaryTooLong, ImproperPrecoloring, NotInScriptG, count, extend_boundary,
                     solve)

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return spg.load(path)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except spg.SpgError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_check(args) -> int:
    sg = _load(args.file)
    g = sg.graph
    lines = []
    lines += boundary_audit(g).flags()
    lines += [f"forbidden {len(c)}-cycle {list(c)}" for c in forbidden_cycle_check(g)]
    lines += [f"non-facial {len(c)}-cycle {list(c)}" for c in facial_cycle_check(g)]
    lines += [f"{len(r.vertices)}-string {list(r.vertices)} on face {r.face} of length "
              f"{g.faces[r.face].length}" for r in string_length_check(g)]
    for line in lines:
        print(line)
    print("PASS" if not lines else f"FAIL ({len(lines)} violation(s))")
    return OK if not lines else VIOLATION


def cmd_solve(args) -> int:
    sg = _load(args.file)
    try:
        if args.extend_boundary:
            rep = extend_boundary(sg, samples=args.samples, rng=random.Random(args.seed))
            print(f"boundary colourings checked: {rep.checked}, failures: {len(rep.failures)}")
            for phi in rep.failures[:10]:
                print("  no extension of", dict(sorted(phi.items())))
            return OK if rep.ok else VIOLATION
        if args.count:
            print(count(sg))
            return OK
        phi = solve(sg)
    except (ImproperPrecoloring, BoundaryTooLong, NotInScriptG) as exc:
        print(f"not applicable: {exc}")
        return VIOLATION
    if phi is None:
        print("UNSAT")
        return VIOLATION
    print("SAT")
    print(" ".join(f"{v}:{c}" for v, c in sorted(phi.items())))
    return OK


def cmd_classify(args) -> int:
    sg = _load(args.file)
    st = Structure.of(sg)
    if args.json:
        print(json.dumps(st.to_json(), indent=2, sort_keys=True))
        return OK
    cls = st.cls
    for v in range(sg.n):
        print(f"v{v}: {cls.role(v).name}")
    for s in st.flakes.accepted:
        print(f"{s.name}: faces {sorted(s.faces)}")
    for r in st.flakes.rejected:
        print(f"rejected component {sorted(r.faces)}: {r.reason}")
    for rec in st.nice:
        print(f"nice face f{rec.face}")
    return OK


def cmd_match(args) -> int:
    sg = _load(args.file)
    try:
        cat = load(args.catalog) if args.catalog else default_catalog()
    except (OSError, CatalogSyntaxError) as exc:
        raise InputError(str(exc)) from None
    found = 0
    for name in cat.names():
        for _vals, pat in cat.instances(name, args.max_k):
            for occ in match(sg, pat):
                found += 1
                print(occ.describe())
    print(f"{found} occurrence(s)")
    return VIOLATION if found else OK


def cmd_discharge(args) -> int:
    sg = _load(args.file)
    st, led, claims = run(sg)
    verdict = witness(sg, max_k=args.max_k)
    for r in claims.failures:
        print(f"FAIL {r.id} {r.element} = {r.value}")
    for w in verdict.witnesses:
        print(f"witness: {w}")
    for f in led.flags:
        print(f"flag: {f}")
    print(f"total charge {led.total('initial')} -> {led.total('final')}")
    print("claims: PASS" if claims.ok else f"claims: FAIL ({len(claims.failures)})")
    if args.report:
        doc = {"ledger": led.to_json(), "claims": claims.to_json(),
               "structure": st.to_json(), "witness": verdict.to_json()}
        Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", "utf-8")
    return OK if claims.ok else VIOLATION


def cmd_verify_kernel(args) -> int:
    target = args.entry
    if target == "lemma7":
        rows = lemma7_table()
        bad = [r for r in rows if not r.ok]
        for r in bad:
            print(f"FAIL sigma(u,v)={r.sigma_uv.word} colours {r.color_u_out},{r.color_v_out}: {r.free}")
        print("lemma7: PASS" if not bad else "lemma7: FAIL")
        return OK if not bad else VIOLATION
    if target == "lemma8":
        failed = False
        for k in range(1, args.max_k + 1):
            rep = lemma8(k)
            print(f"lemma8 k={k}: {'PASS' if rep.ok else 'FAIL'} ({rep.signatures} classes x "
                  f"{rep.colorings} colourings, min free {rep.min_free})")
            failed |= not rep.ok
        return VIOLATION if failed else OK
    cat = default_catalog()
    names = cat.names() if target == "all" else [target]
    status = []
    for name in names:
        try:
            rep = verify_kernel(name, args.max_k, args.budget, cat, args.workers)
        except UnknownEntry:
            raise InputError(f"unknown entry {name}") from None
        for line in rep.describe():
            print(line)
        status.append(rep.status)
    return VIOLATION if "FAIL" in status else OK


def cmd_gen(args) -> int:
    opts = GenOptions(boundary=args.boundary, precolor=args.precolor)
    try:
        sg = generate(args.n, args.seed, opts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except GenerationBudgetExceeded as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return VIOLATION
    text = spg.emit(sg)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dp468")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="structural audit of an instance")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="3-colour, count, or extend boundary colourings")
    s.add_argument("file")
    s.add_argument("--count", action="store_true")
    s.add_argument("--extend-boundary", action="store_true")
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("classify", help="vertex roles, snowflakes and nice faces")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("match", help="scan for catalogued configurations")
    s.add_argument("file")
    s.add_argument("--catalog")
    s.add_argument("--max-k", type=int, default=5)
    s.set_defaults(func=cmd_match)

    s = sub.add_parser("discharge", help="charge ledger, claims and witnesses")
    s.add_argument("file")
    s.add_argument("--report")
    s.add_argument("--max-k", type=int, default=3)
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("verify-kernel", help="exhaustive extension checks")
    s.add_argument("entry", help="catalogue entry, 'all', 'lemma7' or 'lemma8'")
    s.add_argument("--max-k", type=int, default=3)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify_kernel)

    s = sub.add_parser("gen", help="random instance in the class")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--boundary", type=int)
    s.add_argument("--precolor", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
