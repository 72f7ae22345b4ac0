"""Discharge every realised gadget host and every generated instance; tabulate failing claims.

Failing claims on gadget hosts are expected (they contain reducible
configurations); the survey shows which claims fail and whether the
witness search accounts for them.
"""

import argparse
from collections import Counter

from dp468.configs.catalog import default_catalog
from dp468.discharge import run, witness
from dp468.generate import RealizeFailed, generate, realize


def survey_generated(count: int):
    fails = Counter()
    for seed in range(count):
        _st, _led, claims = run(generate(13 + seed % 28, seed))
        fails.update(r.id for r in claims.failures)
    print(f"generated ({count}): failing claims {dict(fails)}")


def survey_hosts(max_k: int, seeds: int):
    cat = default_catalog()
    for name in cat.names():
        fails, hosts, explained = Counter(), 0, 0
        for _vals, pat in cat.instances(name, max_k):
            for seed in range(seeds):
                try:
                    sg = realize(pat, seed).sg
                except RealizeFailed:
                    continue
                hosts += 1
                v = witness(sg)
                explained += v.passed
                fails.update(r.id for r in v.failing)
        print(f"{name:6s} hosts={hosts:2d} explained={explained:2d} failing {dict(fails)}", flush=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--generated", type=int, default=120)
    ap.add_argument("--max-k", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    survey_generated(args.generated)
    survey_hosts(args.max_k, args.seeds)


if __name__ == "__main__":
    main()
