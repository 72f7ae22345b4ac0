"""Run the exhaustive kernel check on every catalogue entry and print a table."""

import argparse
import time

from dp468.configs.catalog import default_catalog
from dp468.configs.kernel import DEFAULT_BUDGET, lemma7_table, lemma8, verify_kernel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=2)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rows = lemma7_table()
    print(f"lemma7: {sum(r.ok for r in rows)}/{len(rows)} rows ok")
    for k in range(1, args.max_k + 1):
        r = lemma8(k)
        print(f"lemma8 k={k}: {'ok' if r.ok else 'FAIL'} classes={r.signatures} "
              f"colourings={r.colorings} min_free={r.min_free}")

    for name in default_catalog().names():
        t = time.perf_counter()
        rep = verify_kernel(name, args.max_k, args.budget, workers=args.workers)
        checks = sum(i.checks for i in rep.instances)
        print(f"{name:6s} {rep.status:4s} instances={len(rep.instances):2d} "
              f"checks={checks:8d} {time.perf_counter() - t:7.2f}s", flush=True)


if __name__ == "__main__":
    main()
