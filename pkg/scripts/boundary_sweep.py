"""Generate precoloured instances per outer length and try to extend every boundary colouring."""

import argparse
import time
from collections import Counter

from dp468.generate import GenerationBudgetExceeded, GenOptions, generate
from dp468.solver import extend_boundary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-length", type=int, default=50)
    ap.add_argument("--lengths", type=int, nargs="+", default=[5, 7, 9, 10, 11, 12])
    ap.add_argument("--n-min", type=int, default=22)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--exhaustive", action="store_true",
                    help="check every proper boundary colouring instead of one precolouring")
    args = ap.parse_args()

    span = args.n_max - args.n_min + 1
    for L in args.lengths:
        t = time.perf_counter()
        tally = Counter()
        for seed in range(args.per_length):
            n = args.n_min + seed % span
            try:
                sg = generate(n, seed, GenOptions(boundary=L, precolor=not args.exhaustive))
            except GenerationBudgetExceeded:
                tally["budget"] += 1
                continue
            rep = extend_boundary(sg)
            tally["instances"] += 1
            tally["colourings"] += rep.checked
            tally["failures"] += len(rep.failures)
        print(f"L={L:2d} {dict(tally)} {time.perf_counter() - t:.1f}s", flush=True)


if __name__ == "__main__":
    main()
