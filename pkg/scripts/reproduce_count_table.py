"""Measured operation counts against the closed forms, n = 3..12 by default."""
import argparse
import csv
import sys

from ffdet.bench import formula_counts, parse_ring, pivot_free_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = parse_ring("bigint")
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "algorithm", "r", "n_mul", "n_div", "n_add", "f_mul", "f_div", "f_add", "match"])
    all_ok = True
    for n in range(args.n_min, args.n_max + 1):
        runs = [("dodgson", None), ("one-pass", None)] + [("combined", r) for r in range(2, n - 1)]
        _, outcomes = pivot_free_matrix(n, args.seed, spec, runs)
        for alg, r, out in outcomes:
            got = out.tally.ring_counts()
            expect = tuple(formula_counts(alg, n, r))
            all_ok &= got == expect
            w.writerow([n, alg, r if r is not None else "", *got, *expect, got == expect])
    print("EXACT MATCH" if all_ok else "MISMATCH", file=sys.stderr)
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
