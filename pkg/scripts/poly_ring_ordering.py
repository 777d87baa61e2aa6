"""Coefficient multiplications of the three algorithms on dense random polynomial matrices."""
import argparse
import math
import random

from ffdet.algorithms import det_combined, det_dodgson, det_one_pass
from ffdet.bench import parse_ring, random_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ring", default="poly:1,1")
    ap.add_argument("--sizes", default="6,8,10,12")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    spec = parse_ring(args.ring)
    print("n,dodgson,one_pass," + ",".join(f"combined_r{k}" for k in ("2", "n/2", "n-2")) + ",best_r")
    for n in map(int, args.sizes.split(",")):
        A = random_matrix(spec, n, n, random.Random(f"{args.seed}:{n}"))
        sweep = {r: det_combined(A, r).tally.c_mul for r in range(2, n - 1)}
        best = min(sweep, key=sweep.get)
        picks = [sweep[2], sweep[math.ceil(n / 2)], sweep[n - 2]]
        d, o = det_dodgson(A).tally.c_mul, det_one_pass(A).tally.c_mul
        print(f"{n},{d},{o}," + ",".join(map(str, picks)) + f",{best}")


if __name__ == "__main__":
    main()
