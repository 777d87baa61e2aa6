"""Rigorous prime/point counts next to the closed-form moduli estimate for polynomial shapes."""
import argparse
import math

from ffdet.complexity import modular_mu
from ffdet.modular import DEFAULT_WORD_BITS, default_prime_pool, evaluation_grid, select_primes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--word-bits", type=int, default=DEFAULT_WORD_BITS)
    args = ap.parse_args()
    wb = args.word_bits
    print("n,s,p,l,primes,points,rigorous_jobs,estimated_mu")
    for n in (2, 4, 8):
        for s in (1, 2):
            for p in (1, 2):
                l = 1
                B = (1 << (wb * l)) - 1
                bound = math.factorial(n) * B**n * (p + 1) ** (s * (n - 1))
                grids = [evaluation_grid(n * p + 1)] * s
                primes = select_primes(bound, default_prime_pool(wb), grids, (n * p + 1) // 2)
                points = (n * p + 1) ** s
                print(f"{n},{s},{p},{l},{len(primes)},{points},{len(primes) * points},"
                      f"{modular_mu(n, s, p, l, wb)}")


if __name__ == "__main__":
    main()
