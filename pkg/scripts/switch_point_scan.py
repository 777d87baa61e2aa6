"""Best switch point under three models: exact counts, summed per-step costs, and the closed-form leading model.

The per-step model prices each operation with the simplified polynomial
costs (one-word coefficients), so it is the exact sum that the closed-form
leading model approximates.
"""
import argparse

from ffdet.complexity import (
    CostParams,
    leading_M,
    optimal_r_by_counts,
    r_best_real,
    total_step_cost,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="20,50,100,200")
    ap.add_argument("--s", default="1,2")
    args = ap.parse_args()
    print("n,s,r_counts,r_step_sum,r_leading_model,r_best_formula")
    for s in map(int, args.s.split(",")):
        params = CostParams(s=s, p=1, simplified=True)
        for n in map(int, args.sizes.split(",")):
            r_steps = min(range(0, n + 1), key=lambda r: total_step_cost(n, r, params))
            r_lead = min(range(0, n + 1), key=lambda r: leading_M(n, r, s, 1))
            print(f"{n},{s},{optimal_r_by_counts(n)},{r_steps},{r_lead},{r_best_real(n, s)}")


if __name__ == "__main__":
    main()
