"""How fast the count ratios approach 16:12:11 (mul) and 8:4:3 (div) as n grows."""
import argparse

from ffdet.complexity import counts_combined, counts_dodgson, counts_one_pass, optimal_r_by_counts, ratio_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10,20,40,60,100,200,400")
    args = ap.parse_args()
    print("n,r_opt,mul_D,mul_O,mul_C,mul_err,div_D,div_O,div_C,div_err")
    for n in map(int, args.sizes.split(",")):
        r = optimal_r_by_counts(n)
        d, o, c = counts_dodgson(n), counts_one_pass(n), counts_combined(n, r)
        em = ratio_error([d.n_mul, o.n_mul, c.n_mul], [16, 12, 11])
        ed = ratio_error([d.n_div, o.n_div, c.n_div], [8, 4, 3])
        print(f"{n},{r},{d.n_mul},{o.n_mul},{c.n_mul},{em:.4f},{d.n_div},{o.n_div},{c.n_div},{ed:.4f}")


if __name__ == "__main__":
    main()
