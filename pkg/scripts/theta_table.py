"""Print the quadric-space table for d = 2..N."""

import argparse
import math

from sl2kit.determinantal import build_theta, jacobian_origin_check, rnc_substitution_check, verify_theta_equality


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=8)
    args = ap.parse_args()
    print(f"{'d':>3} {'C(d,2)':>7} {'rank M':>7} {'rank T':>7} {'span':>5} {'rnc':>5} {'rnc raw':>8} {'jac':>5}")
    for d in range(2, args.max_d + 1):
        theta = build_theta(d)
        rep = verify_theta_equality(theta)
        rnc = rnc_substitution_check(theta).ok
        raw = rnc_substitution_check(theta, normalized=False).ok
        jac = jacobian_origin_check(theta).ok
        print(f"{d:>3} {math.comb(d, 2):>7} {rep.rank_minors:>7} {rep.rank_vertices:>7} {str(rep.equal_span):>5} "
              f"{str(rnc):>5} {str(raw):>8} {str(jac):>5}")


if __name__ == "__main__":
    main()
