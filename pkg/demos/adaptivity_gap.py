"""Adaptivity gap on the two constructive instance families.

Walks the diagonal lattice instances and the strip-elimination rectangle
instances, printing the adaptive cost next to the non-adaptive sequence
length so the linear-vs-constant-factor gap is visible at a glance.

Usage: python3 demos/adaptivity_gap.py [--max-n 12]
"""

import argparse
import math

from vsteach.core import TieBreakPolicy
from vsteach.lattice import LatticeClass
from vsteach.learner import run_session, worst_case_cost
from vsteach.teachers import AdaLTeacher, build_non_l, build_non_r, make_teacher
from vsteach.tworec import Rect, TwoRec, TwoRecClass


def lattice_gap(max_n: int) -> None:
    print("diagonal lattice (2,2) -> (n-2,n-2), adversarial learner")
    print(f"{'n':>3} {'b-a':>5} {'ada-l':>6} {'3(b-a)':>7} {'non-l':>6} {'4(b-a)':>7}")
    for n in range(6, max_n + 1):
        a, b = 2, n - 2
        dom = LatticeClass(n)
        trace = run_session(dom, AdaLTeacher(dom, (b, b)), (a, a), (b, b),
                            2 * n * n, tie_break=TieBreakPolicy.adversarial())
        assert trace.reached_target()
        non_l = build_non_l(dom, (a, a), (b, b))
        print(f"{n:>3} {b - a:>5} {trace.cost():>6} {3 * (b - a):>7} "
              f"{len(non_l):>6} {4 * (b - a):>7}")


def strip_gap() -> None:
    print()
    print("strip elimination: h0 = (r1, k-cell strip), h* = r1 alone")
    print(f"{'k':>3} {'ada-r (worst case)':>19} {'log bound':>10} {'non-r':>6}")
    for k in (4, 8, 16, 32):
        grid = max(k, 4)
        dom = TwoRecClass(grid)
        r1, r2 = Rect(0, 0, k - 1, 0), Rect(0, 2, k - 1, 2)
        h0, h_star = TwoRec((r1, r2)), TwoRec((r1,))
        wc = worst_case_cost(dom, make_teacher("ada-r", dom, h0, h_star),
                             h0, h_star, 4 * grid * grid)
        negs = [z for z in build_non_r(dom, h0, h_star)
                if not z.label and r2.contains(z.location)]
        print(f"{k:>3} {wc:>19} {math.ceil(math.log2(k)) + 1:>10} "
              f"{len(negs):>6}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    args = parser.parse_args()
    lattice_gap(args.max_n)
    strip_gap()


if __name__ == "__main__":
    main()
