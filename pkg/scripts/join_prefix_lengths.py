"""How many chain stages does the join of the approximate solutions need?

For random guarded systems, report the histogram of the shortest prefix of
the approximation chain from which the join recovers the exact solution.
"""
import argparse
import sys
from collections import Counter

from treecut.errors import NotRational
from treecut.presentation import BUILTIN_EXAMPLES, nf_rational, parse_builtin
from treecut.randgen import random_guarded_system, rng_for
from treecut.solver import approx_chain, solve
from treecut.trees import Var, join_chain


def shortest_prefix(e, p, limit):
    exact = solve(e)
    stages = [s.assignment for s in approx_chain(e, limit, p)]
    worst = 0
    for v in e.rhs:
        for m in range(1, limit + 2):
            try:
                raw = join_chain([s[v].system for s in stages[:m]], p, None, e.pres.normalize)
            except NotRational:
                continue
            if nf_rational(e.pres, raw) == exact[v]:
                break
        else:
            return None
        worst = max(worst, m)
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--limit", type=int, default=24)
    args = ap.parse_args()
    sys.setrecursionlimit(20_000)
    p = Var("p")
    for name in BUILTIN_EXAMPLES:
        pres = parse_builtin(name)
        rng = rng_for(args.seed, "join-prefix", name)
        hist = Counter(shortest_prefix(random_guarded_system(pres, rng), p, args.limit) for _ in range(args.cases))
        cells = " ".join(f"{k}:{hist[k]}" for k in sorted(hist, key=lambda k: (k is None, k or 0)))
        print(f"{name:<14} {cells}")


if __name__ == "__main__":
    main()
