"""Print initial and terminal stage sizes for the built-in presentations."""
import argparse

from treecut.chains import enumerate_initial_stage, enumerate_terminal_stage
from treecut.errors import CapExceeded
from treecut.presentation import BUILTIN_EXAMPLES, parse_builtin
from treecut.trees import Var


def sizes(fn, upto, cap, finite=True):
    out = []
    for n in range(upto + 1):
        try:
            out.append(str(len(fn(n, cap))))
        except CapExceeded:
            out.append(f">{cap}" if finite else "inf")
            break
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--upto", type=int, default=5)
    ap.add_argument("--cap", type=int, default=100_000)
    args = ap.parse_args()
    p = Var("p")
    print(f"{'presentation':<14} {'kind':<9} sizes for n = 0..{args.upto}")
    for name in BUILTIN_EXAMPLES:
        pres = parse_builtin(name)
        init = sizes(lambda n, cap: enumerate_initial_stage(pres, n, cap), args.upto, args.cap, pres.finite_stages)
        term = sizes(lambda n, cap: enumerate_terminal_stage(pres, n, p, cap), args.upto, args.cap, pres.finite_stages)
        print(f"{name:<14} {'initial':<9} {' '.join(init)}")
        print(f"{'':<14} {'terminal':<9} {' '.join(term)}")


if __name__ == "__main__":
    main()
