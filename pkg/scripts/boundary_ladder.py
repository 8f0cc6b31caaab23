"""Write the relative gap ||P_t f - f||_p / ||f||_p along the dyadic t-ladder as plot-ready CSV."""

import argparse
import csv
import sys

from octoclifford.experiments import default_t_ladder, run_boundary_convergence


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--levels", type=int, default=15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    rep = run_boundary_convergence(d=args.dim, n=args.n, p=(2, 4), seed=args.seed,
                                   t_ladder=default_t_ladder(args.levels))
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["p", "t", "relative_gap"])
    for rec in rep.records:
        if "p" in rec:
            for t, g in zip(rec["t"], rec["relative_gap"]):
                w.writerow([rec["p"], repr(t), repr(g)])
    if fh is not sys.stdout:
        fh.close()
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
