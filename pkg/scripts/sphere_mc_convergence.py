"""Sphere Cauchy-formula error against Monte Carlo budget, both integrand groupings, as CSV."""

import argparse
import csv
import sys

import numpy as np

from octoclifford.cauchy import cauchy_sphere_oct, translated_kernel


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args(argv)
    fn = translated_kernel(np.array([3.0, 1.0, -1.5, 0.5, 0.0, 1.0, -0.5, 0.5]))
    z = np.array([0.2, 0, 0.1, 0, -0.1, 0, 0, 0.1])
    ref = fn(z[None])[0]
    w = csv.writer(sys.stdout)
    w.writerow(["budget", "grouping", "rel_error", "stderr"])
    for e in range(3, args.max_exp + 1):
        for grouping in ("nested", "swapped"):
            est = cauchy_sphere_oct(fn, np.zeros(8), 1.0, z, 10**e, args.seed, grouping=grouping)
            err = np.linalg.norm(est.value - ref) / np.linalg.norm(ref)
            w.writerow([10**e, grouping, repr(float(err)), repr(float(np.linalg.norm(est.stderr)))])
    return 0


if __name__ == "__main__":
    sys.exit(main())
