"""Where does the scalar resolvent mean beat the geometric mean?

Scans two-point tuples (x, 1) with equal weights over a log grid of x and
prints, for each x, G, R and which of the two is larger. Inverting x maps
one ordering onto the other, so the table is symmetric about x = 1 up to
the ordering label.

    python3 scripts/compare_means.py --points 9
"""

import argparse
import sys

import numpy as np

from matrixmeans.scalar_means import compare_R_vs_G, scalar_resolvent_mean, weighted_geometric_mean


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lo", type=float, default=1e-3)
    p.add_argument("--hi", type=float, default=1e3)
    p.add_argument("--points", type=int, default=13)
    args = p.parse_args(argv)

    print("x,G,R,ordering")
    xs = np.concatenate([[0.0], np.geomspace(args.lo, args.hi, args.points)])
    counts = {}
    for x in xs:
        t = [x, 1.0]
        order = compare_R_vs_G(t)
        counts[str(order)] = counts.get(str(order), 0) + 1
        print(f"{x:.6g},{weighted_geometric_mean(t):.6g},{scalar_resolvent_mean(t):.6g},{order}")
    print("# " + " ".join(f"{k}={v}" for k, v in sorted(counts.items())), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
