"""Distance of R_mu to the arithmetic and harmonic averages over a mu grid.

Draws a seeded random PD ensemble, sweeps mu log-uniformly and prints the
CSV report. The distance to the arithmetic average should vanish at the
small end of the grid and the distance to the harmonic average at the
large end.

    python3 scripts/limit_sweep.py --seed 3 --dim 4 --n 3 --points 13
"""

import argparse
import sys

from matrixmeans.averaging import mu_sweep, random_ensemble


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--cond", type=float, default=100.0)
    p.add_argument("--mu-lo", type=float, default=1e-6)
    p.add_argument("--mu-hi", type=float, default=1e6)
    p.add_argument("--points", type=int, default=25)
    args = p.parse_args(argv)

    ens = random_ensemble(args.seed, args.dim, args.n, args.cond)
    rep = mu_sweep(ens, args.mu_lo, args.mu_hi, args.points)
    sys.stdout.write(rep.to_csv())
    print(f"# chain ok on all {args.points - 1} adjacent pairs: {rep.all_ok}", file=sys.stderr)
    return 0 if rep.all_ok else 4


if __name__ == "__main__":
    sys.exit(main())
