"""Closed-form proximal average against the two KKT oracles.

For seeded random linear-quadratic ensembles, reports the worst relative
gap between the closed form and each oracle, and the worst relative error of
the closed-form gradient against central differences of the oracle.

    python3 scripts/prox_oracle_agreement.py --instances 200
"""

import argparse
import sys

import numpy as np

from matrixmeans.propcheck import SuiteConfig, random_prox_ensemble
from matrixmeans.proxavg import REP1, REP3, oracle_gradient, prox_average_closed, prox_average_oracle


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--probes", type=int, default=5)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cfg = SuiteConfig(seed=args.seed)
    worst = {REP1: 0.0, REP3: 0.0, "gradient": 0.0}
    for _ in range(args.instances):
        pens = random_prox_ensemble(rng, cfg)
        closed = prox_average_closed(pens)
        for _ in range(args.probes):
            x = rng.standard_normal(pens.dim)
            val = closed(x)
            for rep in (REP1, REP3):
                gap = abs(prox_average_oracle(pens, x, rep) - val) / (1 + abs(val))
                worst[rep] = max(worst[rep], gap)
            g = closed.gradient(x)
            err = np.linalg.norm(oracle_gradient(pens, x) - g) / (1 + np.linalg.norm(g))
            worst["gradient"] = max(worst["gradient"], float(err))
    for key, val in worst.items():
        print(f"{key:>8}: worst relative gap {val:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
