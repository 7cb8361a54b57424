"""Tabulate how fast the product approximants close in on e^(tA+B).

Doubling N roughly halves both the transform error and the distance of the
first moment from the exact derivative: the construction converges at first
order. Pass --seed to try other random Hermitian pairs.
"""

import argparse

import numpy as np

from liemeasure import convergence_study
from liemeasure.sampling import noncommuting_hermitian_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    a, b = noncommuting_hermitian_pair(rng, args.dim)
    report = convergence_study(a, b, (4, 8, 16, 32, 64, 128))

    print(f"{'N':>5} {'transform err':>14} {'tv':>10} {'herm dev':>10} "
          f"{'moment1 err':>12} {'moment2 err':>12}")
    for p in report.points:
        print(f"{p.N:>5} {p.max_transform_err:>14.6e} {p.total_variation:>10.5f} "
              f"{p.hermitian_dev:>10.3e} {p.moment1_err:>12.4e} {p.moment2_err:>12.4e}")
    print(f"log-log rate estimate: {report.rate_estimate:.4f}")


if __name__ == "__main__":
    main()
