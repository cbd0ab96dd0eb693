"""Block error rate of two-step decoding versus depolarizing probability.

Prints CSV: design,decoder,p,trials,block_errors,rate,ci_lo,ci_hi

    python3 scripts/decoding_sweep.py --design plane4 --trials 100000
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

import numpy as np

from ebw.decode import DepolarizingModel, simulate_depolarizing
from ebw.designs import construct_pg_lines, construct_projective_plane, construct_sts, incidence_matrix

DESIGNS = {
    "fano": lambda: construct_pg_lines(3),
    "plane4": lambda: construct_projective_plane(4),
    "plane8": lambda: construct_projective_plane(8),
    "pg4": lambda: construct_pg_lines(4),
    "sts27": lambda: construct_sts(27),
}


@dataclass
class SweepConfig:
    design: str = "plane4"
    decoder: str = "syndrome"
    trials: int = 100_000
    seed: int = 7
    ps: list[float] = field(default_factory=lambda: list(np.round(np.geomspace(0.005, 0.15, 8), 4)))
    max_iters: int = 50


def run(cfg: SweepConfig, out=sys.stdout):
    H = incidence_matrix(DESIGNS[cfg.design]())
    w = csv.writer(out)
    w.writerow(["design", "decoder", "p", "trials", "block_errors", "rate", "ci_lo", "ci_hi"])
    for p in cfg.ps:
        r = simulate_depolarizing(H, DepolarizingModel(float(p)), cfg.trials, cfg.decoder, cfg.seed,
                                  max_iters=cfg.max_iters)
        w.writerow([cfg.design, cfg.decoder, p, r.trials, r.block_errors, f"{r.rate:.6g}",
                    f"{r.ci_lo:.6g}", f"{r.ci_hi:.6g}"])
        out.flush()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--design", choices=sorted(DESIGNS), default="plane4")
    ap.add_argument("--decoder", choices=["syndrome", "sum-product"], default="syndrome")
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--p", help="comma-separated probabilities (default: 8 log-spaced points)")
    ap.add_argument("--max-iters", type=int, default=50)
    a = ap.parse_args()
    cfg = SweepConfig(a.design, a.decoder, a.trials, a.seed, max_iters=a.max_iters)
    if a.p:
        cfg.ps = [float(x) for x in a.p.split(",")]
    run(cfg)


if __name__ == "__main__":
    main()
