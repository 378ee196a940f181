"""Analyze the bundled karate-club network over several covering seeds."""
import argparse

from dengdim.datasets import karate_club_path
from dengdim.pipeline import RunConfig, analyze

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--seeds", type=int, default=10)
ap.add_argument("--reps", type=int, default=20)
ap.add_argument("--log-base", choices=("e", "2"), default="e")
args = ap.parse_args()

print("seed,d_D,d_dD,nu,delta_aic_D,delta_aic_dD,selected")
for seed in range(args.seeds):
    res = analyze(RunConfig(input=str(karate_club_path()), name="ZKC", seed=seed,
                            repetitions=args.reps, log_base=args.log_base))
    c = res.comparison
    print(f"{seed},{res.deng.d:.6g},{res.dsummable.d:.6g},{res.dsummable.nu:.6g},"
          f"{c.delta_aic_deng:.4g},{c.delta_aic_dsummable:.4g},{c.selected}")
