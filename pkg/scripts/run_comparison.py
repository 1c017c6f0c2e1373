#!/usr/bin/env python3
"""Compare AdaDGS against the baselines on one benchmark function.

Runs every optimizer at the same evaluation budget and prints the final
median best loss per method. Per-trial traces land under --out.

Example:
    python3 scripts/run_comparison.py --func ackley --dim 100 \
        --budget 300000 --trials 20 --out results/comparison
"""
import argparse

from adadgs.harness import OPTIMIZERS, ExperimentSpec, preset, run_experiment


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--func", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results/comparison")
    p.add_argument("--preset", default="paper-1000d")
    args = p.parse_args()

    print(f"{args.func} d={args.dim}, budget={args.budget}, "
          f"{args.trials} trials (seed {args.seed})")
    for optimizer in OPTIMIZERS:
        spec = ExperimentSpec(
            function=args.func, dim=args.dim, optimizer=optimizer,
            budget=args.budget, trials=args.trials, seed=args.seed,
            out_dir=args.out, adadgs=preset(args.preset),
        )
        summary = run_experiment(spec)
        final = summary["final"]
        print(f"  {optimizer:10s} median f_best = {final['median_f_best']:.6g} "
              f"(min {final['min_f_best']:.3g}, max {final['max_f_best']:.3g})")


if __name__ == "__main__":
    main()
