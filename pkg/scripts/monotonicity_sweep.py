"""Run the fuzz harness over several seeds and sizes and summarize the slack."""
import argparse

from steklov.fuzz import FuzzConfig, fuzz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 25, 40])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--weighted", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'seed':>4} {'n':>3} {'viol':>4} {'min slack':>10} {'wedge err':>10} {'converse':>8}")
    for seed in args.seeds:
        for n in args.sizes:
            cfg = FuzzConfig(trials=args.trials, max_vertices=n, seed=seed, weighted=args.weighted, workers=args.workers)
            s = fuzz(cfg)["summary"]
            print(
                f"{seed:>4} {n:>3} {s['violations']:>4} {s['min_monotonicity_residual']:>10.2e} "
                f"{s['max_wedge_error']:>10.2e} {len(s['converse_instances']):>8}"
            )


if __name__ == "__main__":
    main()
