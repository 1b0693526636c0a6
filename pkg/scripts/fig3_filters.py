"""Solenoidal-output SNR of separate, joint and simplicial-only filters."""

from _common import parser

from cellsp.experiments import ExperimentConfig, run_experiment


def main():
    p = parser(__doc__, "runs/fig3_filters")
    p.add_argument("--complexes", type=int, default=20)
    p.add_argument("--order-lower", type=int, default=5)
    p.add_argument("--order-upper", type=int, default=5)
    args = p.parse_args()
    cfg = ExperimentConfig(
        experiment="filter", seed=args.seed, output_dir=str(args.out), complexes=args.complexes,
        order_lower=args.order_lower, order_upper=args.order_upper,
    )
    run_experiment(cfg)
    print((args.out / "results.csv").read_text(), end="")


if __name__ == "__main__":
    main()
