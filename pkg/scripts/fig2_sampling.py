"""MSE of greedy-sampled reconstruction against the number of samples."""

from _common import parser

from cellsp.experiments import ExperimentConfig, run_experiment


def main():
    p = parser(__doc__, "runs/fig2_sampling")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--noise-var", type=float, default=0.01)
    args = p.parse_args()
    cfg = ExperimentConfig(
        experiment="sample", seed=args.seed, output_dir=str(args.out),
        trials=args.trials, noise_var=args.noise_var,
    )
    run_experiment(cfg)
    print((args.out / "results.csv").read_text(), end="")


if __name__ == "__main__":
    main()
