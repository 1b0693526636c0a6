"""Sparsity against MSE for the cell, simplicial and graph bases."""

from _common import parser

from cellsp.experiments import ExperimentConfig, run_experiment


def main():
    p = parser(__doc__, "runs/fig1_sparsity")
    p.add_argument("--complexes", type=int, default=20)
    p.add_argument("--eps-points", type=int, default=10)
    args = p.parse_args()
    cfg = ExperimentConfig(
        experiment="sparsify", seed=args.seed, output_dir=str(args.out),
        complexes=args.complexes, eps_points=args.eps_points,
    )
    run_experiment(cfg)
    print((args.out / "results.csv").read_text(), end="")


if __name__ == "__main__":
    main()
