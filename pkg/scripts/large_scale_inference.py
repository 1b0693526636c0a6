"""Generate a large planted complex (82 vertices, 165 edges, 75 polygons) and infer it back."""

import json
import time

from _common import parser

from cellsp.experiments import ExperimentConfig, run_experiment


def main():
    p = parser(__doc__, "runs/large_scale")
    p.add_argument("--q-star", default="75", help="number of cells to select, or 'auto'")
    args = p.parse_args()
    scale = dict(vertices=82, edges=165, planted=75, identifiable=False, num_signals=200)
    start = time.perf_counter()
    run_experiment(ExperimentConfig(experiment="gen", seed=args.seed, output_dir=str(args.out / "gen"), **scale))
    q_star = None if args.q_star == "auto" else int(args.q_star)
    run_experiment(
        ExperimentConfig(
            experiment="infer", seed=args.seed, output_dir=str(args.out / "infer"),
            complex_path=str(args.out / "gen" / "complex.txt"),
            signals_path=str(args.out / "gen" / "signals.csv"), q_star=q_star, **scale,
        )
    )
    report = json.loads((args.out / "infer" / "inference.json").read_text())
    print(
        f"q* = {report['q_star']}  precision = {report['precision']:.3f}  recall = {report['recall']:.3f}  "
        f"elapsed = {time.perf_counter() - start:.1f} s"
    )


if __name__ == "__main__":
    main()
