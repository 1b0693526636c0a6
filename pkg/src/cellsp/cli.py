"""``cellsp gen|infer|sparsify|sample|filter --config FILE [--seed N] [--out DIR]``."""

from __future__ import annotations

import argparse
import sys

from .experiments import EXPERIMENTS, ExperimentConfig, apply_overrides, load_config, run_experiment

# flag -> config key; each takes a value
VALUE_FLAGS = {
    "--seed": "seed",
    "--out": "output_dir",
    "--max-sides": "max_sides",
    "--max-candidates": "max_candidates",
    "--order-lower": "order_lower",
    "--order-upper": "order_upper",
    "--q-star": "q_star",
    "--complex": "complex_path",
    "--signals": "signals_path",
    "--mask-lower": "mask_lower",
    "--mask-upper": "mask_upper",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellsp", description="Cell-complex signal processing experiments.")
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", help="flat 'key = value' config file")
    for flag, key in VALUE_FLAGS.items():
        parser.add_argument(flag, dest=key, default=None, metavar=key.upper())
    parser.add_argument("--joint", dest="joint", action="store_true", default=None, help="joint filter design (filter with masks)")
    parser.add_argument("--dedup-spectrum", dest="dedup_spectrum", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--no-plot", dest="plot", action="store_false", default=None)
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE", help="override any config key")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    values = {}
    for item in args.overrides:
        if "=" not in item:
            raise ValueError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        values[key] = value
    for key in list(VALUE_FLAGS.values()) + ["joint", "dedup_spectrum", "plot"]:
        value = getattr(args, key)
        if value is not None:
            values[key] = str(value)
    values["experiment"] = args.experiment
    return apply_overrides(cfg, values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        run_experiment(cfg)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        print(f"cellsp {args.experiment}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"cellsp {args.experiment}: wrote {cfg.output_dir}/results.csv")
    return 0


if __name__ == "__main__":
    sys.exit(main())
