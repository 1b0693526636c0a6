"""Experiment configs and the five runnable experiments.

Every random draw descends from ``ExperimentConfig.seed`` through
``numpy.random.SeedSequence.spawn``, so a config reproduces its CSV output
byte for byte.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .complex import CellComplex, build_b1, build_b2, read_complex, write_complex
from .cycles import DEFAULT_MAX_CANDIDATES, DEFAULT_MAX_SIDES, enumerate_candidates
from .filters import (
    FilterDesign,
    SpectralMask,
    apply_filter,
    component_eigenvalues,
    design_joint,
    design_separate,
    output_snr,
    read_mask,
)
from .generate import ComplexSpec, generate_complex, generate_signal_components, generate_signals
from .inference import (
    DEFAULT_ENERGY_THRESHOLD,
    DEFAULT_HOLDOUT_FRACTION,
    graph_basis,
    infer_b2,
    select_q_star,
)
from .plotting import write_line_chart
from .sparse import maxdet_select, reconstruct_from_samples, sparsity_mse_curve
from .spectral import (
    IRROTATIONAL,
    SOLENOIDAL,
    SpectralBasis,
    build_laplacians,
    cft,
    partition_basis,
    read_matrix_csv,
    spectral_basis,
    write_matrix_csv,
)

EXPERIMENTS = ("gen", "infer", "sparsify", "sample", "filter")
DEFAULT_NOISE = {"gen": 0.0, "infer": 0.0, "sparsify": 0.0, "sample": 0.01, "filter": 0.01}
BAND_RTOL = 1e-10


@dataclass
class ExperimentConfig:
    experiment: str = "gen"
    seed: int = 0
    output_dir: str = "out"
    # complex source: a file, or a generator spec
    complex_path: str | None = None
    generator: str = "mesh"
    vertices: int = 30
    edges: int | None = None
    edge_prob: float = 0.1
    planted: int = 12
    max_sides: int = DEFAULT_MAX_SIDES
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    identifiable: bool = True
    # signal model; b_harm = None spans the whole harmonic space
    signals_path: str | None = None
    num_signals: int = 100
    b_irr: int = 10
    b_sol: int = 0
    b_harm: int | None = None
    noise_var: float | None = None
    # inference; q_star = None selects it on held-out columns
    q_star: int | None = None
    energy_threshold: float = DEFAULT_ENERGY_THRESHOLD
    holdout_fraction: float = DEFAULT_HOLDOUT_FRACTION
    # comparison experiments
    complexes: int = 20
    eps_points: int = 10
    trials: int = 100
    sample_step: int = 5
    order_lower: int = 5
    order_upper: int = 5
    joint: bool = False
    dedup_spectrum: bool = True
    ratios: tuple[float, ...] = (0.1, 0.2, 0.4, 0.6, 0.8, 1.0)
    mask_lower: str | None = None
    mask_upper: str | None = None
    plot: bool = True

    def resolved_noise(self) -> float:
        return DEFAULT_NOISE.get(self.experiment, 0.0) if self.noise_var is None else self.noise_var

    def complex_spec(self) -> ComplexSpec:
        return ComplexSpec(
            generator=self.generator,
            vertices=self.vertices,
            edges=self.edges,
            edge_prob=self.edge_prob,
            planted=self.planted,
            max_sides=self.max_sides,
            max_candidates=self.max_candidates,
            identifiable=self.identifiable,
        )

    def bands(self) -> dict:
        return {"b_irr": self.b_irr, "b_sol": self.b_sol, "b_harm": self.b_harm}

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.noise_var is not None and self.noise_var < 0:
            raise ValueError("noise_var must be nonnegative")
        for name in ("num_signals", "complexes", "eps_points", "trials", "sample_step", "order_lower", "order_upper"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


# -- config files ---------------------------------------------------------------

_NONE_WORDS = {"none", "auto", "all", ""}


def _convert(type_str: str, raw: str):
    raw = raw.strip()
    optional = "None" in type_str
    if optional and raw.lower() in _NONE_WORDS:
        return None
    base = type_str.replace("| None", "").strip()
    if base == "bool":
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if base == "int":
        return int(raw)
    if base == "float":
        return float(raw)
    if base.startswith("tuple"):
        return tuple(float(x) for x in raw.split(",") if x.strip())
    return raw


_FIELD_TYPES = {f.name: str(f.type) for f in dataclasses.fields(ExperimentConfig)}


def apply_overrides(cfg: ExperimentConfig, values: dict[str, str]) -> ExperimentConfig:
    """Return a copy with string-valued overrides converted to field types."""
    changes = {}
    for key, raw in values.items():
        name = key.strip().replace("-", "_")
        if name not in _FIELD_TYPES:
            raise ValueError(f"unknown config key {key!r}")
        changes[name] = _convert(_FIELD_TYPES[name], str(raw))
    return dataclasses.replace(cfg, **changes)


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {n}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return apply_overrides(base or ExperimentConfig(), values)


def load_config(path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    return parse_config(Path(path).read_text(), base)


def format_config(cfg: ExperimentConfig) -> str:
    lines = []
    for name, value in dataclasses.asdict(cfg).items():
        if value is None:
            text = "none"
        elif isinstance(value, (tuple, list)):
            text = ",".join(format(v, "g") for v in value)
        else:
            text = str(value).lower() if isinstance(value, bool) else str(value)
        lines.append(f"{name} = {text}")
    return "\n".join(lines) + "\n"


# -- output helpers ---------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".10g")
    return str(x)


def format_csv(header: list[str], rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(x) for x in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    Path(path).write_text(format_csv(header, rows))


@dataclass
class ExperimentResult:
    header: list[str]
    rows: list
    provenance: dict = field(default_factory=dict)
    files: dict[str, str] = field(default_factory=dict)
    plot: tuple | None = None  # (series, title, xlabel, ylabel)


# -- shared pieces -------------------------------------------------------------------


def _child_seeds(seed, n: int) -> list[np.random.SeedSequence]:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return ss.spawn(n)


def comparison_bases(
    complex: CellComplex, batch: np.ndarray, cfg: ExperimentConfig
) -> tuple[dict[str, SpectralBasis], dict]:
    """Edge bases of the inferred cell complex, the inferred simplicial complex and the bare graph.

    The simplicial pipeline is the cell pipeline restricted to triangles.
    """
    b1 = build_b1(complex)
    skeleton = complex.skeleton()
    bases, info = {}, {}
    for name, max_sides, q_fixed in (("cell", cfg.max_sides, cfg.q_star), ("simplicial", 3, None)):
        cands = enumerate_candidates(skeleton, max_sides, cfg.max_candidates)
        q = q_fixed
        if q is None:
            q = select_q_star(batch, b1, cands, cfg.holdout_fraction, energy_threshold=cfg.energy_threshold)
        res = infer_b2(batch, b1, cands, min(q, len(cands)), cfg.energy_threshold)
        bases[name] = spectral_basis(b1, res.b2_hat)
        info[name] = {"q_star": int(q), "polygons": [list(p) for p in res.polygons]}
    bases["graph"] = graph_basis(b1)
    return bases, info


def signal_band(basis: SpectralBasis, batch: np.ndarray, rtol: float = BAND_RTOL) -> np.ndarray:
    """Indices of basis columns carrying energy in ``batch``."""
    energy = np.mean(cft(basis, batch) ** 2, axis=1)
    peak = energy.max() if energy.size else 0.0
    return np.flatnonzero(energy > rtol * peak)


def sampling_errors(
    band_basis: np.ndarray, order: tuple[int, ...], signals: np.ndarray, m: int, noise_var: float, rng
) -> np.ndarray:
    """Per-signal MSE of reconstructing from the first ``m`` greedy samples."""
    from .sparse import SampleSet

    samples = SampleSet(indices=tuple(order[:m]), bandwidth=band_basis.shape[1])
    idx = list(samples.indices)
    E, n = signals.shape
    errors = np.empty(n)
    for i in range(n):
        y = signals[idx, i]
        if noise_var > 0:
            y = y + np.sqrt(noise_var) * rng.standard_normal(m)
        rec = reconstruct_from_samples(samples, y, band_basis)
        errors[i] = np.sum((rec - signals[:, i]) ** 2) / E
    return errors


def lowpass_masks(basis: SpectralBasis, b_sol: int, dedup: bool = True) -> tuple[SpectralMask, SpectralMask | None]:
    """Zero response on the irrotational spectrum; unit response on the lowest ``b_sol`` solenoidal modes."""
    lam_irr = component_eigenvalues(basis, IRROTATIONAL, dedup)
    lam_sol = component_eigenvalues(basis, SOLENOIDAL, dedup)
    mask_irr = SpectralMask(lam_irr, np.zeros_like(lam_irr))
    if lam_sol.size == 0 or b_sol < 1:
        return mask_irr, None
    sol_sorted = np.sort(basis.eigenvalues[basis.labels == SOLENOIDAL])
    cutoff = sol_sorted[min(b_sol, sol_sorted.size) - 1]
    tol = 1e-8 * max(1.0, cutoff)
    return mask_irr, SpectralMask(lam_sol, (lam_sol <= cutoff + tol).astype(float))


# -- experiments ------------------------------------------------------------------------


def _load_or_generate(cfg: ExperimentConfig) -> tuple[CellComplex, np.ndarray]:
    complex_seed, signal_seed = _child_seeds(cfg.seed, 2)
    if cfg.complex_path:
        complex = read_complex(cfg.complex_path)
    else:
        complex = generate_complex(cfg.complex_spec(), complex_seed)
    if cfg.signals_path:
        batch = read_matrix_csv(cfg.signals_path)
        if batch.shape[0] != complex.num_edges:
            raise ValueError(
                f"signals have {batch.shape[0]} rows but the complex has {complex.num_edges} edges"
            )
    else:
        batch = generate_signals(
            complex, cfg.num_signals, signal_seed, noise_var=cfg.resolved_noise(), **cfg.bands()
        )
    return complex, batch


def run_gen(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    complex, batch = _load_or_generate(cfg)
    write_complex(complex, out / "complex.txt")
    write_matrix_csv(batch, out / "signals.csv")
    basis = spectral_basis(build_b1(complex), build_b2(complex))
    counts = basis.counts()
    rows = [
        ("vertices", complex.vertex_count),
        ("edges", complex.num_edges),
        ("polygons", complex.num_polygons),
        ("signals", batch.shape[1]),
        ("irrotational_dim", counts[IRROTATIONAL]),
        ("solenoidal_dim", counts[SOLENOIDAL]),
        ("harmonic_dim", counts["harmonic"]),
    ]
    rows += [(f"polygons_{k}_sides", sum(len(p) == k for p in complex.polygons)) for k in range(3, cfg.max_sides + 1)]
    return ExperimentResult(
        header=["quantity", "value"],
        rows=rows,
        files={"complex": "complex.txt", "signals": "signals.csv"},
    )


def run_infer(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    complex, batch = _load_or_generate(cfg)
    b1 = build_b1(complex)
    cands = enumerate_candidates(complex.skeleton(), cfg.max_sides, cfg.max_candidates)
    q = cfg.q_star
    if q is None:
        q = select_q_star(batch, b1, cands, cfg.holdout_fraction, energy_threshold=cfg.energy_threshold)
    res = infer_b2(batch, b1, cands, q, cfg.energy_threshold)
    report = res.to_json()
    report["q_star"] = int(q)
    planted = set(complex.polygons)
    if planted:
        hits = len(planted & set(res.polygons))
        report["precision"] = hits / len(res.polygons) if res.polygons else 1.0
        report["recall"] = hits / len(planted)
    (out / "inference.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    write_complex(res.inferred_complex(), out / "inferred.txt")
    chosen = set(res.selected)
    rows = [
        (i, len(c), float(res.scores[i]), i in chosen, c in planted)
        for i, c in enumerate(cands.cycles)
    ]
    order = np.argsort(res.scores, kind="stable")
    plot = (
        {"score": (list(range(1, len(order) + 1)), [float(res.scores[i]) for i in order])},
        "Candidate cell scores (ascending)",
        "rank",
        "circulation energy",
    )
    return ExperimentResult(
        header=["candidate", "sides", "score", "selected", "planted"],
        rows=rows,
        provenance={"q_star": int(q), "num_candidates": len(cands)},
        files={"inference": "inference.json", "inferred_complex": "inferred.txt"},
        plot=plot,
    )


def sparsity_comparison(cfg: ExperimentConfig) -> tuple[np.ndarray, dict[str, np.ndarray], list]:
    """Per-complex sparsity and MSE tables for the cell, simplicial and graph bases.

    Epsilon is expressed relative to the mean column norm of each batch.
    Returns ``(relative_grid, {basis: array (complexes, points, 2)}, info)``.
    """
    rel_grid = np.linspace(0.0, 1.0, cfg.eps_points)
    tables: dict[str, list] = {"cell": [], "simplicial": [], "graph": []}
    info = []
    for child in _child_seeds(cfg.seed, cfg.complexes):
        complex_seed, signal_seed = child.spawn(2)
        complex = generate_complex(cfg.complex_spec(), complex_seed)
        batch = generate_signals(
            complex, cfg.num_signals, signal_seed, noise_var=cfg.resolved_noise(), **cfg.bands()
        )
        bases, q_info = comparison_bases(complex, batch, cfg)
        info.append(q_info)
        scale = float(np.mean(np.linalg.norm(batch, axis=0)))
        for name, basis in bases.items():
            rows = sparsity_mse_curve(batch, basis.eigenvectors, scale * rel_grid)
            tables[name].append([(r[1], r[2] / scale**2) for r in rows])
    return rel_grid, {k: np.array(v) for k, v in tables.items()}, info


def run_sparsify(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    grid, tables, info = sparsity_comparison(cfg)
    rows, series = [], {}
    for name, arr in tables.items():
        mean = arr.mean(axis=0)
        for eps, (sparsity, mse) in zip(grid, mean):
            rows.append((name, float(eps), float(sparsity), float(mse)))
        series[name] = ([float(m) for m in mean[:, 1]], [float(s) for s in mean[:, 0]])
    # plot sparsity against MSE, MSE ascending
    series = {k: (list(reversed(x)), list(reversed(y))) for k, (x, y) in series.items()}
    return ExperimentResult(
        header=["basis", "epsilon", "sparsity", "mse"],
        rows=rows,
        provenance={"q_star": [{k: v["q_star"] for k, v in i.items()} for i in info]},
        plot=(series, "Sparsity vs. mean squared error", "MSE (relative)", "nonzero coefficients"),
    )


def sampling_comparison(cfg: ExperimentConfig) -> tuple[dict, dict]:
    """MSE of greedy-sampled reconstruction per basis and sample count (mean over trials)."""
    complex_seed, train_seed, trial_seed, noise_seed = _child_seeds(cfg.seed, 4)
    complex = generate_complex(cfg.complex_spec(), complex_seed)
    train = generate_signals(complex, cfg.num_signals, train_seed, **cfg.bands())
    bases, q_info = comparison_bases(complex, train, cfg)
    signals = generate_signals(complex, cfg.trials, trial_seed, **cfg.bands())
    E = complex.num_edges
    rng = np.random.default_rng(noise_seed)
    bands = {name: signal_band(basis, train) for name, basis in bases.items()}
    f_min = min(b.size for b in bands.values())
    counts = sorted(set(range(f_min, E + 1, cfg.sample_step)) | {b.size for b in bands.values()} | {E})
    table: dict[str, list] = {}
    for name, basis in bases.items():
        u_band = basis.eigenvectors[:, bands[name]]
        order = maxdet_select(u_band, E).indices
        table[name] = [
            (m, float(np.mean(sampling_errors(u_band, order, signals, m, cfg.resolved_noise(), rng))))
            for m in counts
            if m >= u_band.shape[1]
        ]
    return table, {"bandwidth": {k: int(v.size) for k, v in bands.items()}, "q_star": {k: v["q_star"] for k, v in q_info.items()}}


def run_sample(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    table, info = sampling_comparison(cfg)
    rows = [(name, m, mse) for name, vals in table.items() for m, mse in vals]
    series = {name: ([m for m, _ in vals], [float(np.log10(max(mse, 1e-300))) for _, mse in vals]) for name, vals in table.items()}
    return ExperimentResult(
        header=["basis", "num_samples", "mse"],
        rows=rows,
        provenance=info,
        plot=(series, "Mean squared error vs. number of samples", "samples", "log10 MSE"),
    )


def _filter_output(lap, basis: SpectralBasis, signal: np.ndarray, b_sol: int, cfg: ExperimentConfig, joint: bool) -> np.ndarray:
    mask_irr, mask_sol = lowpass_masks(basis, b_sol, cfg.dedup_spectrum)
    if mask_sol is None:
        return np.zeros_like(signal)
    if joint:
        if mask_irr.eigenvalue_grid.size == 0:
            mask_irr = SpectralMask(np.zeros(0), np.zeros(0))
        design = design_joint(mask_irr, mask_sol, cfg.order_lower + cfg.order_upper).as_filter_design()
    elif mask_irr.eigenvalue_grid.size == 0:
        design = design_separate(mask_sol, mask_sol, 1, cfg.order_upper)
        design = FilterDesign(np.zeros(0), design.coeffs_sol, 0.0, design.fit_residual_sol)
    else:
        design = design_separate(mask_irr, mask_sol, cfg.order_lower, cfg.order_upper)
    return apply_filter(signal, lap, design)


def filter_sweep(cfg: ExperimentConfig) -> list[dict]:
    """SNR of the solenoidal output for separate, joint and simplicial-only designs."""
    records = []
    for k, child in enumerate(_child_seeds(cfg.seed, cfg.complexes)):
        complex_seed, signal_seed = child.spawn(2)
        complex = generate_complex(cfg.complex_spec(), complex_seed)
        b1 = build_b1(complex)
        lap = build_laplacians(b1, build_b2(complex))
        basis = partition_basis(lap)
        simplicial = complex.with_polygons([p for p in complex.polygons if len(p) == 3])
        lap_s = build_laplacians(b1, build_b2(simplicial))
        basis_s = partition_basis(lap_s)
        n_sol = basis.solenoidal.shape[1]
        has_cells = any(len(p) > 3 for p in complex.polygons)
        for ratio, sig_seed in zip(cfg.ratios, signal_seed.spawn(len(cfg.ratios))):
            b_sol = int(np.clip(round(ratio * cfg.b_irr), 1, n_sol))
            parts = generate_signal_components(
                complex, cfg.num_signals, sig_seed, b_irr=cfg.b_irr, b_sol=b_sol, b_harm=0,
                noise_var=cfg.resolved_noise(), basis=basis,
            )
            clean = parts["solenoidal"]
            s = parts["irrotational"] + clean + parts["noise"]
            outputs = {
                "separate": _filter_output(lap, basis, s, b_sol, cfg, joint=False),
                "joint": _filter_output(lap, basis, s, b_sol, cfg, joint=True),
                "simplicial": _filter_output(lap_s, basis_s, s, b_sol, cfg, joint=False),
            }
            for design, x in outputs.items():
                records.append(
                    {
                        "complex": k,
                        "ratio": float(ratio),
                        "b_sol": b_sol,
                        "design": design,
                        "snr_db": output_snr(clean, x),
                        "non_triangular": has_cells,
                    }
                )
    return records


def run_filter(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    if cfg.mask_lower or cfg.mask_upper:
        return run_filter_masks(cfg, out)
    records = filter_sweep(cfg)
    write_csv(
        out / "runs.csv",
        ["complex", "ratio", "b_sol", "design", "snr_db"],
        [(r["complex"], r["ratio"], r["b_sol"], r["design"], r["snr_db"]) for r in records],
    )
    designs = ("separate", "joint", "simplicial")
    rows, series = [], {d: ([], []) for d in designs}
    for ratio in cfg.ratios:
        for d in designs:
            vals = [r["snr_db"] for r in records if r["ratio"] == float(ratio) and r["design"] == d]
            mean = float(np.mean(vals))
            rows.append((float(ratio), d, mean))
            series[d][0].append(float(ratio))
            series[d][1].append(mean)
    return ExperimentResult(
        header=["ratio", "design", "snr_db"],
        rows=rows,
        files={"runs": "runs.csv"},
        plot=(series, "SNR at the solenoidal filter output", "B_sol / B_irr", "SNR (dB)"),
    )


def run_filter_masks(cfg: ExperimentConfig, out: Path) -> ExperimentResult:
    """Design from mask files and filter the given (or generated) signals."""
    complex, batch = _load_or_generate(cfg)
    lap = build_laplacians(build_b1(complex), build_b2(complex))
    basis = partition_basis(lap)

    def load(path, label):
        if path:
            return read_mask(path)
        lam = component_eigenvalues(basis, label, cfg.dedup_spectrum)
        return SpectralMask(lam, np.zeros_like(lam))

    mask_irr = load(cfg.mask_lower, IRROTATIONAL)
    mask_sol = load(cfg.mask_upper, SOLENOIDAL)
    if cfg.joint:
        joint = design_joint(mask_irr, mask_sol, cfg.order_lower + cfg.order_upper)
        design = joint.as_filter_design()
        coeffs = {"joint": joint.coeffs.tolist(), "fit_residual": joint.fit_residual}
    else:
        design = design_separate(mask_irr, mask_sol, cfg.order_lower, cfg.order_upper)
        coeffs = {
            "lower": design.coeffs_irr.tolist(),
            "upper": design.coeffs_sol.tolist(),
            "fit_residual_lower": design.fit_residual_irr,
            "fit_residual_upper": design.fit_residual_sol,
        }
    filtered = apply_filter(batch, lap, design)
    write_matrix_csv(filtered, out / "filtered.csv")
    (out / "design.json").write_text(json.dumps(coeffs, indent=2, sort_keys=True) + "\n")
    rows = [
        (i, float(np.sum(batch[:, i] ** 2)), float(np.sum(filtered[:, i] ** 2)))
        for i in range(batch.shape[1])
    ]
    return ExperimentResult(
        header=["column", "input_energy", "output_energy"],
        rows=rows,
        files={"filtered": "filtered.csv", "design": "design.json"},
    )


RUNNERS = {
    "gen": run_gen,
    "infer": run_infer,
    "sparsify": run_sparsify,
    "sample": run_sample,
    "filter": run_filter,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run ``cfg.experiment`` and write its artifacts into ``cfg.output_dir``."""
    cfg.validate()
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = RUNNERS[cfg.experiment](cfg, out)
    write_csv(out / "results.csv", result.header, result.rows)
    provenance = {
        "package_version": __version__,
        "config": dataclasses.asdict(cfg),
        "noise_var_resolved": cfg.resolved_noise(),
        "results_header": result.header,
        "files": {"results": "results.csv", **result.files},
        **result.provenance,
    }
    if cfg.plot and result.plot is not None:
        write_line_chart(out / "plot.svg", *result.plot)
        provenance["files"]["plot"] = "plot.svg"
    (out / "config.resolved.json").write_text(json.dumps(provenance, indent=2, sort_keys=True) + "\n")
    return result
