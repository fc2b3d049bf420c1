"""Benchmark sweeps over noise levels, template-length mismatch, and
measurement length.

Each trial synthesizes one fresh measurement with the true template length
and hands every requested method the same measurement (paired comparison),
possibly with a mismatched template length. Scoring always uses the true
length's radius. Per-trial seeds are derived as ``base_seed + trial_index``
so trials are independent and the whole sweep is reproducible; per-trial
detector failures are logged and scored as empty detections.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .convex import ConvexConfig, convex_detect
from .dp import dp_detect
from .gap import GapConfig, estimate_k
from .greedy import greedy_detect, random_detect
from .metrics import score
from .model import DetectError, PlacementSet, ValidationError
from .synth import SEPARATIONS, SynthConfig, rect_template, synthesize

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "ScalingRecord",
    "run_sweep",
    "run_length_scaling",
    "emit_csv",
    "emit_scaling_csv",
    "load_records",
    "emit_svg",
    "emit_scaling_svg",
    "load_config",
]

log = logging.getLogger(__name__)

K_MODES = ("known", "gap")
_BENCH_METHODS = ("dp", "greedy", "convex", "random")
_CONVEX_N_LIMIT = 200


@dataclass(frozen=True)
class BenchConfig:
    """One sweep: noise grid x methods at fixed geometry.

    ``length_hat`` is the template length handed to the detectors (the true
    ``length`` is always used for synthesis and scoring); ``k_mode="gap"``
    estimates the occurrence count for dp/greedy instead of using the true
    one (convex and random always receive the true count).
    """

    n_samples: int
    length: int
    k: int
    sigma2_grid: tuple[float, ...]
    trials: int = 300
    methods: tuple[str, ...] = ("dp", "greedy")
    separation: str = "arbitrary"
    length_hat: int | None = None
    k_mode: str = "known"
    k_max: int | None = None
    perms: int = 50
    seed: int = 0
    allow_slow_convex: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if not self.sigma2_grid:
            raise ValidationError("sigma2 grid must be non-empty")
        if any(s < 0 for s in self.sigma2_grid):
            raise ValidationError("sigma2 grid entries must be non-negative")
        if not self.methods:
            raise ValidationError("need at least one method")
        unknown = set(self.methods) - set(_BENCH_METHODS)
        if unknown:
            raise ValidationError(f"unknown methods {sorted(unknown)}")
        if self.separation not in SEPARATIONS:
            raise ValidationError(f"unknown separation {self.separation!r}")
        if self.length_hat is not None and self.length_hat < 1:
            raise ValidationError("length_hat must be >= 1")
        if self.k_mode not in K_MODES:
            raise ValidationError(f"unknown k_mode {self.k_mode!r}")
        if (
            "convex" in self.methods
            and self.n_samples > _CONVEX_N_LIMIT
            and not self.allow_slow_convex
        ):
            raise ValidationError(
                f"convex method is limited to N <= {_CONVEX_N_LIMIT} by default "
                "(set allow_slow_convex to override)"
            )

    @property
    def detector_length(self) -> int:
        return self.length if self.length_hat is None else self.length_hat


@dataclass(frozen=True)
class BenchRecord:
    sigma2: float
    method: str
    k_mode: str
    mean_f1: float
    mean_recall: float
    mean_precision: float
    mean_k_err: float
    trials: int


@dataclass(frozen=True)
class ScalingRecord:
    n_samples: int
    method: str
    k_mode: str
    mean_f1: float
    mean_recall: float
    mean_precision: float
    mean_k_err: float
    trials: int


def _detect_one(method, y, template, cfg: BenchConfig, sigma2, rng, trial_seed):
    if cfg.k_mode == "gap" and method in ("dp", "greedy"):
        k_max = cfg.k_max or max(cfg.n_samples // cfg.detector_length, 1)
        gap_cfg = GapConfig(k_max=k_max, perms=cfg.perms, seed=trial_seed)
        _, result = estimate_k(y, template, gap_cfg, detector=method)
        return result
    if method == "dp":
        return dp_detect(y, template, cfg.k)
    if method == "greedy":
        return greedy_detect(y, template, cfg.k)
    if method == "random":
        return random_detect(y, template, cfg.k, rng)
    return convex_detect(y, template, cfg.k, ConvexConfig(sigma2=sigma2))


def run_sweep(cfg: BenchConfig) -> list[BenchRecord]:
    """Mean scores per (sigma2, method) over paired synthetic trials."""
    true_template = rect_template(cfg.length)
    detector_template = rect_template(cfg.detector_length)
    records = []
    for sig_idx, sigma2 in enumerate(cfg.sigma2_grid):
        sums = {m: np.zeros(4) for m in cfg.methods}
        for t in range(cfg.trials):
            trial_seed = cfg.seed + sig_idx * cfg.trials + t
            rng = np.random.default_rng(trial_seed)
            synth_cfg = SynthConfig(
                n_samples=cfg.n_samples,
                length=cfg.length,
                k=cfg.k,
                sigma2=sigma2,
                separation=cfg.separation,
                seed=trial_seed,
            )
            y, truth = synthesize(synth_cfg, true_template, rng)
            for method in cfg.methods:
                try:
                    result = _detect_one(
                        method, y, detector_template, cfg, sigma2, rng, trial_seed
                    )
                    placements = result.placements
                except DetectError as exc:
                    log.warning(
                        "trial %d method %s failed (%s); scoring as empty",
                        trial_seed,
                        method,
                        exc,
                    )
                    placements = PlacementSet([], cfg.detector_length)
                rep = score(truth, placements, cfg.length, cfg.k)
                sums[method] += (rep.f1, rep.recall, rep.precision, rep.k_err)
        for method in cfg.methods:
            f1, recall, precision, k_err = sums[method] / cfg.trials
            records.append(
                BenchRecord(
                    sigma2=float(sigma2),
                    method=method,
                    k_mode=cfg.k_mode,
                    mean_f1=float(f1),
                    mean_recall=float(recall),
                    mean_precision=float(precision),
                    mean_k_err=float(k_err),
                    trials=cfg.trials,
                )
            )
    return records


def run_length_scaling(
    n_grid,
    length: int = 20,
    density: float = 0.6,
    sigma2: float = 1.0,
    trials: int = 100,
    perms: int = 50,
    seed: int = 0,
) -> list[ScalingRecord]:
    """Fixed-density sweep over the measurement length, count unknown.

    Each grid point must make ``density * N / length`` a positive integer
    (the true K); dp and greedy then estimate it via the gap statistic.
    """
    n_grid = tuple(int(n) for n in n_grid)
    if not n_grid:
        raise ValidationError("n_grid must be non-empty")
    records = []
    for n_idx, n in enumerate(n_grid):
        k_float = density * n / length
        k = int(round(k_float))
        if k < 1 or abs(k_float - k) > 1e-9:
            raise ValidationError(
                f"density {density} with N={n}, L={length} needs integer K >= 1, "
                f"got {k_float}"
            )
        cfg = BenchConfig(
            n_samples=n,
            length=length,
            k=k,
            sigma2_grid=(sigma2,),
            trials=trials,
            methods=("dp", "greedy"),
            separation="arbitrary",
            k_mode="gap",
            perms=perms,
            seed=seed + n_idx * trials,
        )
        for rec in run_sweep(cfg):
            records.append(
                ScalingRecord(
                    n_samples=n,
                    method=rec.method,
                    k_mode=rec.k_mode,
                    mean_f1=rec.mean_f1,
                    mean_recall=rec.mean_recall,
                    mean_precision=rec.mean_precision,
                    mean_k_err=rec.mean_k_err,
                    trials=rec.trials,
                )
            )
    return records


_CSV_HEADER = "sigma2,method,k_mode,f1,recall,precision,k_err,trials"
_SCALING_HEADER = "N,method,k_mode,f1,recall,precision,k_err,trials"


def _record_row(first, rec) -> str:
    return ",".join(
        [
            first,
            rec.method,
            rec.k_mode,
            format(rec.mean_f1, ".6g"),
            format(rec.mean_recall, ".6g"),
            format(rec.mean_precision, ".6g"),
            format(rec.mean_k_err, ".6g"),
            str(rec.trials),
        ]
    )


def emit_csv(records, path) -> None:
    """Sweep records as CSV; floats carry six significant digits."""
    if not records:
        raise ValidationError("no records to write")
    lines = [_CSV_HEADER]
    lines += [_record_row(format(r.sigma2, ".6g"), r) for r in records]
    Path(path).write_text("\n".join(lines) + "\n")


def emit_scaling_csv(records, path) -> None:
    if not records:
        raise ValidationError("no records to write")
    lines = [_SCALING_HEADER]
    lines += [_record_row(str(r.n_samples), r) for r in records]
    Path(path).write_text("\n".join(lines) + "\n")


def load_records(path) -> list[BenchRecord]:
    """Inverse of :func:`emit_csv` (up to the six-digit float format)."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != _CSV_HEADER:
        raise ValidationError(f"{path}: not a sweep CSV")
    records = []
    for line in lines[1:]:
        sigma2, method, k_mode, f1, recall, precision, k_err, trials = line.split(",")
        records.append(
            BenchRecord(
                sigma2=float(sigma2),
                method=method,
                k_mode=k_mode,
                mean_f1=float(f1),
                mean_recall=float(recall),
                mean_precision=float(precision),
                mean_k_err=float(k_err),
                trials=int(trials),
            )
        )
    return records


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _render_svg(series, xlabel, ylabel, path) -> None:
    """Minimal deterministic line chart: one polyline per labeled series."""
    width, height = 640, 420
    left, right, top, bottom = 60, 150, 20, 50
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs = sorted({x for pts in series.values() for x, _ in pts})
    ys = [y for pts in series.values() for _, y in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys + [0.0]), max(ys + [1.0])
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x):
        return left + plot_w * (x - x_lo) / (x_hi - x_lo)

    def sy(y):
        return top + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" '
        f'stroke="black"/>',
    ]
    for x in xs:
        parts.append(
            f'<text x="{sx(x):.1f}" y="{top + plot_h + 18}" font-size="11" '
            f'text-anchor="middle">{x:.6g}</text>'
        )
    for i in range(5):
        y = y_lo + (y_hi - y_lo) * i / 4
        parts.append(
            f'<text x="{left - 6}" y="{sy(y):.1f}" font-size="11" '
            f'text-anchor="end">{y:.3g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 10}" font-size="13" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="15" y="{top + plot_h / 2:.1f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 15 {top + plot_h / 2:.1f})">'
        f"{ylabel}</text>"
    )
    for idx, (label, pts) in enumerate(series.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in sorted(pts))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="2"/>'
        )
        ly = top + 16 + 16 * idx
        lx = left + plot_w + 10
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{lx + 24}" y="{ly}" font-size="12">{label}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def emit_svg(records, path) -> None:
    """Mean F1 versus noise level, one polyline per method."""
    if not records:
        raise ValidationError("no records to plot")
    series: dict[str, list] = {}
    for r in records:
        series.setdefault(r.method, []).append((r.sigma2, r.mean_f1))
    _render_svg(series, "noise variance", "mean F1", path)


def emit_scaling_svg(records, path) -> None:
    """Mean F1 versus measurement length, one polyline per method."""
    if not records:
        raise ValidationError("no records to plot")
    series: dict[str, list] = {}
    for r in records:
        series.setdefault(r.method, []).append((float(r.n_samples), r.mean_f1))
    _render_svg(series, "measurement length", "mean F1", path)


def load_config(path) -> BenchConfig:
    """Build a sweep config from a JSON object mirroring the field names."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    for key in ("sigma2_grid", "methods"):
        if key in raw and isinstance(raw[key], list):
            raw[key] = tuple(raw[key])
    try:
        return BenchConfig(**raw)
    except TypeError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def with_overrides(cfg: BenchConfig, **kwargs) -> BenchConfig:
    return replace(cfg, **kwargs)
