"""A small version of the noise-sweep benchmark.

Every trial synthesizes a fresh measurement and hands the same data to
each method, so the comparison is paired. Outputs land next to this
script as CSV plus a simple SVG line chart.
"""

from pathlib import Path

from dpdetect.bench import BenchConfig, emit_csv, emit_svg, run_sweep

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

cfg = BenchConfig(
    n_samples=300,
    length=30,
    k=6,
    sigma2_grid=(0.5, 1.0, 2.0, 3.0),
    trials=100,  # enough for a readable demo; bump for smoother curves
    methods=("dp", "greedy", "random"),
    separation="arbitrary",
    seed=23,
)
records = run_sweep(cfg)

print(f"{'sigma2':>7} {'method':>8} {'F1':>7} {'recall':>7} {'precision':>9}")
for r in records:
    print(
        f"{r.sigma2:7.2f} {r.method:>8} {r.mean_f1:7.3f} "
        f"{r.mean_recall:7.3f} {r.mean_precision:9.3f}"
    )

csv_path = out_dir / "noise_sweep.csv"
svg_path = out_dir / "noise_sweep.svg"
emit_csv(records, csv_path)
emit_svg(records, svg_path)
print(f"\nwrote {csv_path}\nwrote {svg_path}")
