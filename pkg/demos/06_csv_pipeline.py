"""End-to-end CSV pipeline: sweeps on disk, ready for the plot frontend.

Runs the CLI in-process to produce the three CSV kinds the frontend
renders: a fit-estimator error sweep, a series-bound error sweep, and
fit-curve samples.  Files land in demos/output/.
"""

from pathlib import Path

from gmixent.cli import main

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)
cache = str(out_dir / "oracle_cache.json")

jobs = [
    (
        "polyfit error sweep (one curve per r)",
        out_dir / "polyfit_sweep.csv",
        ["sweep", "--preset", "table1_row1", "--method", "polyfit",
         "--C", "2..8", "--r", "-2.5,-2,-1,0,1"],
    ),
    (
        "series-bound error sweep (one curve per beta)",
        out_dir / "taylor_sweep.csv",
        ["sweep", "--preset", "table1_row2", "--method", "taylor",
         "--C", "2..12", "--beta", "0.5,1"],
    ),
    (
        "fit-curve samples on (0, 2]",
        out_dir / "fit_curve.csv",
        ["sweep", "--fit-curve", "--b", "2", "--r", "-2,-1,1", "--C", "6",
         "--points", "200"],
    ),
]

for label, path, argv in jobs:
    code = main(argv + ["--cache", cache, "--out", str(path)])
    assert code == 0, f"{label} failed with exit code {code}"
    lines = path.read_text().splitlines()
    print(f"{label}\n  -> {path}  ({len(lines) - 1} rows)")
    print(f"     {lines[0]}")
    print(f"     {lines[1]}")

print("\nrender them with the frontend, e.g.:")
print("  cd frontend && npm run render -- --csv ../demos/output/polyfit_sweep.csv \\")
print("      --kind polyfit_error --out ../demos/output/polyfit_error.svg")
