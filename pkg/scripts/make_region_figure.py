"""Classify the rank-3 cell reachable from one EPR pair and draw it.

    python3 scripts/make_region_figure.py --resolution 100 --out results/
"""
import argparse
from pathlib import Path

from ppt_forge import lab


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=int, default=100)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    samples = lab.region_sample(args.resolution, "Catalytic")
    lab.emit_region_csv(samples, args.out / "region.csv")
    lab.emit_region_svg(samples, args.out / "region.svg")
    for klass, n in lab.region_counts(samples).items():
        print(f"{klass:>14}: {n}")


if __name__ == "__main__":
    main()
