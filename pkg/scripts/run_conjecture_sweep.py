"""Compare the SDP value T with the rank-one value T1 on random instances.

    python3 scripts/run_conjecture_sweep.py --n 500 --seed 0 --out results/
"""
import argparse
import json
from pathlib import Path

from ppt_forge import lab


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--d-max", type=int, default=6)
    ap.add_argument("--K-max", type=int, default=6)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    records, summary = lab.conjecture_sweep(args.n, range(3, args.d_max + 1),
                                            range(2, args.K_max + 1), seed=args.seed,
                                            jobs=args.jobs)
    lab.emit_sweep_csv(records, args.out / "sweep.csv")
    lab.emit_sweep_summary(summary, args.out / "sweep_summary.json")

    print(f"{'d':>3} {'K':>3} {'count':>6} {'max gap':>12}")
    cells = {}
    for r in records:
        cells.setdefault((r.d, r.K), []).append(r.gap)
    for (d, K), gaps in sorted(cells.items()):
        print(f"{d:>3} {K:>3} {len(gaps):>6} {max(gaps):>12.3e}")
    print(json.dumps({"n": summary.n, "max_gap": summary.max_gap,
                      "flagged": len(summary.flagged), "violations": len(summary.violations)}))


if __name__ == "__main__":
    main()
