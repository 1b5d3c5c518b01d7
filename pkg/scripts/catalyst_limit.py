"""Bounds on T(K*C; lambda x U_C) as the maximally entangled catalyst grows.

    python3 scripts/catalyst_limit.py --K 2 --target 0.05,0.05,0.9 --c-max 64
"""
import argparse

from ppt_forge import catalysis, closed_form, ppt_sdp
from ppt_forge.spectra import SchmidtVector, parse_vector, s_half_power, tensor


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--K", type=int, default=2)
    ap.add_argument("--target", type=parse_vector, default=parse_vector("0.05,0.05,0.9"))
    ap.add_argument("--c-max", type=int, default=64)
    args = ap.parse_args()

    lam = args.target.nonzero()
    print(f"limit 2^S_1/2 / K = {s_half_power(lam) / args.K:.8f}")
    print(f"{'C':>4} {'lower':>12} {'T1':>12} {'upper':>12}")
    for C in range(1, args.c_max + 1):
        tgt = tensor(lam, SchmidtVector.uniform(C))
        lo, hi = ppt_sdp.bounds(tgt, args.K * C)
        t1 = closed_form.t1_value(tgt, args.K * C)
        if C <= 8 or C % 8 == 0:
            print(f"{C:>4} {lo:>12.8f} {t1:>12.8f} {hi:>12.8f}")
    report = catalysis.catalyst_scan(catalysis.CatalysisQuery(args.K, lam, args.c_max))
    print(f"minimal catalyst rank: {report.minimal_C}")


if __name__ == "__main__":
    main()
