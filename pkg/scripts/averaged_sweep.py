"""Averaged-height residuals under both normalizations of Z at the trivial character."""

import argparse
import math

from colmez.galois import cm_fields
from colmez.heights import verify_averaged


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--conductor-max", type=int, default=24)
    ap.add_argument("--max-g", type=int, default=6)
    args = ap.parse_args()
    log2pi = math.log(2 * math.pi)
    print(f"{'field':>8} {'g':>3} {'paper':>12} {'analytic/(g log 2pi)':>22}")
    for fld in cm_fields(args.conductor_max):
        if fld.g > args.max_g:
            continue
        p = verify_averaged(fld, "paper").residual
        a = verify_averaged(fld, "analytic").residual
        print(f"{fld.label:>8} {fld.g:>3} {p:>12.2e} {a / (fld.g * log2pi):>22.15f}")


if __name__ == "__main__":
    main()
