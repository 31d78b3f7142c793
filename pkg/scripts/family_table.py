"""Height of Q(sqrt(-p)) against the closed form through L'/L(chi, 1), for primes p = 1 mod 4."""

import argparse
import math

from colmez.cyclotomic import is_prime
from colmez.heights import verify_example_family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p", type=int, default=200)
    ap.add_argument("--convention", default="paper", choices=("paper", "analytic"))
    args = ap.parse_args()
    primes = [p for p in range(5, args.max_p + 1) if p % 4 == 1 and is_prime(p)]
    table = verify_example_family(primes, args.convention)
    print(f"{'p':>5} {'d':>6} {'h':>12} {'delta':>18} {'h - log(d)/4':>14}")
    for r in table.rows:
        print(f"{r.p:>5} {r.d:>6} {r.h_conj_route:>12.6f} {r.delta:>18.15f} {r.h_minus_quarter_log_d:>14.6f}")
    print(f"spread of delta: {table.spread:.2e}; log 2pi = {math.log(2 * math.pi):.15f}")


if __name__ == "__main__":
    main()
