"""Compare the filtration, character and valuation routes for mu_Art,p over every CM field up to a conductor."""

import argparse
import time

from colmez.classfun import ClassFunction
from colmez.conductors import (
    default_generator,
    index_primes,
    mu_art_p,
    mu_art_p_characters,
    mu_art_p_local,
    ramified_primes,
)
from colmez.galois import cm_fields


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--conductor-max", type=int, default=30)
    ap.add_argument("--max-degree", type=int, default=12)
    args = ap.parse_args()
    start = time.perf_counter()
    compared = skipped = 0
    for fld in cm_fields(args.conductor_max):
        if fld.degree > args.max_degree:
            continue
        alpha = default_generator(fld)
        bad = set(index_primes(fld, alpha))
        for p in ramified_primes(fld):
            for y in fld.elements:
                f = ClassFunction.indicator(fld, y)
                a = mu_art_p(f, p)
                if a != mu_art_p_characters(f, p):
                    raise SystemExit(f"character route disagrees on {fld.label} at y={y}, p={p}")
                if p in bad:
                    skipped += 1
                    continue
                if a != mu_art_p_local(fld, y, p, alpha):
                    raise SystemExit(f"valuation route disagrees on {fld.label} at y={y}, p={p}")
                compared += 1
        if bad:
            print(f"{fld.label}: index primes {sorted(bad)}")
    print(f"{compared} agreements, {skipped} skipped at index primes, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
