"""Partial-type heights for every admissible pair: direct route against the character-sum formula."""

import argparse

from colmez.cmtypes import partial_cm_type
from colmez.galois import parse_field_spec
from colmez.heights import admissible_pairs, height_partial, height_partial_explicit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fields", nargs="*", default=["5", "20:9", "7", "13", "16"])
    args = ap.parse_args()
    for spec in args.fields:
        fld = parse_field_spec(spec)
        worst = 0.0
        for s, t in admissible_pairs(fld):
            a = height_partial(partial_cm_type(fld, [s, t])).total
            b = height_partial_explicit(fld, s, t).total
            worst = max(worst, abs(a - b))
        print(f"{fld.label:>8}  g={fld.g}  max |direct - explicit| = {worst:.2e}")


if __name__ == "__main__":
    main()
