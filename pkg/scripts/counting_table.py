"""Print basis and counting tables by weight."""
import argparse

from nestsum import DomainError
from nestsum.algebra import FAMILIES, counting_catalog
from nestsum.mzv import COUNT_KINDS, counting_sequences


def cell(fn):
    try:
        return str(fn())
    except DomainError:
        return "-"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--wmax", type=int, default=6)
    ap.add_argument("--variant", choices=["corrected", "printed"], default="corrected")
    args = ap.parse_args()
    ws = range(1, args.wmax + 1)
    print("family      " + "".join(f"{w:>8}" for w in ws))
    for fam in FAMILIES:
        print(f"{fam:<12}" + "".join(f"{cell(lambda: counting_catalog(fam, w, variant=args.variant)):>8}" for w in ws))
    print()
    for kind in COUNT_KINDS:
        print(f"{kind:<12}" + "".join(f"{cell(lambda: counting_sequences(kind, w)):>8}" for w in ws))


if __name__ == "__main__":
    main()
