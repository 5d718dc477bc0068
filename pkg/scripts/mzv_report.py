"""Print the multiple zeta value relation checks as a table (or JSON with --json)."""
import argparse
import json

import mpmath

from nestsum.mzv import (
    admissible_indices, check_double_shuffle, derivation_check, duality_check, nielsen_check,
    ramanujan_dilog_check, repeated_argument, REPEATED_FAMILIES, sum_theorem_check,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=20)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    reports = [duality_check(5, args.prec), check_double_shuffle(5, args.prec), nielsen_check(args.prec)]
    reports += [sum_theorem_check(n, k, args.prec) for n in range(3, 8) for k in range(2, n)]
    reports += [derivation_check(key, args.prec) for w in range(2, 6) for key in admissible_indices(w)]
    rows = [(r.name, r.ok, mpmath.nstr(mpmath.mpf(r.max_residual), 3)) for r in reports]

    rama = ramanujan_dilog_check(args.prec)
    rep = []
    for fam in REPEATED_FAMILIES:
        for n in (1, 2):
            try:
                r = repeated_argument(fam, n, args.prec)
            except Exception as exc:  # beyond the oracle
                rep.append({"family": fam, "n": n, "skipped": str(exc)})
                continue
            rep.append({"family": fam, "n": n, "deviation": mpmath.nstr(abs(r.implemented - r.oracle), 3),
                        "printed_matches": r.printed_matches})

    if args.json:
        print(json.dumps({"relations": [dict(zip(("name", "ok", "max_residual"), r)) for r in rows],
                          "ramanujan": rama, "repeated": rep}, indent=1, default=str))
        return
    width = max(len(r[0]) for r in rows)
    for name, ok, res in rows:
        print(f"{name:<{width}}  {'ok  ' if ok else 'FAIL'}  {res}")
    print()
    for e in rama:
        extra = "" if e["ok"] else "  variants: " + ", ".join(v["coeff"] for v in e.get("variants", []))
        print(f"{e['identity']:<28} {'ok  ' if e['ok'] else 'FAIL'}{extra}")
    print()
    for r in rep:
        print(r)


if __name__ == "__main__":
    main()
