"""Print the weight-class census for a grid of (p, n) with Hilbert fingerprints and timings.

    python scripts/census_table.py --primes 2 3 5 --dims 1 2 3 --dmax 8
"""

import argparse
import time

from fsandwich.pipeline import run_census


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    parser.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--dmax", type=int, default=8)
    parser.add_argument("--no-localization", action="store_true",
                        help="skip the localization check (the slowest oracle)")
    args = parser.parse_args()

    total = 0.0
    print(f"{'p':>2} {'n':>2}  {'weights':<14} {'orbit':>5}  {'verdict':<9} {'ok':<5} hilbert")
    for p in args.primes:
        for n in args.dims:
            start = time.perf_counter()
            report, code = run_census(p, n, args.dmax, stable=True, localization=not args.no_localization)
            elapsed = time.perf_counter() - start
            total += elapsed
            for row in report["classes"]:
                ok = "-" if row["verify_passed"] is None else str(row["verify_passed"])
                hilbert = "" if row["hilbert"] is None else " ".join(map(str, row["hilbert"]))
                print(f"{p:>2} {n:>2}  {str(tuple(row['weights'])):<14} {row['orbit_size']:>5}  "
                      f"{row['verdict']:<9} {ok:<5} {hilbert}")
            print(f"   -- p={p} n={n}: {len(report['classes'])} classes, exit {code}, {elapsed:.2f}s")
    print(f"total {total:.2f}s")


if __name__ == "__main__":
    main()
