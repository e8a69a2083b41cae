"""Survey of how often field extensions are needed for inputs over F_p.

Two questions, answered by exhaustion for small (p, n):

* beta: for the canonical representative (A[0][0] = 0) of a p-closed class,
  how often is beta != 0, and how often does the Artin-Schreier equation
  c^p - alpha c = beta have no root in F_p (so no representative over F_p
  satisfies a pure A^p = alpha A)?
* eigenbasis: for diagonalizable classes, how often does the Kummer root
  lam (lam^{p-1} = alpha) or the eigenbasis leave F_p?

    python scripts/extension_survey.py --p 2 3 --n 1
    python scripts/extension_survey.py --p 2 --n 2
"""

import argparse
import itertools
from collections import Counter

from fsandwich.diagonalize import Verdict, diagonalize
from fsandwich.errors import ZeroClass
from fsandwich.field import make_field
from fsandwich.vector_field import class_from_matrix, p_closed_certificate


def survey(p: int, n: int) -> Counter:
    F = make_field(p)
    size = n + 1
    stats: Counter = Counter()
    for entries in itertools.product(range(p), repeat=size * size - 1):
        # A[0][0] = 0 picks the canonical representative of each class
        flat = (0,) + entries
        rows = [list(flat[i * size:(i + 1) * size]) for i in range(size)]
        try:
            C = class_from_matrix(rows, F)
        except ZeroClass:
            continue
        stats["classes"] += 1
        cert = p_closed_certificate(C)
        if cert is None:
            stats["not_p_closed"] += 1
            continue
        stats["p_closed"] += 1
        if cert.beta:
            stats["beta_nonzero"] += 1
            if all(F.pow(c, p) != F.add(F.mul(cert.alpha.code, c), cert.beta.code) for c in range(p)):
                stats["artin_schreier_needs_extension"] += 1
        verdict = diagonalize(C)
        stats[verdict.kind.value] += 1
        if verdict.kind is Verdict.DIAGONALIZABLE and verdict.form.field.m > 1:
            stats["diagonal_form_outside_F_p"] += 1
    return stats


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--n", type=int, nargs="+", default=[1])
    args = parser.parse_args()
    for p in args.p:
        for n in args.n:
            if p ** ((n + 1) ** 2 - 1) > 2 * 10**6:
                print(f"p={p} n={n}: skipped (too many matrices)")
                continue
            stats = survey(p, n)
            print(f"p={p} n={n}: " + ", ".join(f"{k}={v}" for k, v in sorted(stats.items())))


if __name__ == "__main__":
    main()
