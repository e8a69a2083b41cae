"""classify -> diagonalize -> toric construction -> verification, producing JSON-ready reports.

Non-toric verdicts are ordinary results, not errors. Exit codes:
0 classified, 2 parse error, 3 verification failure (or a verify request on a
non-toric input), 4 bound exceeded.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from .diagonalize import ClassificationVerdict, diagonalize
from .errors import BoundExceeded, NonPrimeCharacteristic, ParseError
from .field import FIELD_BOUND, Field, make_field
from .invariants import chart_invariants, congruence_count, graded_kernel, localization_consistency
from .toric import (FanData, Lattice, build_fan, canonical_weights, dual_overlattice, in_congruence,
                    normalize_weights, overlattice)
from .vector_field import LinearVectorField, class_from_matrix

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_BOUND = 4

TORIC = "Toric"


@dataclass(frozen=True)
class VectorFieldInput:
    p: int
    m: int
    n: int
    field: Field
    vector_field: LinearVectorField

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "n": self.n, "matrix": self.vector_field.to_json()}


def _entry(x, m: int, where: str):
    if isinstance(x, bool):
        raise ParseError(f"{where}: booleans are not field elements")
    if isinstance(x, int):
        return x
    if isinstance(x, list) and len(x) == m and all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        return x
    raise ParseError(f"{where}: expected an integer or a list of {m} integers, got {x!r}")


def parse_input(data: Any) -> VectorFieldInput:
    """Validate a {p, m, n, matrix} document."""
    if not isinstance(data, dict):
        raise ParseError("input must be a JSON object")
    try:
        p, n = data["p"], data["n"]
        matrix = data["matrix"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    m = data.get("m", 1)
    for name, val in (("p", p), ("m", m), ("n", n)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise ParseError(f"{name} must be an integer")
    if n < 1 or m < 1:
        raise ParseError("need n >= 1 and m >= 1")
    try:
        field = make_field(p, m)
    except NonPrimeCharacteristic as exc:
        raise ParseError(str(exc)) from None
    size = n + 1
    if not isinstance(matrix, list) or len(matrix) != size or any(
            not isinstance(r, list) or len(r) != size for r in matrix):
        raise ParseError(f"matrix must be {size} x {size}")
    rows = [[_entry(x, m, f"matrix[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(matrix)]
    return VectorFieldInput(p, m, n, field, LinearVectorField.from_entries(field, rows))


def load_input(source: Union[str, Path, dict, VectorFieldInput]) -> VectorFieldInput:
    if isinstance(source, VectorFieldInput):
        return source
    if isinstance(source, dict):
        return parse_input(source)
    try:
        data = json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {source}: {exc}") from None
    return parse_input(data)


def diagonal_input(p: int, weights) -> VectorFieldInput:
    F = make_field(p)
    return VectorFieldInput(p, 1, len(weights) - 1, F, LinearVectorField.diagonal(F, weights))


# -- classify --------------------------------------------------------------------

def toric_checks(inp: VectorFieldInput, verdict: ClassificationVerdict, fan: FanData) -> dict:
    """Cheap certificates attached to every Toric verdict."""
    form = verdict.form
    p = inp.p
    round_trip = form.reconstruct().matrix == inp.vector_field.lift(form.field).matrix
    M_prime = fan.M_prime
    lattice_ok = (abs(M_prime.determinant()) == p
                  and abs(fan.N_prime.determinant()) * p == 1
                  and fan.N_prime.dual().same_as(M_prime))
    charts_ok = all(
        chart_invariants(form.weights, c.index, p).generators == c.hilbert_basis for c in fan.charts)
    return {"round_trip": round_trip, "lattice_index": lattice_ok, "chart_semigroups": charts_ok}


def classify_input(inp: VectorFieldInput, bound: int = FIELD_BOUND):
    """(verdict, fan or None) for a parsed input."""
    verdict = diagonalize(inp.vector_field, bound=bound)
    fan = build_fan(verdict.form) if verdict.is_diagonalizable else None
    return verdict, fan


def run_classify(source, stable: bool = False, bound: int = FIELD_BOUND) -> tuple[dict, int]:
    start = time.perf_counter()
    inp = load_input(source)
    verdict, fan = classify_input(inp, bound)
    report: dict = {"input": inp.to_json(), "field": inp.field.to_json()}
    name = TORIC if verdict.is_diagonalizable else verdict.kind.value
    report["verdict"] = name
    cert = verdict.certificate
    report["certificates"] = None if cert is None else {
        "alpha": cert.alpha.to_json(),
        "beta": cert.beta.to_json(),
        "shift": verdict.artin_schreier_root.to_json(),
        "lambda": verdict.form.scale.to_json() if verdict.form else None,
    }
    report["diagonal_form"] = verdict.form.to_json() if verdict.form else None
    report["fan"] = fan.to_json() if fan else None
    code = EXIT_OK
    if fan is not None:
        checks = toric_checks(inp, verdict, fan)
        report["checks"] = checks
        if not all(checks.values()):
            code = EXIT_VERIFY
    else:
        report["checks"] = None
    if not stable:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


# -- verify ------------------------------------------------------------------------

def run_verify(source, d_max: int, bound: Optional[int] = None, stable: bool = False,
               localization: bool = True) -> tuple[dict, int]:
    """Oracle comparisons for a Toric input.

    Hilbert entries are kernel dimensions of the normalized representative
    scale^{-1} (A - shift I) = P diag(a) P^{-1}, over the working field.
    """
    start = time.perf_counter()
    inp = load_input(source)
    verdict, fan = classify_input(inp)
    report: dict = {"input": inp.to_json()}
    if fan is None:
        report["verdict"] = verdict.kind.value
        report["passed"] = False
        report["error"] = f"verify requires a Toric verdict, got {verdict.kind.value}"
        return report, EXIT_VERIFY
    form = verdict.form
    p = inp.p
    report["verdict"] = TORIC
    report["weights"] = list(form.weights)
    report["d_max"] = d_max
    report["bound"] = 2 * p if bound is None else bound

    D = form.normalized_field()
    hilbert = []
    for d in range(d_max + 1):
        dim = graded_kernel(D, d).dimension
        expected = congruence_count(form.weights, d, p)
        hilbert.append({"degree": d, "kernel_dim": dim, "congruence_count": expected, "ok": dim == expected})
    report["hilbert"] = hilbert
    report["hilbert_entries"] = [h["kernel_dim"] for h in hilbert]

    charts = []
    rebuilt = build_fan(form, bound=bound)
    for c in rebuilt.charts:
        gens = chart_invariants(form.weights, c.index, p, bound).generators
        charts.append({"index": c.index, "hilbert_basis": [list(g) for g in c.hilbert_basis],
                       "chart_invariants": [list(g) for g in gens], "ok": gens == c.hilbert_basis})
    report["charts"] = charts

    loc = []
    if localization:
        C = class_from_matrix(inp.vector_field)
        for i in range(inp.n + 1):
            loc.append(localization_consistency(C, form, i, d_max).to_json())
    report["localization"] = loc

    passed = (all(h["ok"] for h in hilbert) and all(c["ok"] for c in charts)
              and all(r["passed"] for r in loc))
    report["passed"] = passed
    if not stable:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, EXIT_OK if passed else EXIT_VERIFY


# -- census ------------------------------------------------------------------------

def census_classes(p: int, n: int) -> dict[tuple[int, ...], int]:
    """Canonical representative -> number of weight vectors in its orbit."""
    counts: dict[tuple[int, ...], int] = {}
    for a in itertools.product(range(p), repeat=n + 1):
        rep = canonical_weights(a, p)
        counts[rep] = counts.get(rep, 0) + 1
    return dict(sorted(counts.items()))


def lattice_report(p: int, weights) -> dict:
    """Index, congruence and box-membership checks for the M' of one weight class."""
    wv = normalize_weights(weights, p)
    rows, congruence = dual_overlattice(p, wv.tail)
    M_prime = Lattice(rows)
    n = wv.n
    det_ok = abs(M_prime.determinant()) == p
    rows_ok = all(in_congruence(r, congruence, p) for r in rows)
    box_ok = True
    for s in itertools.product(range(-2 * p, 2 * p + 1), repeat=n):
        if M_prime.contains(s) != in_congruence(s, congruence, p):
            box_ok = False
            break
    N_prime = overlattice(p, wv.tail)
    return {"det": abs(int(M_prime.determinant())), "det_ok": det_ok, "rows_satisfy_congruence": rows_ok,
            "box_membership": box_ok, "dual_of_N_prime": N_prime.dual().same_as(M_prime)}


def run_census(p: int, n: int, d_max: int, bound: Optional[int] = None, stable: bool = False,
               localization: bool = True) -> tuple[dict, int]:
    start = time.perf_counter()
    if (p ** (n + 1)) > 10**6:
        raise BoundExceeded(f"census over {p}^{n + 1} weight vectors is too large")
    classes = census_classes(p, n)
    rows = []
    code = EXIT_OK
    for weights, size in classes.items():
        row: dict = {"weights": list(weights), "orbit_size": size}
        inp = diagonal_input(p, weights)
        classified, ccode = run_classify(inp, stable=True)
        row["verdict"] = classified["verdict"]
        if classified["verdict"] == TORIC:
            verified, vcode = run_verify(inp, d_max, bound, stable=True, localization=localization)
            row["hilbert"] = verified["hilbert_entries"]
            row["verify_passed"] = verified["passed"]
            row["lattice"] = lattice_report(p, weights)
            if vcode or ccode or not all(v for k, v in row["lattice"].items() if k != "det"):
                code = EXIT_VERIFY
        else:
            row["hilbert"] = None
            row["verify_passed"] = None
        rows.append(row)
    report = {"p": p, "n": n, "d_max": d_max, "weight_vectors": p ** (n + 1), "classes": rows}
    if not stable:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
