"""Brute-force oracles for the invariant ring R^D.

Graded kernels come from exact elimination on monomial bases; the
congruence count and chart semigroups come from direct enumeration of
exponent vectors. The two routes never share code beyond the field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import linalg
from .diagonalize import DiagonalForm
from .errors import BoundExceeded, GenerationIncomplete
from .field import make_field
from .poly import DEGREE_CAP, HomogeneousPoly, dehomogenize, monomial_basis
from .vector_field import LinearVectorField, VectorFieldClass, apply, chart_restrict, class_from_matrix

ENUMERATION_LIMIT = 10**7


@dataclass(frozen=True)
class GradedKernel:
    degree: int
    dimension: int
    basis: tuple[HomogeneousPoly, ...]


@dataclass(frozen=True)
class HilbertFunctionTable:
    p: int
    n: int
    descriptor: str
    entries: tuple[int, ...]

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "descriptor": self.descriptor, "entries": list(self.entries)}


def _representative(D) -> LinearVectorField:
    if isinstance(D, VectorFieldClass):
        return D.canonical
    if isinstance(D, LinearVectorField):
        return D
    raise TypeError(f"expected a vector field or class, got {type(D).__name__}")


def graded_kernel(D: Union[VectorFieldClass, LinearVectorField], d: int,
                  cap: int = DEGREE_CAP) -> GradedKernel:
    """{f in R_d : D(f) = 0}, with a reduced-echelon basis in monomial order.

    The kernel depends on the representative, not only on the class; a
    :class:`VectorFieldClass` contributes its canonical representative.
    """
    V = _representative(D)
    F = V.field
    basis = monomial_basis(V.n, d, cap)
    index = {m: k for k, m in enumerate(basis)}
    N = len(basis)
    rows = [[0] * N for _ in range(N)]
    for col, mono in enumerate(basis):
        image = apply(V, HomogeneousPoly(F, V.n + 1, d, ((mono, F.one_code),)))
        for m, c in image.terms:
            rows[index[m]][col] = c
    vectors = linalg.kernel(F, rows, N)
    polys = []
    for v in vectors:
        f = HomogeneousPoly(F, V.n + 1, d, tuple((basis[k], c) for k, c in enumerate(v) if c))
        if not apply(V, f).is_zero():
            raise AssertionError("kernel element is not annihilated")  # pragma: no cover
        polys.append(f)
    return GradedKernel(d, len(polys), tuple(polys))


def hilbert_function(D, d_max: int, cap: int = DEGREE_CAP) -> HilbertFunctionTable:
    V = _representative(D)
    entries = tuple(graded_kernel(V, d, cap).dimension for d in range(d_max + 1))
    return HilbertFunctionTable(V.p, V.n, "matrix", entries)


def congruence_count(weights: Sequence[int], d: int, p: int, target: int = 0) -> int:
    """#{e : sum e_i = d, sum a_i e_i = target mod p}, by enumerating the box [0, d]^{n+1}."""
    size = len(weights)
    if (d + 1) ** size > ENUMERATION_LIMIT:
        raise BoundExceeded(f"enumeration box ({d}+1)^{size} too large")
    count = 0
    for e in itertools.product(range(d + 1), repeat=size):
        if sum(e) == d and (sum(a * x for a, x in zip(weights, e)) - target) % p == 0:
            count += 1
    return count


def congruence_table(weights: Sequence[int], d_max: int, p: int) -> HilbertFunctionTable:
    return HilbertFunctionTable(p, len(weights) - 1, "weights",
                                tuple(congruence_count(weights, d, p) for d in range(d_max + 1)))


@dataclass(frozen=True)
class ChartSemigroup:
    chart: int
    generators: tuple[tuple[int, ...], ...]
    bound: int
    window: int


def _weights_and_p(weights, p):
    if isinstance(weights, (LinearVectorField, VectorFieldClass)):
        raise TypeError("chart_invariants needs weights; diagonalize the matrix first")
    if isinstance(weights, DiagonalForm):
        return weights.weights, weights.p
    if p is None:
        raise ValueError("p is required with raw weights")
    return tuple(int(a) % p for a in weights), p


def chart_condition(weights: Sequence[int], i: int, p: int) -> tuple[int, ...]:
    """Coefficients (a_t - a_i) mod p, t != i, of the chart weight congruence."""
    return tuple((a - weights[i]) % p for t, a in enumerate(weights) if t != i)


def chart_invariants(weights, i: int, p: Optional[int] = None, bound: Optional[int] = None,
                     window: Optional[int] = None) -> ChartSemigroup:
    """Minimal generators of {u in N^n : sum_{t != i} (a_t - a_i) u_t = 0 mod p}.

    Generators are searched in [0, bound]^n (default 2p) and checked to
    generate every semigroup point of [0, window]^n (default 2 * bound).
    """
    weights, p = _weights_and_p(weights, p)
    if not 0 <= i < len(weights):
        raise ValueError(f"chart index {i} out of range")
    bound = 2 * p if bound is None else bound
    window = 2 * bound if window is None else window
    if bound < p:
        raise ValueError("bound must be at least p")
    w = chart_condition(weights, i, p)
    n = len(w)
    if (window + 1) ** n > ENUMERATION_LIMIT:
        raise BoundExceeded(f"verification window ({window}+1)^{n} too large")

    def member(u) -> bool:
        return sum(a * x for a, x in zip(w, u)) % p == 0

    points = [u for u in itertools.product(range(bound + 1), repeat=n) if any(u) and member(u)]
    point_set = set(points)
    gens = []
    for u in points:
        reducible = False
        for v in points:
            if v == u or any(a > b for a, b in zip(v, u)):
                continue
            rest = tuple(b - a for a, b in zip(v, u))
            if rest in point_set:
                reducible = True
                break
        if not reducible:
            gens.append(u)
    gens.sort()

    # every semigroup point of the window must be a sum of generators
    reachable = {(0,) * n}
    for u in sorted(itertools.product(range(window + 1), repeat=n), key=sum):
        if not any(u) or not member(u):
            continue
        if any(all(a <= b for a, b in zip(g, u)) and tuple(b - a for a, b in zip(g, u)) in reachable
               for g in gens):
            reachable.add(u)
        else:
            raise GenerationIncomplete(
                f"chart {i}: point {u} is not generated by generators found with bound {bound}")
    return ChartSemigroup(i, tuple(gens), bound, window)


@dataclass(frozen=True)
class LocalizationReport:
    chart: int
    d_max: int
    passed: bool
    kernel_elements_checked: int = 0
    chart_monomials_checked: int = 0
    counterexample: Optional[str] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "d_max": self.d_max,
            "passed": self.passed,
            "kernel_elements_checked": self.kernel_elements_checked,
            "chart_monomials_checked": self.chart_monomials_checked,
            "counterexample": self.counterexample,
            "note": self.note,
        }


def localization_consistency(C: Optional[VectorFieldClass], form: Union[DiagonalForm, Sequence[int]],
                             i: int, d_max: int, p: Optional[int] = None) -> LocalizationReport:
    """Compare the graded kernel of the diagonal field with the chart-i invariants.

    Only quotients F / X_i^d with X_i^d invariant (d a_i = 0 mod p) belong to
    the degree-zero localization, so:

    Forward: for every such d <= d_max, each kernel element of degree d
    dehomogenizes to a chart polynomial killed by the restricted field and
    supported on monomials satisfying the chart congruence.
    Backward: every chart monomial x^u with |u| <= d_max satisfying the
    congruence equals F / X_i^d for a kernel element F of some degree d with
    |u| <= d < |u| + p. X_i^p is always invariant, so p consecutive degrees
    always contain an admissible one.
    """
    weights, p = _weights_and_p(form, p)
    if len(set(weights)) == 1:
        return LocalizationReport(i, d_max, True, note="ZeroClass: constant weights, skipped")
    if C is not None and isinstance(form, DiagonalForm):
        if C.original.lift(form.field).matrix != form.reconstruct().matrix:
            raise ValueError("diagonal form does not belong to the given class")
    F = make_field(p)
    D = LinearVectorField.diagonal(F, weights)
    cls = class_from_matrix(D)
    chart_field = chart_restrict(cls, i)
    w = chart_condition(weights, i, p)
    n = len(weights) - 1

    kernels: dict[int, GradedKernel] = {}

    def kernel_at(d: int) -> GradedKernel:
        if d not in kernels:
            kernels[d] = graded_kernel(D, d)
        return kernels[d]

    checked = 0
    for d in range(d_max + 1):
        if d * weights[i] % p:
            continue
        for f in kernel_at(d).basis:
            g = dehomogenize(f, i)
            if not chart_field.apply(g).is_zero():
                return LocalizationReport(i, d_max, False, checked,
                                          counterexample=f"degree {d}: {f!r} not killed on chart {i}")
            for u, _ in g.terms:
                if sum(a * x for a, x in zip(w, u)) % p:
                    return LocalizationReport(i, d_max, False, checked,
                                              counterexample=f"degree {d}: monomial {u} violates chart congruence")
            checked += 1

    echelon: dict[int, tuple[list[list[int]], list[int]]] = {}

    def in_kernel(mono, d) -> bool:
        if d not in echelon:
            rows = [[0] * len(monomial_basis(n, d)) for _ in kernel_at(d).basis]
            idx = {m: k for k, m in enumerate(monomial_basis(n, d))}
            for r, f in zip(rows, kernel_at(d).basis):
                for m, c in f.terms:
                    r[idx[m]] = c
            echelon[d] = (rows, idx)
        rows, idx = echelon[d]
        target = [0] * len(idx)
        target[idx[mono]] = F.one_code
        return linalg.in_span(F, rows, target)

    monos = 0
    for total in range(d_max + 1):
        for u in itertools.product(range(total + 1), repeat=n):
            if sum(u) != total or sum(a * x for a, x in zip(w, u)) % p:
                continue
            found = False
            for d in range(total, total + p):
                homog = u[:i] + (d - total,) + u[i:]
                if in_kernel(homog, d):
                    found = True
                    break
            if not found:
                return LocalizationReport(i, d_max, False, checked, monos,
                                          counterexample=f"chart monomial {u} has no invariant lift")
            monos += 1
    return LocalizationReport(i, d_max, True, checked, monos)
