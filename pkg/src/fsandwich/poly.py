"""Homogeneous polynomials in k[X_0, ..., X_n] and their chart dehomogenizations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence, Union

from .errors import BoundExceeded
from .field import Field, FieldElement, embed

DEGREE_CAP = 24

Monomial = tuple[int, ...]
Coefficient = Union[int, FieldElement]


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[Monomial, ...]:
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        out.extend((first,) + rest for rest in _compositions(total - first, parts - 1))
    return tuple(out)


def monomial_basis(n: int, d: int, cap: int = DEGREE_CAP) -> tuple[Monomial, ...]:
    """Exponent vectors of the degree-d monomials in n+1 variables, ascending lex order."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if d > cap:
        raise BoundExceeded(f"degree {d} exceeds cap {cap}")
    return _compositions(d, n + 1)


def basis_size(n: int, d: int) -> int:
    return comb(n + d, n)


def _code(field: Field, c: Coefficient) -> int:
    if isinstance(c, FieldElement):
        return embed(c, field).code
    return field.from_int(c)


def _merge(field: Field, items) -> dict:
    acc: dict = {}
    for mono, c in items:
        if c:
            acc[mono] = field.add(acc.get(mono, 0), c)
    return {k: v for k, v in acc.items() if v}


@dataclass(frozen=True)
class HomogeneousPoly:
    """A form of fixed degree. ``terms`` is sorted by monomial, zero coefficients dropped."""

    field: Field
    nvars: int
    degree: int
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_dict(cls, field: Field, nvars: int, degree: int,
                  coeffs: Mapping[Sequence[int], Coefficient]) -> "HomogeneousPoly":
        items = []
        for mono, c in coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or sum(mono) != degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} is not of degree {degree} in {nvars} variables")
            items.append((mono, _code(field, c)))
        return cls._from_codes(field, nvars, degree, _merge(field, items))

    @classmethod
    def _from_codes(cls, field, nvars, degree, coeffs: Mapping[Monomial, int]) -> "HomogeneousPoly":
        return cls(field, nvars, degree, tuple(sorted((m, c) for m, c in coeffs.items() if c)))

    @classmethod
    def zero(cls, field: Field, nvars: int, degree: int = 0) -> "HomogeneousPoly":
        return cls(field, nvars, degree, ())

    @classmethod
    def constant(cls, field: Field, nvars: int, c: Coefficient = 1) -> "HomogeneousPoly":
        return cls.from_dict(field, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: Field, nvars: int, j: int) -> "HomogeneousPoly":
        mono = tuple(1 if k == j else 0 for k in range(nvars))
        return cls(field, nvars, 1, ((mono, field.one_code),))

    @classmethod
    def monomial(cls, field: Field, exponents: Sequence[int], c: Coefficient = 1) -> "HomogeneousPoly":
        return cls.from_dict(field, len(exponents), sum(exponents), {tuple(exponents): c})

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, mono: Sequence[int]) -> FieldElement:
        return FieldElement(self.field, self.as_dict().get(tuple(mono), 0))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "HomogeneousPoly") -> None:
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("sum of forms of different degrees is not homogeneous")
        degree = self.degree if self.terms else other.degree
        return self._from_codes(self.field, self.nvars, degree,
                                _merge(self.field, self.terms + other.terms))

    def __neg__(self) -> "HomogeneousPoly":
        F = self.field
        return HomogeneousPoly(F, self.nvars, self.degree, tuple((m, F.neg(c)) for m, c in self.terms))

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + (-other)

    def scale(self, c: Coefficient) -> "HomogeneousPoly":
        F = self.field
        k = _code(F, c)
        return self._from_codes(F, self.nvars, self.degree, {m: F.mul(k, v) for m, v in self.terms})

    def __mul__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"exponents": list(m), "coefficient": FieldElement(F, c).to_json()}
                for m, c in self.terms]

    @classmethod
    def from_json(cls, field: Field, nvars: int, degree: int, data) -> "HomogeneousPoly":
        coeffs = {}
        for rec in data:
            c = rec["coefficient"]
            coeffs[tuple(rec["exponents"])] = c if isinstance(c, int) else field(c)
        return cls.from_dict(field, nvars, degree, coeffs)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for m, c in self.terms:
            mono = "*".join(f"X{i}^{e}" if e > 1 else f"X{i}" for i, e in enumerate(m) if e)
            coef = FieldElement(F, c).to_json()
            parts.append(f"{coef}*{mono}" if mono else f"{coef}")
        return " + ".join(parts)


def multiply(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    f._check(g)
    F = f.field
    items = []
    for m1, c1 in f.terms:
        for m2, c2 in g.terms:
            items.append((tuple(a + b for a, b in zip(m1, m2)), F.mul(c1, c2)))
    return HomogeneousPoly._from_codes(F, f.nvars, f.degree + g.degree, _merge(F, items))


@dataclass(frozen=True)
class ChartPoly:
    """Polynomial in the affine coordinates x_t = X_t / X_i, t != i.

    Exponent vectors have length n and list the variables t != i in
    increasing order.
    """

    field: Field
    chart: int
    nvars: int  # n + 1, the number of homogeneous variables
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_dict(cls, field: Field, chart: int, nvars: int,
                  coeffs: Mapping[Sequence[int], Coefficient]) -> "ChartPoly":
        items = []
        for mono, c in coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars - 1:
                raise ValueError(f"chart monomial {mono} should have {nvars - 1} entries")
            items.append((mono, _code(field, c)))
        return cls._from_codes(field, chart, nvars, _merge(field, items))

    @classmethod
    def _from_codes(cls, field, chart, nvars, coeffs) -> "ChartPoly":
        return cls(field, chart, nvars, tuple(sorted((m, c) for m, c in coeffs.items() if c)))

    @classmethod
    def zero(cls, field: Field, chart: int, nvars: int) -> "ChartPoly":
        return cls(field, chart, nvars, ())

    @classmethod
    def coordinate(cls, field: Field, chart: int, nvars: int, t: int) -> "ChartPoly":
        """x_t on chart ``chart``; x_chart is the constant 1."""
        mono = [0] * (nvars - 1)
        if t != chart:
            mono[position(chart, t)] = 1
        return cls(field, chart, nvars, ((tuple(mono), field.one_code),))

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(t for t in range(self.nvars) if t != self.chart)

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=0)

    def _check(self, other: "ChartPoly") -> None:
        if (other.field, other.chart, other.nvars) != (self.field, self.chart, self.nvars):
            raise ValueError("chart polynomials live in different rings")

    def __add__(self, other: "ChartPoly") -> "ChartPoly":
        self._check(other)
        return self._from_codes(self.field, self.chart, self.nvars,
                                _merge(self.field, self.terms + other.terms))

    def __neg__(self) -> "ChartPoly":
        F = self.field
        return ChartPoly(F, self.chart, self.nvars, tuple((m, F.neg(c)) for m, c in self.terms))

    def __sub__(self, other: "ChartPoly") -> "ChartPoly":
        return self + (-other)

    def scale(self, c: Coefficient) -> "ChartPoly":
        F = self.field
        k = _code(F, c)
        return self._from_codes(F, self.chart, self.nvars, {m: F.mul(k, v) for m, v in self.terms})

    def __mul__(self, other):
        if not isinstance(other, ChartPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        items = [(tuple(a + b for a, b in zip(m1, m2)), F.mul(c1, c2))
                 for m1, c1 in self.terms for m2, c2 in other.terms]
        return self._from_codes(F, self.chart, self.nvars, _merge(F, items))

    def __rmul__(self, other):
        return self.scale(other)

    def derivative(self, t: int) -> "ChartPoly":
        """Partial derivative with respect to x_t (t != chart)."""
        k = position(self.chart, t)
        F = self.field
        items = []
        for m, c in self.terms:
            if m[k]:
                new = list(m)
                new[k] -= 1
                items.append((tuple(new), F.mul(F.from_int(m[k]), c)))
        return self._from_codes(F, self.chart, self.nvars, _merge(F, items))

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"exponents": list(m), "coefficient": FieldElement(F, c).to_json()}
                for m, c in self.terms]


def position(chart: int, t: int) -> int:
    """Index of x_t inside a chart exponent vector."""
    if t == chart:
        raise ValueError("x_i is not a coordinate on chart i")
    return t if t < chart else t - 1


def dehomogenize(F: HomogeneousPoly, i: int) -> ChartPoly:
    """F / X_i^{deg F} written in the coordinates of chart i."""
    if not 0 <= i < F.nvars:
        raise ValueError(f"chart index {i} out of range")
    items = [(m[:i] + m[i + 1:], c) for m, c in F.terms]
    return ChartPoly._from_codes(F.field, i, F.nvars, _merge(F.field, items))


def homogenize(g: ChartPoly, degree: int) -> HomogeneousPoly:
    """Inverse of :func:`dehomogenize` in a given degree >= the total degree of g."""
    i = g.chart
    items = {}
    for m, c in g.terms:
        s = degree - sum(m)
        if s < 0:
            raise ValueError(f"degree {degree} is below the total degree of the chart polynomial")
        items[m[:i] + (s,) + m[i:]] = c
    return HomogeneousPoly._from_codes(g.field, g.nvars, degree, items)
