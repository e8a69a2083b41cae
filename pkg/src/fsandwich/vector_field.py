"""Linear derivations of k[X_0, ..., X_n], classes modulo the Euler field, and chart restriction.

A :class:`LinearVectorField` is stored as an (n+1) x (n+1) matrix A of
field-element codes with

    D(X_j) = sum_i A[i][j] X_i,

i.e. D = sum_{i,j} A[i][j] X_i d/dX_j. Composition of derivations is matrix
multiplication, the Euler field is the identity, and since D^p is again a
derivation in characteristic p it is the field with matrix A^p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import linalg
from .errors import ZeroClass
from .field import Field, FieldElement, embed
from .poly import ChartPoly, HomogeneousPoly

MatrixLike = Sequence[Sequence[Union[int, FieldElement, Sequence[int]]]]


def _entry_code(field: Field, x) -> int:
    if isinstance(x, FieldElement):
        return embed(x, field).code
    if isinstance(x, int):
        return field.from_int(x)
    return field.encode(x)


@dataclass(frozen=True)
class LinearVectorField:
    field: Field
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.matrix)
        if size < 2 or any(len(r) != size for r in self.matrix):
            raise ValueError("vector field matrix must be square of size n+1 >= 2")

    @classmethod
    def from_entries(cls, field: Field, rows: MatrixLike) -> "LinearVectorField":
        """Entries may be ints (prime-field residues), coordinate lists or FieldElements."""
        return cls(field, tuple(tuple(_entry_code(field, x) for x in r) for r in rows))

    @classmethod
    def euler(cls, field: Field, n: int) -> "LinearVectorField":
        return cls(field, tuple(map(tuple, linalg.identity(field, n + 1))))

    @classmethod
    def diagonal(cls, field: Field, weights: Sequence[int]) -> "LinearVectorField":
        """sum_i a_i X_i d/dX_i."""
        size = len(weights)
        return cls(field, tuple(
            tuple(field.from_int(weights[i]) if i == j else 0 for j in range(size))
            for i in range(size)))

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    @property
    def p(self) -> int:
        return self.field.p

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.matrix[i][j])

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def lift(self, target: Field) -> "LinearVectorField":
        if target == self.field:
            return self
        return LinearVectorField(target, tuple(
            tuple(embed(FieldElement(self.field, c), target).code for c in r) for r in self.matrix))

    def image_of_variable(self, j: int) -> HomogeneousPoly:
        """D(X_j) as a linear form."""
        nv = self.n + 1
        coeffs = {tuple(1 if k == i else 0 for k in range(nv)): FieldElement(self.field, self.matrix[i][j])
                  for i in range(nv)}
        return HomogeneousPoly.from_dict(self.field, nv, 1, coeffs)

    def __call__(self, f: HomogeneousPoly) -> HomogeneousPoly:
        return apply(self, f)

    def __add__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(self.field, _freeze(linalg.matadd(self.field, self.matrix, other.matrix)))

    def __sub__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(self.field, _freeze(linalg.matsub(self.field, self.matrix, other.matrix)))

    def scale(self, c: Union[int, FieldElement]) -> "LinearVectorField":
        k = _entry_code(self.field, c)
        return LinearVectorField(self.field, _freeze(linalg.matscale(self.field, self.matrix, k)))

    def to_json(self) -> list[list]:
        return [[FieldElement(self.field, c).to_json() for c in r] for r in self.matrix]


def _freeze(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


def apply(D: LinearVectorField, f: HomogeneousPoly) -> HomogeneousPoly:
    """D(f) by the Leibniz rule; the result has the same degree as f."""
    F = D.field
    if f.field != F:
        raise ValueError("vector field and polynomial live over different fields")
    if f.nvars != D.n + 1:
        raise ValueError("variable count mismatch")
    A = D.matrix
    nv = f.nvars
    out: dict = {}
    for e, c in f.terms:
        for j in range(nv):
            ej = e[j] % F.p
            if not ej:
                continue
            cj = F.mul(c, F.from_int(ej))
            for i in range(nv):
                a = A[i][j]
                if not a:
                    continue
                mono = list(e)
                mono[j] -= 1
                mono[i] += 1
                mono = tuple(mono)
                out[mono] = F.add(out.get(mono, 0), F.mul(cj, a))
    return HomogeneousPoly._from_codes(F, nv, f.degree, out)


def p_power(D: LinearVectorField) -> LinearVectorField:
    """The derivation D^p, with matrix A^p."""
    return LinearVectorField(D.field, _freeze(linalg.matpow(D.field, D.matrix, D.p)))


@dataclass(frozen=True)
class VectorFieldClass:
    """Coset D + k D_E, pinned by the representative with A[0][0] = 0."""

    original: LinearVectorField
    canonical: LinearVectorField

    @property
    def field(self) -> Field:
        return self.original.field

    @property
    def n(self) -> int:
        return self.original.n

    @property
    def offset(self) -> FieldElement:
        """original = canonical + offset * Euler."""
        return self.original.entry(0, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorFieldClass):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)


def class_from_matrix(A: Union[LinearVectorField, MatrixLike], field: Optional[Field] = None) -> VectorFieldClass:
    if not isinstance(A, LinearVectorField):
        if field is None:
            raise ValueError("a field is required for raw matrices")
        A = LinearVectorField.from_entries(field, A)
    F = A.field
    c = A.matrix[0][0]
    canon = A - LinearVectorField.euler(F, A.n).scale(FieldElement(F, c))
    if all(x == 0 for r in canon.matrix for x in r):
        raise ZeroClass("the vector field is a multiple of the Euler field")
    return VectorFieldClass(A, canon)


@dataclass(frozen=True)
class PClosedCertificate:
    """A^p = alpha A + beta I for the canonical representative A."""

    alpha: FieldElement
    beta: FieldElement

    def check(self, C: VectorFieldClass) -> bool:
        F = C.field
        A = C.canonical.matrix
        Ap = linalg.matpow(F, A, F.p)
        rhs = linalg.matadd(F, linalg.matscale(F, A, self.alpha.code),
                            linalg.matscale(F, linalg.identity(F, len(A)), self.beta.code))
        return Ap == rhs

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}


def p_closed_certificate(C: VectorFieldClass) -> Optional[PClosedCertificate]:
    """(alpha, beta) with A^p = alpha A + beta I, or None if the class is not p-closed."""
    F = C.field
    A = C.canonical.matrix
    size = len(A)
    Ap = linalg.matpow(F, A, F.p)
    one = F.one_code
    rows = [[A[i][j], one if i == j else 0] for i in range(size) for j in range(size)]
    rhs = [Ap[i][j] for i in range(size) for j in range(size)]
    x = linalg.solve(F, rows, rhs)
    if x is None:
        return None
    cert = PClosedCertificate(FieldElement(F, x[0]), FieldElement(F, x[1]))
    assert cert.check(C)
    return cert


@dataclass(frozen=True)
class ChartVectorField:
    """sum_{t != chart} coefficient_t * d/dx_t on the affine chart U_chart."""

    chart: int
    coefficients: tuple[tuple[int, ChartPoly], ...]

    def coefficient(self, t: int) -> ChartPoly:
        return dict(self.coefficients)[t]

    def apply(self, g: ChartPoly) -> ChartPoly:
        out = ChartPoly.zero(g.field, g.chart, g.nvars)
        for t, coef in self.coefficients:
            out = out + coef * g.derivative(t)
        return out

    def __call__(self, g: ChartPoly) -> ChartPoly:
        return self.apply(g)

    def is_zero(self) -> bool:
        return all(c.is_zero() for _, c in self.coefficients)

    def to_json(self) -> dict:
        return {"chart": self.chart,
                "coefficients": {str(t): c.to_json() for t, c in self.coefficients}}


def chart_restrict(C: Union[VectorFieldClass, LinearVectorField], i: int) -> ChartVectorField:
    """Restriction of the global vector field to U_i = D_+(X_i).

    With x_t = X_t / X_i and d_t = d/dx_t:
      X_s D_j -> x_s d_j                      (j != i)
      X_s D_i -> -x_s sum_{t != i} x_t d_t    (s != i)
      X_i D_i -> -sum_{t != i} x_t d_t
    A :class:`VectorFieldClass` is restricted through its canonical
    representative; the Euler field restricts to zero, so any representative
    gives the same answer.
    """
    D = C.canonical if isinstance(C, VectorFieldClass) else C
    F = D.field
    nv = D.n + 1
    if not 0 <= i < nv:
        raise ValueError(f"chart index {i} out of range")
    x = [ChartPoly.coordinate(F, i, nv, s) for s in range(nv)]
    coeffs = {t: ChartPoly.zero(F, i, nv) for t in range(nv) if t != i}
    euler_part = ChartPoly.zero(F, i, nv)
    A = D.matrix
    for j in range(nv):
        for s in range(nv):
            a = A[s][j]
            if not a:
                continue
            if j != i:
                coeffs[j] = coeffs[j] + x[s].scale(FieldElement(F, a))
            else:
                euler_part = euler_part + x[s].scale(FieldElement(F, a))
    for t in coeffs:
        coeffs[t] = coeffs[t] - euler_part * x[t]
    return ChartVectorField(i, tuple(sorted(coeffs.items())))
