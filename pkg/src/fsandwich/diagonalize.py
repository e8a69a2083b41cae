"""Nilpotent / diagonalizable classification of p-closed vector field classes.

For a p-closed class with A^p = alpha A + beta I, an Artin-Schreier root c of
c^p - alpha c = beta turns A' = A - cI into a representative with
A'^p = alpha A'. If alpha = 0 the class is nilpotent. Otherwise t^p - alpha t
is separable, so A' is diagonalizable; a Kummer root lam with
lam^{p-1} = alpha puts every eigenvalue in lam * F_p, and the weights are the
eigenvalues divided by lam.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

from . import linalg
from .errors import InternalInconsistency, ZeroClass
from .field import FIELD_BOUND, Field, FieldElement, embed, find_root
from .vector_field import (LinearVectorField, PClosedCertificate, VectorFieldClass,
                           class_from_matrix, p_closed_certificate)


class Verdict(str, enum.Enum):
    ZERO_CLASS = "ZeroClass"
    NOT_P_CLOSED = "NotPClosed"
    NILPOTENT = "NilpotentClass"
    DIAGONALIZABLE = "Diagonalizable"


def minimal_polynomial(A: LinearVectorField) -> tuple[FieldElement, ...]:
    """Monic minimal polynomial of the matrix, coefficients low to high."""
    F = A.field
    size = A.n + 1
    powers = [linalg.identity(F, size)]
    while True:
        k = len(powers)
        nxt = linalg.matmul(F, powers[-1], A.matrix)
        # columns: vec(I), vec(A), ..., vec(A^{k-1}); target vec(A^k)
        rows = [[P[i][j] for P in powers] for i in range(size) for j in range(size)]
        rhs = [F.neg(nxt[i][j]) for i in range(size) for j in range(size)]
        x = linalg.solve(F, rows, rhs)
        if x is not None:
            return tuple(FieldElement(F, c) for c in x) + (F.one,)
        powers.append(nxt)
        if k > size:  # pragma: no cover - Cayley-Hamilton
            raise InternalInconsistency("minimal polynomial degree exceeds matrix size")


@dataclass(frozen=True)
class ShiftResult:
    matrix: LinearVectorField
    alpha: FieldElement
    shift: FieldElement
    field: Field


def shift_to_alpha_form(C: VectorFieldClass, cert: PClosedCertificate,
                        bound: int = FIELD_BOUND) -> ShiftResult:
    """Solve c^p - alpha c = beta and return A - cI, which satisfies (A - cI)^p = alpha (A - cI)."""
    F = C.field
    p = F.p
    if not cert.beta:
        c, big = F.zero, F
    else:
        poly = [-cert.beta, -cert.alpha] + [F.zero] * (p - 2) + [F.one]
        c, big = find_root(poly, F, bound)
    A = C.canonical.lift(big)
    alpha = embed(cert.alpha, big)
    shifted = A - LinearVectorField.euler(big, A.n).scale(c)
    lhs = linalg.matpow(big, shifted.matrix, p)
    rhs = linalg.matscale(big, shifted.matrix, alpha.code)
    if lhs != rhs:
        raise InternalInconsistency("Artin-Schreier shift failed to remove the Euler term")
    return ShiftResult(shifted, alpha, c, big)


@dataclass(frozen=True)
class DiagonalForm:
    """P^{-1} (A - shift I) P = scale * diag(weights), exactly, over ``field``.

    ``A`` is the matrix the form was computed from (the input matrix once
    :func:`diagonalize` has folded in the canonical offset).
    """

    weights: tuple[int, ...]
    basis_change: tuple[tuple[int, ...], ...]
    shift: FieldElement
    scale: FieldElement
    field: Field

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    def reconstruct(self) -> LinearVectorField:
        """P (scale diag(weights)) P^{-1} + shift I."""
        F = self.field
        size = len(self.weights)
        P = [list(r) for r in self.basis_change]
        Pinv = linalg.inverse(F, P)
        diag = [[F.mul(self.scale.code, F.from_int(self.weights[i])) if i == j else 0
                 for j in range(size)] for i in range(size)]
        M = linalg.matmul(F, linalg.matmul(F, P, diag), Pinv)
        M = linalg.matadd(F, M, linalg.matscale(F, linalg.identity(F, size), self.shift.code))
        return LinearVectorField(F, tuple(map(tuple, M)))

    def normalized_field(self) -> LinearVectorField:
        """P diag(weights) P^{-1}: the representative scale^{-1} (A - shift I)."""
        F = self.field
        size = len(self.weights)
        P = [list(r) for r in self.basis_change]
        diag = [[F.from_int(self.weights[i]) if i == j else 0 for j in range(size)] for i in range(size)]
        M = linalg.matmul(F, linalg.matmul(F, P, diag), linalg.inverse(F, P))
        return LinearVectorField(F, tuple(map(tuple, M)))

    def to_json(self) -> dict:
        F = self.field
        return {
            "weights": list(self.weights),
            "shift": self.shift.to_json(),
            "scale": self.scale.to_json(),
            "basis_change": [[FieldElement(F, c).to_json() for c in r] for r in self.basis_change],
            "field": F.to_json(),
        }


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: Verdict
    form: Optional[DiagonalForm] = None
    certificate: Optional[PClosedCertificate] = None
    artin_schreier_root: Optional[FieldElement] = None

    @property
    def is_diagonalizable(self) -> bool:
        return self.kind is Verdict.DIAGONALIZABLE


def eigen_decompose(A: LinearVectorField, alpha: FieldElement, bound: int = FIELD_BOUND) -> DiagonalForm:
    """Diagonalize A with A^p = alpha A, alpha != 0.

    Weights come out nondecreasing; inside one eigenspace the eigenvectors are
    the reduced echelon basis vectors in ascending lexicographic order.
    """
    F = A.field
    p = F.p
    if not alpha:
        raise ValueError("eigen_decompose needs a nonzero alpha")
    lam, big = find_root([-alpha] + [F.zero] * (p - 2) + [F.one], F, bound)
    M = A.lift(big)
    size = M.n + 1
    weights: list[int] = []
    vectors: list[list[int]] = []
    for j in range(p):
        mu = big.mul(lam.code, big.from_int(j))
        shifted = linalg.matsub(big, M.matrix, linalg.matscale(big, linalg.identity(big, size), mu))
        space = linalg.kernel(big, shifted, size)
        for v in sorted(space):
            weights.append(j)
            vectors.append(v)
    if len(vectors) != size:
        raise InternalInconsistency(
            f"eigenspaces have total dimension {len(vectors)}, expected {size}")
    P = linalg.transpose(vectors)
    form = DiagonalForm(tuple(weights), tuple(map(tuple, P)), big.zero, lam, big)
    if form.reconstruct().matrix != M.matrix:
        raise InternalInconsistency("eigenbasis does not diagonalize the matrix")
    return form


def classify(A: LinearVectorField, alpha: FieldElement, bound: int = FIELD_BOUND) -> ClassificationVerdict:
    """Nilpotent if alpha = 0, otherwise diagonalizable (A^p = alpha A is assumed)."""
    if not alpha:
        return ClassificationVerdict(Verdict.NILPOTENT)
    return ClassificationVerdict(Verdict.DIAGONALIZABLE, form=eigen_decompose(A, alpha, bound))


def diagonalize(C, field: Optional[Field] = None, bound: int = FIELD_BOUND) -> ClassificationVerdict:
    """Full classification of a class (or raw matrix / vector field).

    For diagonalizable classes the returned form's shift is relative to the
    original input matrix, so ``form.reconstruct()`` reproduces it.
    """
    if not isinstance(C, VectorFieldClass):
        try:
            C = class_from_matrix(C, field)
        except ZeroClass:
            return ClassificationVerdict(Verdict.ZERO_CLASS)
    cert = p_closed_certificate(C)
    if cert is None:
        return ClassificationVerdict(Verdict.NOT_P_CLOSED)
    shifted = shift_to_alpha_form(C, cert, bound)
    verdict = classify(shifted.matrix, shifted.alpha, bound)
    verdict = replace(verdict, certificate=cert, artin_schreier_root=shifted.shift)
    if verdict.form is not None:
        big = verdict.form.field
        total = embed(shifted.shift, big) + embed(C.offset, big)
        verdict = replace(verdict, form=replace(verdict.form, shift=total))
    return verdict
