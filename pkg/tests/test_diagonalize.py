import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsandwich import linalg
from fsandwich.diagonalize import (Verdict, classify, diagonalize, eigen_decompose, minimal_polynomial,
                                   shift_to_alpha_form)
from fsandwich.field import FieldElement, embed, make_field
from fsandwich.toric import canonical_weights
from fsandwich.vector_field import LinearVectorField, class_from_matrix, p_closed_certificate

from strategies import conjugated_diagonal, random_invertible


def _field(p, rows, m=1):
    return LinearVectorField.from_entries(make_field(p, m), rows)


def _codes(poly):
    return [c.code for c in poly]


def test_minimal_polynomial_examples():
    F = make_field(3)
    assert _codes(minimal_polynomial(_field(3, [[0, 0], [0, 0]]))) == [0, 1]
    assert _codes(minimal_polynomial(LinearVectorField.euler(F, 2))) == [2, 1]  # t - 1
    # t^3 - t
    assert _codes(minimal_polynomial(LinearVectorField.diagonal(F, (0, 1, 2)))) == [0, 2, 0, 1]


def test_minimal_polynomial_annihilates():
    rng = random.Random(7)
    F = make_field(5)
    for _ in range(20):
        A = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
        mu = minimal_polynomial(LinearVectorField.from_entries(F, A))
        acc = linalg.zeros(3)
        power = linalg.identity(F, 3)
        for c in mu:
            acc = linalg.matadd(F, acc, linalg.matscale(F, power, c.code))
            power = linalg.matmul(F, power, A)
        assert acc == linalg.zeros(3)


def test_shift_beta_zero():
    C = class_from_matrix(LinearVectorField.diagonal(make_field(3), (0, 1, 2)))
    res = shift_to_alpha_form(C, p_closed_certificate(C))
    assert not res.shift and res.matrix == C.canonical


def test_shift_p2_swap():
    C = class_from_matrix(_field(2, [[0, 1], [1, 0]]))
    res = shift_to_alpha_form(C, p_closed_certificate(C))
    assert res.shift.code == 1 and res.matrix.matrix == ((1, 1), (1, 1)) and not res.alpha


def test_shift_p3_offset_diagonal():
    # diag(1,2,0) satisfies A^3 = A with no shift
    C = class_from_matrix(LinearVectorField.diagonal(make_field(3), (1, 2, 0)))
    cert = p_closed_certificate(C)
    assert (cert.alpha.code, cert.beta.code) == (1, 0)
    res = shift_to_alpha_form(C, cert)
    assert not res.shift
    F = res.field
    assert linalg.matpow(F, res.matrix.matrix, 3) == [list(r) for r in res.matrix.matrix]


def test_shift_needs_extension():
    # A^2 = A + I over F_2: c^2 + c + 1 = 0 has no root in F_2
    C = class_from_matrix(_field(2, [[0, 1], [1, 1]]))
    cert = p_closed_certificate(C)
    assert (cert.alpha.code, cert.beta.code) == (1, 1)
    res = shift_to_alpha_form(C, cert)
    assert res.field.order == 4
    Ap = linalg.matpow(res.field, res.matrix.matrix, 2)
    assert Ap == linalg.matscale(res.field, res.matrix.matrix, res.alpha.code)


def test_classify_examples():
    F2 = make_field(2)
    assert classify(_field(2, [[1, 1], [1, 1]]), F2.zero).kind is Verdict.NILPOTENT
    F3 = make_field(3)
    v = classify(LinearVectorField.diagonal(F3, (0, 1, 2)), F3.one)
    assert v.kind is Verdict.DIAGONALIZABLE
    assert classify(_field(3, [[0, 0], [0, 0]]), F3.zero).kind is Verdict.NILPOTENT


def test_eigen_decompose_examples():
    F3 = make_field(3)
    form = eigen_decompose(LinearVectorField.diagonal(F3, (0, 1, 2)), F3.one)
    assert form.weights == (0, 1, 2) and form.scale.code == 1
    assert form.basis_change == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    form = eigen_decompose(_field(3, [[0, 1], [1, 0]]), F3.one)
    assert form.weights == (1, 2)
    assert [tuple(c) for c in zip(*form.basis_change)] == [(1, 1), (1, 2)]
    F2 = make_field(2)
    form = eigen_decompose(LinearVectorField.diagonal(F2, (0, 1)), F2.one)
    assert form.weights == (0, 1) and form.basis_change == ((1, 0), (0, 1))


def test_eigen_decompose_kummer_extension():
    # [[0,1],[2,0]]^3 = 2 A over F_3, and t^2 = 2 needs F_9
    F3 = make_field(3)
    A = _field(3, [[0, 1], [2, 0]])
    assert linalg.matpow(F3, A.matrix, 3) == linalg.matscale(F3, A.matrix, 2)
    form = eigen_decompose(A, F3(2))
    assert form.field.order == 9
    assert sorted(form.weights) == [1, 2]
    assert form.reconstruct() == A.lift(form.field)


def test_eigen_decompose_rejects_zero_alpha():
    F = make_field(3)
    with pytest.raises(ValueError):
        eigen_decompose(LinearVectorField.diagonal(F, (0, 1)), F.zero)


def test_diagonalize_verdicts():
    assert diagonalize(_field(3, [[2, 0], [0, 2]])).kind is Verdict.ZERO_CLASS
    assert diagonalize(_field(2, [[0, 1], [1, 0]])).kind is Verdict.NILPOTENT
    assert diagonalize(_field(5, [[0, 1], [0, 0]])).kind is Verdict.NILPOTENT
    assert diagonalize(_field(2, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])).kind is Verdict.NOT_P_CLOSED
    v = diagonalize(_field(2, [[0, 1], [1, 1]]))
    assert v.is_diagonalizable and v.form.weights == (0, 1)


def test_diagonalize_over_extension_input():
    F9 = make_field(3, 2)
    A = LinearVectorField.from_entries(F9, [[[1, 0], [0, 1]], [0, [2, 2]]])
    v = diagonalize(A)
    assert v.is_diagonalizable
    assert v.form.reconstruct() == A.lift(v.form.field)


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from([2, 3, 5, 7]), n=st.integers(1, 3), seed=st.integers(0, 10**6))
def test_round_trip_random_conjugates(p, n, seed):
    rng = random.Random(seed)
    F = make_field(p)
    a = [rng.randrange(p) for _ in range(n + 1)]
    if len(set(a)) == 1:
        a[0] = (a[1] + 1) % p
    A = conjugated_diagonal(F, a, random_invertible(F, n + 1, rng))
    v = diagonalize(A)
    assert v.is_diagonalizable
    assert canonical_weights(v.form.weights, p) == canonical_weights(a, p)
    assert v.form.reconstruct() == A.lift(v.form.field)
    # P^{-1} (A - cI) P = lam diag(weights)
    big = v.form.field
    P = [list(r) for r in v.form.basis_change]
    shifted = linalg.matsub(big, A.lift(big).matrix,
                            linalg.matscale(big, linalg.identity(big, n + 1), v.form.shift.code))
    D = linalg.matmul(big, linalg.matmul(big, linalg.inverse(big, P), shifted), P)
    lam = v.form.scale.code
    assert D == [[big.mul(lam, big.from_int(w)) if i == j else 0 for j, w in enumerate(v.form.weights)]
                 for i in range(n + 1)]


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from([3, 5, 7]), n=st.integers(1, 2), seed=st.integers(0, 10**6))
def test_strictly_triangular_is_nilpotent(p, n, seed):
    rng = random.Random(seed)
    F = make_field(p)
    size = n + 1
    rows = [[rng.randrange(p) if j > i else 0 for j in range(size)] for i in range(size)]
    if not any(map(any, rows)):
        rows[0][size - 1] = 1
    assert diagonalize(LinearVectorField.from_entries(F, rows)).kind is Verdict.NILPOTENT


def test_weights_are_scale_and_shift_of_eigenvalues():
    F = make_field(5)
    # 2 diag(0,1,3) + 4 I has eigenvalues 4, 1, 0
    A = LinearVectorField.diagonal(F, (4, 1, 0))
    v = diagonalize(A)
    big = v.form.field
    eig = sorted(big.add(big.mul(v.form.scale.code, big.from_int(w)), v.form.shift.code)
                 for w in v.form.weights)
    assert eig == sorted(big.from_int(x) for x in (4, 1, 0))
    assert FieldElement(big, v.form.scale.code) ** 4 == embed(v.certificate.alpha, big)
