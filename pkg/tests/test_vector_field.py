import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsandwich import linalg
from fsandwich.errors import ZeroClass
from fsandwich.field import FieldElement, make_field
from fsandwich.poly import ChartPoly, HomogeneousPoly, dehomogenize
from fsandwich.vector_field import (LinearVectorField, apply, chart_restrict, class_from_matrix,
                                    p_closed_certificate, p_power)

from strategies import fields, forms, vector_fields


def _field(p, rows):
    return LinearVectorField.from_entries(make_field(p), rows)


def test_class_from_matrix_rejects_zero_class():
    F = make_field(3)
    with pytest.raises(ZeroClass):
        class_from_matrix(LinearVectorField.euler(F, 2))
    with pytest.raises(ZeroClass):
        class_from_matrix([[0, 0], [0, 0]], F)
    with pytest.raises(ZeroClass):
        class_from_matrix([[2, 0], [0, 2]], F)


def test_class_canonical_representative():
    D = LinearVectorField.diagonal(make_field(3), (0, 1, 2))
    assert class_from_matrix(D).canonical == D
    shifted = D + LinearVectorField.euler(D.field, 2)
    C = class_from_matrix(shifted)
    assert C.canonical == D and C.offset == D.field.one
    assert C == class_from_matrix(D)


def test_apply_examples():
    F = make_field(5)
    D = _field(5, [[0, 1], [0, 0]])  # X_0 D_1
    assert apply(D, HomogeneousPoly.variable(F, 2, 1)) == HomogeneousPoly.variable(F, 2, 0)
    F3 = make_field(3)
    diag = LinearVectorField.diagonal(F3, (0, 1, 2))
    assert apply(diag, HomogeneousPoly.monomial(F3, (1, 1, 1))).is_zero()


def test_apply_euler_example():
    F = make_field(7)
    f = HomogeneousPoly.from_dict(F, 3, 3, {(3, 0, 0): 1, (1, 1, 1): 4})
    assert apply(LinearVectorField.euler(F, 2), f) == f.scale(3)


def test_p_power_examples():
    F = make_field(3)
    E = LinearVectorField.euler(F, 2)
    assert p_power(E) == E
    assert p_power(_field(2, [[0, 1], [1, 0]])).matrix == ((1, 0), (0, 1))
    D = LinearVectorField.diagonal(F, (0, 1, 2))
    assert p_power(D) == D


@settings(max_examples=100)
@given(F=fields(primes=(2, 3, 5)), n=st.integers(1, 2), data=st.data())
def test_p_power_on_variables(F, n, data):
    D = data.draw(vector_fields(F, n))
    Dp = p_power(D)
    for j in range(n + 1):
        f = HomogeneousPoly.variable(F, n + 1, j)
        for _ in range(F.p):
            f = apply(D, f)
        assert f == Dp.image_of_variable(j)


def test_certificate_examples():
    cert = p_closed_certificate(class_from_matrix(LinearVectorField.diagonal(make_field(3), (0, 1, 2))))
    assert (cert.alpha.code, cert.beta.code) == (1, 0)
    cert = p_closed_certificate(class_from_matrix(_field(2, [[0, 1], [1, 0]])))
    assert (cert.alpha.code, cert.beta.code) == (0, 1)
    cert = p_closed_certificate(class_from_matrix(_field(5, [[0, 1], [0, 0]])))
    assert (cert.alpha.code, cert.beta.code) == (0, 0)


def test_not_p_closed():
    # Jordan block of size 3 over F_2: J^2 != 0 is not in span{J, I}
    C = class_from_matrix(_field(2, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert p_closed_certificate(C) is None


@settings(max_examples=100)
@given(F=fields(primes=(2, 3)), n=st.integers(1, 2), data=st.data())
def test_certificate_soundness(F, n, data):
    D = data.draw(vector_fields(F, n))
    try:
        C = class_from_matrix(D)
    except ZeroClass:
        return
    cert = p_closed_certificate(C)
    A = C.canonical.matrix
    Ap = linalg.matpow(F, A, F.p)
    if cert is None:
        # exhaustive over F: no (alpha, beta) works
        for a in range(F.order):
            for b in range(F.order):
                rhs = linalg.matadd(F, linalg.matscale(F, A, a),
                                    linalg.matscale(F, linalg.identity(F, n + 1), b))
                assert rhs != Ap
    else:
        assert cert.check(C)


def test_chart_restrict_examples():
    F = make_field(5)
    one = ChartPoly.coordinate(F, 0, 2, 0)
    x1 = ChartPoly.coordinate(F, 0, 2, 1)
    R = chart_restrict(class_from_matrix(_field(5, [[0, 1], [0, 0]])), 0)  # X_0 D_1
    assert R.coefficient(1) == one
    R = chart_restrict(class_from_matrix(_field(5, [[0, 0], [0, 1]])), 0)  # X_1 D_1
    assert R.coefficient(1) == x1
    R = chart_restrict(_field(5, [[1, 0], [0, 0]]), 0)  # X_0 D_0
    assert R.coefficient(1) == -x1


def test_chart_restrict_x0d0_on_p2():
    F = make_field(3)
    R = chart_restrict(LinearVectorField.from_entries(F, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]), 0)
    for t in (1, 2):
        assert R.coefficient(t) == -ChartPoly.coordinate(F, 0, 3, t)


@settings(max_examples=100)
@given(F=fields(primes=(2, 3, 5)), n=st.integers(1, 3), data=st.data())
def test_chart_restrict_representative_independent(F, n, data):
    D = data.draw(vector_fields(F, n))
    c = FieldElement(F, data.draw(st.integers(0, F.order - 1)))
    i = data.draw(st.integers(0, n))
    assert chart_restrict(D, i) == chart_restrict(D + LinearVectorField.euler(F, n).scale(c), i)


@settings(max_examples=60)
@given(F=fields(primes=(2, 3, 5)), n=st.integers(1, 2), data=st.data())
def test_chart_restrict_commutes_with_dehomogenize(F, n, data):
    # D(f) / X_i^d = D|_U(f / X_i^d) + d (D(X_i) / X_i) (f / X_i^d)
    D = data.draw(vector_fields(F, n))
    i = data.draw(st.integers(0, n))
    d = data.draw(st.integers(0, 3))
    f = data.draw(forms(F, n + 1, d))
    Dxi = dehomogenize(D.image_of_variable(i), i)
    lhs = dehomogenize(apply(D, f), i)
    g = dehomogenize(f, i)
    rhs = chart_restrict(D, i).apply(g) + (Dxi * g).scale(d)
    assert lhs == rhs
