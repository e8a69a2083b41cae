"""Acceptance criteria 1-7, all checked by exact equality.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsandwich.diagonalize import Verdict, diagonalize
from fsandwich.field import make_field
from fsandwich.invariants import chart_invariants, congruence_count, graded_kernel, localization_consistency
from fsandwich.pipeline import census_classes, run_verify
from fsandwich.poly import HomogeneousPoly
from fsandwich.toric import Lattice, build_fan, canonical_weights, dual_overlattice, int_det, normalize_weights
from fsandwich.vector_field import LinearVectorField, apply, class_from_matrix, p_power

from strategies import conjugated_diagonal, forms, random_invertible, vector_fields

GOLDEN = Path(__file__).parent / "golden"
GRID = [(p, n) for p in (2, 3, 5) for n in (1, 2, 3)]


def _toric_classes(p, n):
    return [w for w in census_classes(p, n) if len(set(w)) > 1]


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1, "oracle equivalence over the census grid")
@pytest.mark.parametrize("p,n", GRID)
def test_oracle_equivalence(p, n):
    F = make_field(p)
    for weights in _toric_classes(p, n):
        fan = build_fan(weights, p)
        assert len(fan.charts) == n + 1
        for chart in fan.charts:
            assert set(chart.hilbert_basis) == set(chart_invariants(weights, chart.index, p).generators)
        D = LinearVectorField.diagonal(F, weights)
        for d in range(9):
            assert graded_kernel(D, d).dimension == congruence_count(weights, d, p)


# -- 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2, "diagonalization round-trip on 200 random conjugates")
def test_diagonalization_round_trip():
    rng = random.Random(20240601)
    for _ in range(200):
        p = rng.choice((2, 3, 5, 7))
        n = rng.randint(1, 3)
        F = make_field(p)
        a = [rng.randrange(p) for _ in range(n + 1)]
        while len(set(a)) == 1:
            a = [rng.randrange(p) for _ in range(n + 1)]
        A = conjugated_diagonal(F, a, random_invertible(F, n + 1, rng))
        verdict = diagonalize(A)
        assert verdict.kind is Verdict.DIAGONALIZABLE
        assert canonical_weights(verdict.form.weights, p) == canonical_weights(a, p)
        assert verdict.form.reconstruct() == A.lift(verdict.form.field)


# -- 3 ---------------------------------------------------------------------------

def _naive_power(A, e, p):
    size = len(A)
    R = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(e):
        R = [[sum(R[i][k] * A[k][j] for k in range(size)) % p for j in range(size)] for i in range(size)]
    return R


def _p_closed_brute(A, p):
    """A^p in span{A, I}, by trying every (alpha, beta) in F_p^2."""
    size = len(A)
    Ap = _naive_power(A, p, p)
    return any(all(Ap[i][j] == (al * A[i][j] + (be if i == j else 0)) % p
                   for i in range(size) for j in range(size))
               for al in range(p) for be in range(p))


@pytest.mark.criterion(3, "nilpotent and non-p-closed detection, no false Toric verdicts")
def test_nilpotent_and_not_p_closed_detection():
    rng = random.Random(77)
    toric = 0
    for _ in range(100):
        p = rng.choice((2, 3, 5, 7))
        n = rng.randint(1, min(3, p - 1))  # N^{n+1} = 0 and n + 1 <= p give N^p = 0
        size = n + 1
        rows = [[rng.randrange(p) if j > i else 0 for j in range(size)] for i in range(size)]
        if not any(map(any, rows)):
            rows[rng.randrange(n)][size - 1] = 1 + rng.randrange(p - 1)
        verdict = diagonalize(LinearVectorField.from_entries(make_field(p), rows))
        toric += verdict.is_diagonalizable
        assert verdict.kind is Verdict.NILPOTENT

    found = 0
    while found < 100:
        p = rng.choice((2, 3, 5, 7))
        n = rng.randint(1, 3)
        rows = [[rng.randrange(p) for _ in range(n + 1)] for _ in range(n + 1)]
        if _p_closed_brute(rows, p):
            continue
        found += 1
        verdict = diagonalize(LinearVectorField.from_entries(make_field(p), rows))
        toric += verdict.is_diagonalizable
        assert verdict.kind is Verdict.NOT_P_CLOSED
    assert toric == 0


# -- 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4, "M' index, congruence rows and box membership for every census class")
@pytest.mark.parametrize("p,n", GRID)
def test_lattice_correctness(p, n):
    for weights in _toric_classes(p, n):
        wv = normalize_weights(weights, p)
        rows, _ = dual_overlattice(p, wv.tail)
        assert abs(int_det(rows)) == p
        a = (1,) + wv.tail

        def congruent(s):
            return sum(c * x for c, x in zip(a, s)) % p == 0

        assert all(congruent(r) for r in rows)
        M = Lattice(rows)
        for s in itertools.product(range(-2 * p, 2 * p + 1), repeat=n):
            assert M.contains(s) == congruent(s)


# -- 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5, "localization consistency on every chart, p <= 5, n <= 2, d_max = 8")
@pytest.mark.parametrize("p,n", [(p, n) for p, n in GRID if n <= 2])
def test_localization_consistency(p, n):
    F = make_field(p)
    for weights in _toric_classes(p, n):
        C = class_from_matrix(LinearVectorField.diagonal(F, weights))
        form = diagonalize(C).form
        for i in range(n + 1):
            report = localization_consistency(C, form, i, 8)
            assert report.passed, report.counterexample


# -- 6 ---------------------------------------------------------------------------

FIELDS = [make_field(p, m) for p, m in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]]
PROPERTY = settings(max_examples=500, deadline=None, derandomize=True)


@st.composite
def ring_elements(draw, count):
    F = draw(st.sampled_from(FIELDS))
    nvars = draw(st.integers(2, 4))
    degrees = [draw(st.integers(0, 3)) for _ in range(count)]
    return F, nvars, [draw(forms(F, nvars, d, max_terms=5)) for d in degrees]


@pytest.mark.criterion(6, "algebra property suite, 500 cases per property")
@PROPERTY
@given(data=st.data())
def test_leibniz_rule(data):
    F, nvars, (f, g) = data.draw(ring_elements(2))
    D = data.draw(vector_fields(F, nvars - 1))
    assert apply(D, f * g) == apply(D, f) * g + f * apply(D, g)


@pytest.mark.criterion(6, "algebra property suite, 500 cases per property")
@PROPERTY
@given(data=st.data())
def test_euler_identity(data):
    F, nvars, (f,) = data.draw(ring_elements(1))
    E = LinearVectorField.euler(F, nvars - 1)
    assert apply(E, f) == f.scale(f.degree)


@pytest.mark.criterion(6, "algebra property suite, 500 cases per property")
@PROPERTY
@given(data=st.data())
def test_frobenius_additivity(data):
    F, nvars, (f,) = data.draw(ring_elements(1))
    g = data.draw(forms(F, nvars, f.degree, max_terms=5))

    def frob(h):
        out = HomogeneousPoly.constant(F, nvars)
        for _ in range(F.p):
            out = out * h
        return out

    assert frob(f + g) == frob(f) + frob(g)


@pytest.mark.criterion(6, "algebra property suite, 500 cases per property")
@PROPERTY
@given(data=st.data())
def test_p_power_matches_iteration(data):
    F, nvars, (f,) = data.draw(ring_elements(1))
    D = data.draw(vector_fields(F, nvars - 1))
    iterated = f
    for _ in range(F.p):
        iterated = apply(D, iterated)
    assert apply(p_power(D), f) == iterated


# -- 7 ---------------------------------------------------------------------------

def _brute_hilbert(weights, p, d_max):
    return [sum(1 for e in itertools.product(range(d + 1), repeat=len(weights))
                if sum(e) == d and sum(a * x for a, x in zip(weights, e)) % p == 0)
            for d in range(d_max + 1)]


def _brute_chart_basis(w, p, box):
    pts = [u for u in itertools.product(range(box + 1), repeat=len(w))
           if any(u) and sum(a * x for a, x in zip(w, u)) % p == 0]
    pset = set(pts)
    return {u for u in pts
            if not any(tuple(x - y for x, y in zip(u, v)) in pset
                       for v in pts if v != u and all(y <= x for x, y in zip(u, v)))}


@pytest.mark.criterion(7, "worked fixed point p = 3, n = 2, weights (0,1,2)")
def test_worked_fixed_point():
    weights, p = (0, 1, 2), 3
    # brute-force recomputation of the frozen values
    brute_h = _brute_hilbert(weights, p, 8)
    assert brute_h[:4] == [1, 1, 2, 4]
    assert _brute_chart_basis((1, 2), p, 9) == {(3, 0), (0, 3), (1, 1)}

    classify_golden = json.loads((GOLDEN / "p3_n2_diag012.classify.json").read_text())
    verify_golden = json.loads((GOLDEN / "p3_n2_diag012.verify.json").read_text())
    assert classify_golden["verdict"] == "Toric"
    chart0 = next(c for c in classify_golden["fan"]["charts"] if c["index"] == 0)
    assert {tuple(g) for g in chart0["hilbert_basis"]} == {(3, 0), (0, 3), (1, 1)}
    assert verify_golden["hilbert_entries"] == brute_h

    report, code = run_verify(str(GOLDEN / "p3_n2_diag012.input.json"), 8, stable=True)
    assert code == 0 and report["passed"]
    assert report["hilbert_entries"] == brute_h
    assert {tuple(g) for g in build_fan(weights, p).chart(0).hilbert_basis} == {(3, 0), (0, 3), (1, 1)}
