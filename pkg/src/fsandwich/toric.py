"""Toric data of the quotient: weight normalization, the lattices N' and M', the fan of P^n,
dual cones and Hilbert bases of the chart semigroups.

Coordinates follow the usual conventions for P^n: N = M = Z^n, the rays of
the fan are e_0 = -(e_1 + ... + e_n) and e_1, ..., e_n, and the maximal
cone sigma_i is spanned by every ray except e_i. On the chart U_i the affine
coordinate x_t = X_t / X_i is the character dual to the ray e_t of sigma_i,
so dual-orthant coordinates of sigma_i^dual are chart-monomial exponents.

All arithmetic is exact (integers and Fractions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Optional, Sequence

from .errors import BoundExceeded, DegenerateCone, GenerationIncomplete, InternalInconsistency, ZeroClass

ENUMERATION_LIMIT = 10**7


# -- exact rational matrix helpers -----------------------------------------

def int_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def frac_inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of a rational vector that is a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    den = reduce(_lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in Q^n; basis rows are ``numerators / denominator``."""

    numerators: tuple[tuple[int, ...], ...]
    denominator: int = 1

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.numerators)

    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denominator) for x in r] for r in self.numerators]

    def determinant(self) -> Fraction:
        return Fraction(int_det(self.numerators), self.denominator**self.rank)

    @cached_property
    def _inverse(self) -> list[list[Fraction]]:
        return frac_inverse(self.basis())

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """x with x . basis = v."""
        inv = self._inverse
        return [sum((Fraction(v[k]) * inv[k][j] for k in range(self.rank)), Fraction(0))
                for j in range(self.rank)]

    @cached_property
    def _integer_inverse(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """(K, s) with coordinates(v) = v K / s for integer v."""
        inv = self._inverse
        s = reduce(_lcm, (x.denominator for r in inv for x in r), 1)
        return tuple(tuple(int(x * s) for x in r) for r in inv), s

    def contains(self, v: Sequence) -> bool:
        if all(isinstance(x, int) for x in v):
            K, s = self._integer_inverse
            return all(sum(a * K[k][j] for k, a in enumerate(v)) % s == 0 for j in range(self.rank))
        return all(x.denominator == 1 for x in self.coordinates(v))

    def point(self, coords: Sequence[int]) -> list[Fraction]:
        B = self.basis()
        return [sum((Fraction(c) * B[k][j] for k, c in enumerate(coords)), Fraction(0))
                for j in range(self.rank)]

    def dual(self) -> "Lattice":
        """Basis of Hom(L, Z): rows of the inverse transpose of the basis matrix."""
        inv = self._inverse
        rows = [[inv[j][i] for j in range(self.rank)] for i in range(self.rank)]
        den = reduce(_lcm, (x.denominator for r in rows for x in r), 1)
        return Lattice(tuple(tuple(int(x * den) for x in r) for r in rows), den)

    def same_as(self, other: "Lattice") -> bool:
        return (all(other.contains(r) for r in self.basis())
                and all(self.contains(r) for r in other.basis()))

    def to_json(self) -> dict:
        return {"denominator": self.denominator, "numerators": [list(r) for r in self.numerators]}


def pairing(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


# -- weights -----------------------------------------------------------------

@dataclass(frozen=True)
class WeightVector:
    """Weights a_0..a_n in F_p and their normalized shape (0, 1, a_2', ..., a_n').

    ``permutation[k]`` is the raw index that lands in normalized position k;
    normalized = scale * (raw[permutation] - shift).
    """

    raw: tuple[int, ...]
    p: int
    tail: tuple[int, ...]
    permutation: tuple[int, ...]
    shift: int
    scale: int

    @property
    def n(self) -> int:
        return len(self.raw) - 1

    @property
    def normalized(self) -> tuple[int, ...]:
        return (0, 1) + self.tail

    @property
    def congruence(self) -> tuple[int, ...]:
        return (1,) + self.tail


def normalize_weights(a: Sequence[int], p: int) -> WeightVector:
    raw = tuple(int(x) % p for x in a)
    if len(raw) < 2:
        raise ValueError("need at least two weights")
    if len(set(raw)) == 1:
        raise ZeroClass("constant weights give the zero class")
    shift = raw[0]
    b = [(x - shift) % p for x in raw]
    perm = list(range(len(raw)))
    if b[1] == 0:
        k = next(i for i in range(2, len(b)) if b[i])
        perm[1], perm[k] = perm[k], perm[1]
        b[1], b[k] = b[k], b[1]
    scale = pow(b[1], p - 2, p)
    tail = tuple(scale * x % p for x in b[2:])
    return WeightVector(raw, p, tail, tuple(perm), shift, scale)


def canonical_weights(a: Sequence[int], p: int) -> tuple[int, ...]:
    """Lexicographically smallest vector in the orbit of ``a`` under shifts, unit scalings
    and coordinate permutations.

    For a fixed shift and scale the smallest permutation is the sorted one, so
    only the p (p - 1) affine maps need enumerating.
    """
    return min(tuple(sorted(u * (x + c) % p for x in a))
               for c in range(p) for u in range(1, p))


def orbit_size(a: Sequence[int], p: int) -> int:
    seen = set()
    for c in range(p):
        for u in range(1, p):
            for perm in itertools.permutations(a):
                seen.add(tuple(u * (x + c) % p for x in perm))
    return len(seen)


# -- lattices N', M' -----------------------------------------------------------

def dual_overlattice(p: int, tail: Sequence[int]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """M' as basis rows (p, 0, ..., 0), (a_2, -1, 0, ...), ..., (a_n, 0, ..., -1) and as the
    congruence s_1 + sum a_i s_i = 0 mod p; the two descriptions are cross-checked.
    """
    tail = tuple(int(x) % p for x in tail)
    n = len(tail) + 1
    rows = [tuple(p if j == 0 else 0 for j in range(n))]
    for k, a in enumerate(tail, start=1):
        rows.append(tuple(a if j == 0 else (-1 if j == k else 0) for j in range(n)))
    congruence = (1,) + tail
    for r in rows:
        if sum(c * s for c, s in zip(congruence, r)) % p:
            raise InternalInconsistency(f"basis row {r} violates the congruence")
    if abs(int_det(rows)) != p:
        raise InternalInconsistency("M' basis does not have index p in M")
    return tuple(rows), congruence


def overlattice(p: int, tail: Sequence[int]) -> Lattice:
    """N' = N + Z (1/p)(1, a_2, ..., a_n), basis v_1 = (1/p)(1, a_2, ..., a_n) and v_1 - e_k."""
    tail = tuple(int(x) % p for x in tail)
    first = (1,) + tail
    rows = [first]
    for k in range(1, len(first)):
        rows.append(tuple(x - p if j == k else x for j, x in enumerate(first)))
    return Lattice(tuple(rows), p)


def in_congruence(s: Sequence[int], congruence: Sequence[int], p: int) -> bool:
    return sum(c * x for c, x in zip(congruence, s)) % p == 0


# -- cones -------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    """Cone generated by ``rays``, written in coordinates of ``lattice`` (standard if None)."""

    rays: tuple[tuple[int, ...], ...]
    lattice: Optional[Lattice] = None

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    def ambient_rays(self) -> list[list[Fraction]]:
        if self.lattice is None:
            return [[Fraction(x) for x in r] for r in self.rays]
        return [self.lattice.point(r) for r in self.rays]


def pn_rays(n: int) -> tuple[tuple[int, ...], ...]:
    """Rays e_0 = -(e_1 + ... + e_n), e_1, ..., e_n of the fan of P^n, in index order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return (tuple([-1] * n),) + tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def pn_fan(n: int) -> tuple[Cone, ...]:
    rays = pn_rays(n)
    return tuple(Cone(tuple(r for k, r in enumerate(rays) if k != i)) for i in range(n + 1))


def dual_cone(sigma: Cone, lattice: Optional[Lattice] = None) -> Cone:
    """sigma^dual for a full-dimensional simplicial cone, rays primitive in ``lattice``.

    The k-th dual ray pairs positively with the k-th ray of sigma and to zero
    with the others.
    """
    R = sigma.ambient_rays()
    n = sigma.dim
    if len(R) != n or int_det([primitive(r) for r in R]) == 0:
        raise DegenerateCone("dual_cone needs a full-dimensional simplicial cone")
    inv = frac_inverse(R)
    dual_m = [[inv[j][k] for j in range(n)] for k in range(n)]
    if lattice is None:
        return Cone(tuple(primitive(g) for g in dual_m))
    return Cone(tuple(primitive(lattice.coordinates(g)) for g in dual_m), lattice)


@dataclass(frozen=True)
class HilbertBasis:
    """Irreducible elements of sigma^dual cap M', in dual-orthant coordinates."""

    generators: tuple[tuple[int, ...], ...]
    frame: tuple[tuple[int, ...], ...]  # M-primitive dual rays, rows
    bound: int
    window: int

    def ambient(self) -> list[tuple[int, ...]]:
        """Generators as vectors of M = Z^n."""
        return [tuple(sum(u * g[j] for u, g in zip(v, self.frame)) for j in range(len(self.frame)))
                for v in self.generators]


def hilbert_basis(dual: Cone, lattice: Lattice, p: Optional[int] = None,
                  bound: Optional[int] = None, window: Optional[int] = None) -> HilbertBasis:
    """Hilbert basis of the semigroup dual cap lattice by bounded search.

    Points are enumerated in the box [0, bound]^n of dual-orthant coordinates
    (default bound 2p, p read from the lattice index when not given), and the
    result is checked to generate every semigroup point of [0, window]^n.
    """
    n = dual.dim
    if p is None:
        index = lattice.determinant()
        p = max(abs(index.numerator), index.denominator)
    bound = 2 * p if bound is None else bound
    window = 2 * bound if window is None else window
    if (window + 1) ** n > ENUMERATION_LIMIT:
        raise BoundExceeded(f"verification window ({window}+1)^{n} too large")
    frame = tuple(primitive(r) for r in dual.ambient_rays())
    if abs(int_det(frame)) != 1:
        raise DegenerateCone("dual-orthant coordinates need a unimodular cone")

    def in_semigroup(u) -> bool:
        m = [sum(c * g[j] for c, g in zip(u, frame)) for j in range(n)]
        return lattice.contains(m)

    def by_size(box):
        return sorted(itertools.product(range(box + 1), repeat=n), key=lambda u: (sum(u), u))

    members = {(0,) * n}
    gens: list[tuple[int, ...]] = []
    for u in by_size(bound):
        if not any(u) or not in_semigroup(u):
            continue
        members.add(u)
        if not any(all(a <= b for a, b in zip(g, u)) and tuple(b - a for a, b in zip(g, u)) in members
                   for g in gens):
            gens.append(u)

    generated = {(0,) * n}
    for u in by_size(window):
        if not any(u) or not in_semigroup(u):
            continue
        for g in gens:
            rest = tuple(b - a for a, b in zip(g, u))
            if min(rest) >= 0 and rest in generated:
                generated.add(u)
                break
        else:
            raise GenerationIncomplete(f"point {u} of the cone is not generated with bound {bound}")
    return HilbertBasis(tuple(sorted(gens)), frame, bound, window)


# -- fan assembly --------------------------------------------------------------

@dataclass(frozen=True)
class ChartData:
    index: int  # chart of the input coordinates
    cone_index: int  # cone of the normalized fan
    dual_rays: tuple[tuple[int, ...], ...]  # in M' coordinates
    hilbert_basis: tuple[tuple[int, ...], ...]  # chart-monomial exponents, input variable order

    def to_json(self) -> dict:
        return {"index": self.index,
                "dual_rays": [list(r) for r in self.dual_rays],
                "hilbert_basis": [list(g) for g in self.hilbert_basis]}


@dataclass(frozen=True)
class FanData:
    weights: WeightVector
    N_prime: Lattice
    M_prime: Lattice
    cones: tuple[Cone, ...]
    charts: tuple[ChartData, ...]

    @property
    def p(self) -> int:
        return self.weights.p

    @property
    def n(self) -> int:
        return self.weights.n

    def chart(self, index: int) -> ChartData:
        return next(c for c in self.charts if c.index == index)

    def to_json(self) -> dict:
        w = self.weights
        return {
            "p": w.p,
            "n": w.n,
            "weights": list(w.raw),
            "permutation": list(w.permutation),
            "N_prime_basis": self.N_prime.to_json(),
            "M_prime_basis": [list(r) for r in self.M_prime.numerators],
            "congruence": list(w.congruence),
            "charts": [c.to_json() for c in sorted(self.charts, key=lambda c: c.index)],
        }


def relabel_chart_exponents(u: Sequence[int], cone_index: int, permutation: Sequence[int]) -> tuple[int, ...]:
    """Move chart-monomial exponents from normalized variables to input variables."""
    size = len(permutation)
    raw_chart = permutation[cone_index]
    value = {}
    k = 0
    for t in range(size):
        if t == cone_index:
            continue
        value[permutation[t]] = u[k]
        k += 1
    return tuple(value[t] for t in range(size) if t != raw_chart)


def build_fan(form, p: Optional[int] = None, bound: Optional[int] = None) -> FanData:
    """Fan of P^n in N' together with per-chart semigroup data.

    ``form`` is a DiagonalForm or a plain weight sequence (then ``p`` is required).
    """
    weights = getattr(form, "weights", form)
    if p is None:
        p = form.p
    wv = normalize_weights(weights, p)
    rows, _ = dual_overlattice(p, wv.tail)
    M_prime = Lattice(rows)
    N_prime = overlattice(p, wv.tail)
    cones = pn_fan(wv.n)
    charts = []
    for j, sigma in enumerate(cones):
        dual = dual_cone(sigma, M_prime)
        hb = hilbert_basis(dual, M_prime, p, bound)
        gens = tuple(sorted(relabel_chart_exponents(u, j, wv.permutation) for u in hb.generators))
        charts.append(ChartData(wv.permutation[j], j, dual.rays, gens))
    return FanData(wv, N_prime, M_prime, cones, tuple(sorted(charts, key=lambda c: c.index)))
