"""Exact arithmetic in F_p and F_{p^m}.

Elements of F_{p^m} are stored as integer codes. The coordinates
(c_0, ..., c_{m-1}) of an element with respect to the power basis
1, theta, ..., theta^{m-1} are packed big-endian,

    code = c_0 p^{m-1} + c_1 p^{m-2} + ... + c_{m-1},

so that ascending codes enumerate the field in coordinate-lexicographic
order. For m = 1 the code is just the residue mod p.

Extensions built by :func:`find_root` remember their parent field and the
image of the parent's generator, which is what :func:`embed` uses to move
elements up a tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import BoundExceeded, IncompatibleFields, NonPrimeCharacteristic

FIELD_BOUND = 2**20
_TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- univariate polynomials over F_p, coefficient lists low -> high ----------

def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    rem = a[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p by exhaustive trial division.

    ``poly`` lists coefficients low to high including the leading 1.
    """
    f = [c % p for c in poly]
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    for k in range(2, m // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _poly_rem(f, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0,)
    for low in itertools.product(range(p), repeat=m):
        if is_irreducible(list(low) + [1], p):
            return low
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """Descriptor of F_{p^m}.

    ``modulus`` holds c_0..c_{m-1} of the monic defining polynomial
    t^m + c_{m-1} t^{m-1} + ... + c_0. ``parent``/``generator_image`` record
    the tower step this field was built from, if any.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    parent: Optional["Field"] = None
    generator_image: Optional[int] = None

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def one_code(self) -> int:
        return self.p ** (self.m - 1)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus) + [1]})"

    # element constructors
    def __call__(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            return embed(value, self)
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_code)

    def elements(self) -> Iterator["FieldElement"]:
        """All elements in coordinate-lexicographic order."""
        for code in range(self.order):
            yield FieldElement(self, code)

    # code <-> coordinates
    def from_int(self, k: int) -> int:
        return (k % self.p) * self.one_code

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coords)}")
        code = 0
        for c in coords:
            code = code * self.p + int(c) % self.p
        return code

    def coords(self, code: int) -> tuple[int, ...]:
        if self.m == 1:
            return (code,)
        out = [0] * self.m
        for i in range(self.m - 1, -1, -1):
            code, out[i] = divmod(code, self.p)
        return tuple(out)

    def prime_residue(self, code: int) -> Optional[int]:
        """The residue in [0, p) if ``code`` lies in the prime subfield, else None."""
        q, r = divmod(code, self.one_code)
        return q if r == 0 else None

    # raw arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.encode([x + y for x, y in zip(self.coords(a), self.coords(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.encode([-x for x in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return self._polymul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[-log[a] % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        result = self.one_code
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def axpy(self, row: list[int], f: int, prow: Sequence[int]) -> list[int]:
        """row - f * prow, entrywise."""
        if self.m == 1:
            p = self.p
            return [(x - f * y) % p for x, y in zip(row, prow)]
        return [self.sub(x, self.mul(f, y)) if y else x for x, y in zip(row, prow)]

    def scale(self, row: Sequence[int], f: int) -> list[int]:
        if self.m == 1:
            p = self.p
            return [f * x % p for x in row]
        return [self.mul(f, x) for x in row]

    def evaluate(self, coeffs: Sequence[int], x: int) -> int:
        """Horner evaluation of a polynomial given by codes, low to high."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def _polymul(self, a: int, b: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * mod[i]
        return self.encode([x % p for x in prod[:m]])

    @cached_property
    def _tables(self):
        if self.m == 1 or self.order > _TABLE_LIMIT:
            return None
        q = self.order
        factors = _prime_factors(q - 1)
        one = self.one_code

        def slow_pow(a: int, e: int) -> int:
            r, b = one, a
            while e:
                if e & 1:
                    r = self._polymul(r, b)
                b = self._polymul(b, b)
                e >>= 1
            return r

        gen = next(
            g for g in range(1, q)
            if all(slow_pow(g, (q - 1) // r) != one for r in factors)
        )
        exp = [0] * (q - 1)
        log = [0] * q
        x = one
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._polymul(x, gen)
        return exp, log

    def to_json(self) -> dict:
        out = {"p": self.p, "m": self.m, "defining_poly": list(self.modulus)}
        if self.parent is not None:
            out["parent"] = self.parent.to_json()
            if self.generator_image is not None:
                out["generator_image"] = list(self.coords(self.generator_image))
        return out


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise IncompatibleFields(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(o)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def __lt__(self, other: "FieldElement") -> bool:
        return self.code < other.code

    def is_prime_subfield(self) -> bool:
        return self.field.prime_residue(self.code) is not None

    def residue(self) -> int:
        r = self.field.prime_residue(self.code)
        if r is None:
            raise ValueError(f"{self} is not in the prime subfield")
        return r

    def to_json(self):
        if self.field.m == 1:
            return self.code
        return list(self.coords)

    def __repr__(self) -> str:
        if self.field.m == 1:
            return f"{self.code} mod {self.field.p}"
        return f"{list(self.coords)} in GF({self.field.p}^{self.field.m})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1, bound: int = FIELD_BOUND) -> Field:
    """F_{p^m} defined by the lexicographically smallest monic irreducible of degree m."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    if p**m > bound:
        raise BoundExceeded(f"field order {p}^{m} exceeds bound {bound}")
    return Field(p, m, _smallest_irreducible(p, m))


def prime_field(field: Field) -> Field:
    return make_field(field.p, 1)


def extend(field: Field, k: int, bound: int = FIELD_BOUND) -> Field:
    """Degree-k extension of ``field`` with a recorded embedding."""
    if k == 1:
        return field
    big_m = field.m * k
    if field.p**big_m > bound:
        raise BoundExceeded(f"field order {field.p}^{big_m} exceeds bound {bound}")
    base = make_field(field.p, big_m, bound)
    if field.m == 1:
        return Field(field.p, big_m, base.modulus, parent=field)
    min_poly = [base.from_int(c) for c in field.modulus] + [base.one_code]
    image = next(x for x in range(base.order) if base.evaluate(min_poly, x) == 0)
    return Field(field.p, big_m, base.modulus, parent=field, generator_image=image)


def embed(x: FieldElement, target: Field) -> FieldElement:
    """Image of ``x`` in ``target`` along the recorded tower."""
    src = x.field
    if src == target:
        return x
    if src.p != target.p:
        raise IncompatibleFields(f"characteristics differ: {src.p} vs {target.p}")
    if src.m == 1:
        return FieldElement(target, target.from_int(x.code))
    chain = []
    f = target
    while f is not None and f != src:
        chain.append(f)
        f = f.parent
    if f is None:
        raise IncompatibleFields(f"{target!r} is not an extension of {src!r} in a known tower")
    code, cur = x.code, src
    for step in reversed(chain):
        r = step.generator_image
        acc = 0
        for c in cur.coords(code)[::-1]:
            acc = step.add(step.mul(acc, r), step.from_int(c))
        code, cur = acc, step
    return FieldElement(target, code)


def _as_codes(f: Sequence, field: Field) -> list[int]:
    out = []
    for c in f:
        if isinstance(c, FieldElement):
            out.append(embed(c, field).code)
        else:
            out.append(field.from_int(int(c)))
    while out and out[-1] == 0:
        out.pop()
    return out


def find_root(f: Sequence, field: Optional[Field] = None, bound: int = FIELD_BOUND):
    """A root of the univariate polynomial ``f`` (coefficients low to high).

    Searches ``field`` and then its extensions of degree 2, 3, ... in turn,
    returning ``(root, field)`` for the first one containing a root. The root
    is the smallest in coordinate-lexicographic order.
    """
    if field is None:
        field = next(c.field for c in f if isinstance(c, FieldElement))
    codes = _as_codes(f, field)
    degree = len(codes) - 1
    if degree < 1:
        raise ValueError("find_root needs a nonconstant polynomial")
    for k in range(1, degree + 1):
        big = extend(field, k, bound)
        lifted = [embed(FieldElement(field, c), big).code for c in codes]
        for x in range(big.order):
            if big.evaluate(lifted, x) == 0:
                return FieldElement(big, x), big
    raise AssertionError("polynomial without a root in any extension of degree <= its degree")  # pragma: no cover
