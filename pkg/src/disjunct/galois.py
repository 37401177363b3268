"""Finite-field arithmetic GF(p^m).

Elements are indexed 0..q-1 by their coefficient vector in the polynomial
basis: the element with coefficients (c_0, ..., c_{m-1}) (c_i multiplying
x^i) has index sum(c_i * p^i).  Index order is the canonical element order
used everywhere else in the package: zero first, then lexicographic by
coefficients with the highest-degree coefficient most significant.  The
index of a symbol is also its indicator position inside a column block of
a Kautz-Singleton matrix.

The modulus, when not supplied, is the lexicographically least monic
irreducible polynomial of degree m over GF(p) (same significance order as
above), so fields and everything built on them are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError

MAX_FIELD_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n = p^m and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            r = n
            while r % p == 0:
                r //= p
                m += 1
            return (p, m) if r == 1 else None
        p += 1
    return (n, 1)


# -- polynomial helpers over GF(p); dense coefficient lists, index = degree --


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_modpoly(out, mod, p)


def _poly_modpoly(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        if a[i]:
            c = (a[i] * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _poly_trim(a)


def _poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_modpoly(a, mod, p)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a = _poly_modpoly(a, b, p)
        a, b = b, a
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    m = len(poly) - 1
    if m < 1:
        return False
    x = [0, 1]
    # x^(p^m) == x (mod poly)
    h = x
    for _ in range(m):
        h = _poly_powmod(h, p, poly, p)
    hx = _poly_trim([(c - d) % p for c, d in _zip_pad(h, x)])
    if hx:
        return False
    # gcd(x^(p^(m/l)) - x, poly) == 1 for every prime l | m
    for ell in _prime_divisors(m):
        d = m // ell
        h = x
        for _ in range(d):
            h = _poly_powmod(h, p, poly, p)
        g = _poly_gcd([(c - e) % p for c, e in _zip_pad(h, x)], poly, p)
        if len(g) != 1:
            return False
    return True


def _zip_pad(a: Sequence[int], b: Sequence[int]) -> Iterable[tuple[int, int]]:
    n = max(len(a), len(b))
    return ((a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree m over GF(p)."""
    if m == 1:
        return (0, 1)  # x itself: GF(p) elements reduce mod p directly
    for v in range(p**m):
        coeffs = [(v // p**i) % p for i in range(m)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m) with integer-indexed elements and exp/log multiplication tables.

    Parameters
    ----------
    p : prime characteristic
    m : extension degree >= 1
    modulus : optional coefficient list (degree index 0..m, monic); defaults
        to the lexicographically least monic irreducible of degree m.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if m < 1:
            raise InputError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_FIELD_ORDER:
            raise InputError(f"field order {q} exceeds limit {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = irreducible_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InputError(f"modulus must be monic of degree {m}")
        if m > 1 and not _is_irreducible(list(modulus), p):
            raise InputError(f"modulus {modulus} is not irreducible over GF({p})")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = modulus

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- index <-> coefficient views ---------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (c_0, ..., c_{m-1}) of element index a."""
        self._check(a)
        return tuple((a // self.p**i) % self.p for i in range(self.m))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise InputError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise InputError(f"element index {a} outside [0, {self.q})")

    # -- multiplicative structure -------------------------------------------

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        """(exp, log): exp[i] = g^i for the canonical generator g, log inverse."""
        g = self._find_generator()
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        acc = 1
        for i in range(self.q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_poly(acc, g)
        if acc != 1:
            raise RuntimeError("generator order mismatch; modulus not irreducible?")
        return exp, log

    def _mul_poly(self, a: int, b: int) -> int:
        pa = list(self.coeffs(a))
        pb = list(self.coeffs(b))
        prod = _poly_mulmod(_poly_trim(pa), _poly_trim(pb), list(self.modulus), self.p)
        prod += [0] * (self.m - len(prod))
        return self.from_coeffs(prod)

    def _find_generator(self) -> int:
        # smallest index whose multiplicative order is q-1
        n = self.q - 1
        primes = _prime_divisors(n) if n > 1 else []
        for g in range(1, self.q):
            if all(self._pow_poly(g, n // ell) != 1 for ell in primes):
                return g
        raise RuntimeError("no generator found")

    def _pow_poly(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    @property
    def generator(self) -> int:
        """Index of the canonical primitive element (smallest generator)."""
        if self.q == 2:
            return 1
        return self._tables[0][1]

    # -- arithmetic on element indices ---------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.p == 2:
            return a ^ b
        p, out, place = self.p, 0, 1
        for _ in range(self.m):
            out += ((a + b) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        if self.p == 2:
            return a
        p, out, place = self.p, 0, 1
        for _ in range(self.m):
            out += ((-a) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        exp, log = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no multiplicative inverse")
            return 1 if e == 0 else 0
        exp, log = self._tables
        return exp[(log[a] * e) % (self.q - 1)]

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise InputError("zero has no multiplicative order")
        _, log = self._tables
        n = self.q - 1
        return n // gcd(log[a], n) if n > 1 else 1

    # -- element objects -----------------------------------------------------

    def element(self, a: int) -> FieldElement:
        self._check(a)
        return FieldElement(self, a)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1 % self.q)

    def elements(self) -> list[FieldElement]:
        """All q elements in canonical index order (zero first)."""
        return [FieldElement(self, a) for a in range(self.q)]


@dataclass(frozen=True)
class FieldElement:
    """A field element; wraps (field, index) with operator sugar."""

    field: Field
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _coerce(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise InputError("elements belong to different fields")
        return other.index

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.add(self.index, self._coerce(other)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.sub(self.index, self._coerce(other)))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.mul(self.index, self._coerce(other)))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.div(self.index, self._coerce(other)))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow(self.index, e))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.index))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        return f"GF({self.field.q})[{self.index}]"
