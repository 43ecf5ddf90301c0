"""Cyclotomic polynomials and the finite field F_p[z]/(Phi_m(z)).

When p is a primitive root mod m, Phi_m stays irreducible mod p and the
quotient is the field with p**phi(m) elements in which z is a primitive
m-th root of unity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .bigarith import (
    DomainError,
    Factorization,
    FactorCache,
    FactoringBudgetExceeded,
    divisors,
    euler_phi,
    is_prime,
    multiplicative_order,
    pk_minus_one_factor,
)


class InertnessError(DomainError):
    """p is not inert in Q(zeta_m): Phi_m splits mod p."""

    def __init__(self, m: int, p: int, residue_degree: int, split_count: int):
        self.m, self.p = m, p
        self.residue_degree = residue_degree
        self.split_count = split_count
        super().__init__(
            f"{p} is not inert in Q(zeta_{m}): it splits into {split_count} primes "
            f"of residue degree f = {residue_degree} (inert needs f = phi({m}) = "
            f"{residue_degree * split_count})")


class OrderUnavailable(RuntimeError):
    """The group order is not completely factored, so exact orders are unknown."""


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce(self, p: int) -> "IntPoly":
        return IntPoly(tuple(c % p for c in self.coeffs))

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs, var: str = "z") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


def _exact_div_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("division was not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> IntPoly:
    """Phi_m, from z**m - 1 divided by Phi_d for each proper divisor d."""
    if m < 1:
        raise DomainError(f"no cyclotomic polynomial for m = {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _exact_div_monic(poly, cyclotomic_poly(d).coeffs)
    return IntPoly(tuple(poly))


# -- polynomial helpers over Z/pZ, plain lists in ascending degree ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * bj) % p
    return _trim(q), _trim(a[:db])


def _poly_mul_plain(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


@dataclass(frozen=True)
class FieldSpec:
    """F_p[z]/(Phi_m mod p) together with its factored unit-group order.

    ``unfactored`` lists composite pieces of N that factoring could not split;
    it is empty for a complete factorization.
    """

    m: int
    p: int
    modulus: tuple[int, ...]
    degree: int
    group_order: int
    group_order_factorization: Factorization
    unfactored: tuple[int, ...] = ()
    _tail: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)
    _shift: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = self.degree
        tail = tuple((j, c) for j, c in enumerate(self.modulus[:d]) if c)
        object.__setattr__(self, "_tail", tail)
        object.__setattr__(self, "_shift", max(1, d * (self.p - 1) ** 2).bit_length() + 1)

    @property
    def complete(self) -> bool:
        return not self.unfactored

    # -- constructors for elements --

    def element(self, coeffs) -> "FieldElem":
        c = [x % self.p for x in coeffs]
        if len(c) > self.degree:
            c = self._reduce_long(c)
        c += [0] * (self.degree - len(c))
        return FieldElem(self, tuple(c))

    def scalar(self, a: int) -> "FieldElem":
        return self.element([a])

    def zero(self) -> "FieldElem":
        return self.scalar(0)

    def one(self) -> "FieldElem":
        return self.scalar(1)

    def z_power(self, e: int) -> "FieldElem":
        """z**e; z has order m, so only e mod m matters."""
        coeffs = [0] * self.m
        coeffs[e % self.m] = 1
        return self.element(coeffs)

    def gen(self) -> "FieldElem":
        return self.z_power(1)

    # -- raw arithmetic on coefficient tuples --

    def _reduce_long(self, c: list[int]) -> list[int]:
        m, d, p = self.m, self.degree, self.p
        # Phi_m divides z**m - 1, so fold exponents mod m first.
        r = [0] * max(m, d)
        for i, x in enumerate(c):
            r[i % m] += x
        for i in range(len(r) - 1, d - 1, -1):
            x = r[i] % p
            if x:
                base = i - d
                for j, cj in self._tail:
                    r[base + j] -= x * cj
        return [x % p for x in r[:d]]

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        # Kronecker substitution: pack into one int, multiply, unpack.
        s = self._shift
        A = 0
        for x in reversed(a):
            A = (A << s) | x
        B = 0
        for x in reversed(b):
            B = (B << s) | x
        C = A * B
        mask = (1 << s) - 1
        out = []
        for _ in range(2 * self.degree - 1):
            out.append(C & mask)
            C >>= s
        return tuple(self._reduce_long(out))

    def _pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        result = self.one().coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return result

    def random_element(self, rng, nonzero: bool = False) -> "FieldElem":
        while True:
            x = FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))
            if not (nonzero and x.is_zero()):
                return x

    def __str__(self) -> str:
        return f"F_{self.p}[z]/({format_poly(self.modulus)})"


class FieldElem:
    """Residue class in a :class:`FieldSpec`, coefficients ascending."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple[int, ...]):
        if len(coeffs) != field.degree:
            raise DomainError(f"expected {field.degree} coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = coeffs

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")
        if (other.field.m, other.field.p) != (self.field.m, self.field.p):
            raise DomainError("elements belong to different fields")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElem":
        p = self.field.p
        return FieldElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field._mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> "FieldElem":
        # 0**0 == 1 by convention.
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field._pow(self.coeffs, e))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return self * other.inverse()

    def inverse(self) -> "FieldElem":
        """Inverse by the extended Euclidean algorithm over Z/pZ."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        p = self.field.p
        r0, r1 = list(self.field.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul_plain(q, s1, p), p)
        if len(r0) != 1:
            raise ArithmeticError("modulus is not irreducible; element is a zero divisor")
        c = pow(r0[0], -1, p)
        return self.field.element([x * c for x in s0])

    def order(self) -> int:
        """Multiplicative order, exact; needs the group order fully factored.

        For each q**e exactly dividing N, raise x to N/q**e and count how many
        q-th powerings it takes to reach 1.
        """
        if self.is_zero():
            raise DomainError("zero has no multiplicative order")
        fld = self.field
        if not fld.complete:
            raise OrderUnavailable(
                f"group order {fld.group_order} is not fully factored "
                f"(unfactored: {', '.join(map(str, fld.unfactored))})")
        return self._order_over(fld.group_order_factorization, fld.group_order)

    def partial_order(self) -> int:
        """Divisor of the true order built from the factored primes only."""
        if self.is_zero():
            raise DomainError("zero has no multiplicative order")
        return self._order_over(self.field.group_order_factorization, self.field.group_order)

    def _order_over(self, fac: Factorization, n: int) -> int:
        fld = self.field
        one = fld.one().coeffs
        order = 1
        for q, e in fac:
            y = fld._pow(self.coeffs, n // q**e)
            k = 0
            while y != one:
                if k == e:
                    raise ArithmeticError(f"x**{n} != 1; field is not of order {n + 1}")
                y = fld._pow(y, q)
                k += 1
            order *= q**k
        return order

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElem):
            return NotImplemented
        return (self.field.m, self.field.p, self.coeffs) == (other.field.m, other.field.p, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field.m, self.field.p, self.coeffs))

    def __repr__(self) -> str:
        return f"FieldElem({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def element_order(x: FieldElem) -> int:
    return x.order()


def residue_degree(m: int, p: int) -> int:
    """Order of p mod m; p splits into phi(m)/f primes of degree f in Q(zeta_m)."""
    return multiplicative_order(p % m if m > 1 else 0, m)


def make_field(m: int, p: int, budget: float | None = None, seed: int = 0,
               cache: FactorCache | None = None, allow_partial: bool = False) -> FieldSpec:
    """Build F_p[z]/(Phi_m) for p inert in Q(zeta_m).

    With ``allow_partial`` a factoring timeout yields a field whose
    ``unfactored`` is nonempty instead of raising.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m % p == 0:
        raise DomainError(f"{p} divides {m} and ramifies in Q(zeta_{m})")
    deg = euler_phi(m)
    f = residue_degree(m, p)
    if f != deg:
        raise InertnessError(m, p, f, deg // f)
    modulus = cyclotomic_poly(m).reduce(p).coeffs
    try:
        fac = pk_minus_one_factor(p, deg, budget, seed, cache)
        rest: tuple[int, ...] = ()
    except FactoringBudgetExceeded as exc:
        if not allow_partial:
            raise
        fac, rest = exc.partial, tuple(exc.cofactors)
    n = p**deg - 1
    assert fac.value * math.prod(rest) == n
    return FieldSpec(m, p, modulus, deg, n, fac, rest)
