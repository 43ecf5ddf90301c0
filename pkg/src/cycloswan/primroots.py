"""Primitive roots and least inert primes.

An odd prime p not dividing m is inert in Q(zeta_m) exactly when it is a
primitive root mod m, so everything here reduces to order computations mod m.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .bigarith import DomainError, euler_phi, factor, is_prime, multiplicative_order

PROGRESSION_STEP_CAP = 10**6


class NoPrimitiveRootError(DomainError):
    def __init__(self, m: int):
        self.m = m
        super().__init__(
            f"no primitive root mod {m}: only m = 4, q^n or 2*q^n (q an odd prime) "
            f"admit one, hence an inert prime")


class InertMethod(str, enum.Enum):
    PROGRESSION = "progression"
    DIRECT = "direct"
    TWO_M_REDUCTION = "two_m_reduction"


@dataclass(frozen=True)
class InertRecord:
    m: int
    least_primitive_root: int
    inert_prime: int
    method: InertMethod


def inert_prime_exists(m: int) -> bool:
    """True iff (Z/mZ)* is cyclic, i.e. m is 4, q**n or 2*q**n with q odd prime."""
    if m < 3:
        raise DomainError(f"m must be at least 3, got {m}")
    if m == 4:
        return True
    if m % 2 == 0:
        m //= 2
    fac = factor(m)
    return len(fac) == 1 and fac.primes[0] != 2


def is_primitive_root(r: int, m: int) -> bool:
    if m < 3:
        raise DomainError(f"m must be at least 3, got {m}")
    if math.gcd(r, m) != 1:
        return False
    phi = euler_phi(m)
    return multiplicative_order(r % m, m, factor(phi)) == phi


def least_primitive_root(m: int) -> int:
    if not inert_prime_exists(m):
        raise NoPrimitiveRootError(m)
    r = 2
    while not is_primitive_root(r, m):
        r += 1
    return r


def progression_prime(m: int, r: int) -> int:
    """First prime > 2 in r, r + m, r + 2m, ..."""
    for i in range(PROGRESSION_STEP_CAP):
        cand = r + i * m
        if cand > 2 and is_prime(cand):
            return cand
    raise RuntimeError(f"no prime among {PROGRESSION_STEP_CAP} terms of {r} + k*{m}")


def least_inert_prime_direct(m: int) -> int:
    """Least odd prime that is a primitive root mod m."""
    if not inert_prime_exists(m):
        raise NoPrimitiveRootError(m)
    p = 3
    while True:
        if m % p and is_prime(p) and is_primitive_root(p, m):
            return p
        p += 2


def two_m_reduction(m: int) -> int:
    """Least primitive root mod 2m; for odd m = q**n this is the least odd primitive root mod m."""
    fac = factor(m)
    if len(fac) != 1 or fac.primes[0] == 2:
        raise DomainError(f"{m} is not an odd prime power")
    r = least_primitive_root(2 * m)
    assert r % 2 == 1, "units mod 2m are odd"
    return r


def is_admissible_field_index(m: int) -> bool:
    """m with an inert prime and m not 2 mod 4 (so Q(zeta_m) is not a repeat)."""
    return m >= 3 and m % 4 != 2 and inert_prime_exists(m)


def table22_row(m: int) -> InertRecord:
    r = least_primitive_root(m)
    return InertRecord(m, r, progression_prime(m, r), InertMethod.PROGRESSION)


def table24_row(m: int) -> InertRecord:
    return InertRecord(m, least_primitive_root(m), least_inert_prime_direct(m), InertMethod.DIRECT)


def generate_table(m_range: Iterable[int], mode: str) -> list[InertRecord]:
    """Rows for every admissible m in ``m_range``, ascending.

    ``table22``: all m with a primitive root, least primitive root paired with
    the progression prime.  ``table24``: m not 2 mod 4, true least inert prime.
    """
    if mode not in ("table22", "table24"):
        raise DomainError(f"unknown table mode {mode!r}")
    rows = []
    for m in sorted(set(m_range)):
        if m < 3 or not inert_prime_exists(m):
            continue
        if mode == "table22":
            rows.append(table22_row(m))
        elif m % 4 != 2:
            rows.append(table24_row(m))
    return rows
