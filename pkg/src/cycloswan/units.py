"""Cyclotomic-unit generators of Z[zeta_n], n = m*p, and their images mod (1 - zeta_p).

The reduction sends zeta = zeta_{mp} to z and zeta_p = zeta**m to 1, so
zeta_d**a lands on z**e with e = (mp/d * a) mod m.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .bigarith import DomainError, divisors, factor, is_prime_power
from .cyclofield import FieldElem, FieldSpec


class GenKind(enum.IntEnum):
    FRAC = 0
    P_FAMILY = 1
    FLAT = 2
    ROOT_OF_UNITY = 3


@dataclass(frozen=True, order=True)
class UnitGen:
    """A symbolic unit.

    FRAC(d, a):  (1 - w**a) / (1 - w) with w = zeta_d**twist; twist is 1
                 except after a Galois conjugation.
    FLAT(d, a):  1 - zeta_d**a.
    ROOT_OF_UNITY(d, a): zeta_d**a; d = 2 is -1.
    P_FAMILY(p): stands for every FRAC(p, a) at once (their images are all of F_p*).
    """

    kind: GenKind
    d: int
    a: int
    twist: int = 1

    def __str__(self) -> str:
        if self.kind is GenKind.FRAC:
            w = "zeta_%d" % self.d if self.twist == 1 else "zeta_%d^%d" % (self.d, self.twist)
            return f"(1 - {w}^{self.a})/(1 - {w})"
        if self.kind is GenKind.FLAT:
            return f"1 - zeta_{self.d}^{self.a}"
        if self.kind is GenKind.P_FAMILY:
            return f"<(1 - zeta_{self.d}^a)/(1 - zeta_{self.d}) : all a>"
        if self.d == 2:
            return "-1"
        return f"zeta_{self.d}" if self.a == 1 else f"zeta_{self.d}^{self.a}"

    @property
    def is_torsion(self) -> bool:
        return self.kind is GenKind.ROOT_OF_UNITY


def frac(d: int, a: int) -> UnitGen:
    return UnitGen(GenKind.FRAC, d, a)


def flat(d: int, a: int) -> UnitGen:
    return UnitGen(GenKind.FLAT, d, a)


def root_of_unity(d: int, a: int = 1) -> UnitGen:
    return UnitGen(GenKind.ROOT_OF_UNITY, d, a % d)


MINUS_ONE = UnitGen(GenKind.ROOT_OF_UNITY, 2, 1)


def _units_mod(d: int) -> list[int]:
    return [a for a in range(1, d) if math.gcd(a, d) == 1] if d > 1 else []


def _check_pair(m: int, p: int) -> None:
    if math.gcd(m, p) != 1:
        raise DomainError(f"gcd({m}, {p}) != 1")


def enumerate_generators(m: int, p: int) -> list[UnitGen]:
    """Conrad's generating set for the cyclotomic units of Q(zeta_{mp}), plus torsion."""
    _check_pair(m, p)
    n = m * p
    gens = []
    for d in divisors(n):
        if d == 1:
            continue
        if is_prime_power(d):
            gens.extend(frac(d, a) for a in _units_mod(d) if a != 1)
        else:
            gens.extend(flat(d, a) for a in _units_mod(d))
    gens.append(MINUS_ONE)
    if not is_prime_power(n):
        gens.append(root_of_unity(n))
    return sorted(gens)


def reduced_generator_set(m: int, p: int) -> list[UnitGen]:
    """Shortened generating list with the same image order as the full one.

    For m = q**i: one FLAT(p*q**j, 1) per level j (every FLAT at that level
    has an image of the same order), a P_FAMILY marker for the FRAC(p, *)
    family, all FRAC(q**j, a), and the torsion.  m = 4 gets the full list.
    """
    _check_pair(m, p)
    if m == 4:
        return enumerate_generators(m, p)
    fac = factor(m)
    if len(fac) != 1 or fac.primes[0] == 2:
        raise DomainError(f"reduced generators need m = 4 or an odd prime power, got {m}")
    (q, i), = fac.pairs
    gens = [UnitGen(GenKind.P_FAMILY, p, 0), MINUS_ONE, root_of_unity(m * p)]
    for j in range(1, i + 1):
        d = q**j
        gens.extend(frac(d, a) for a in _units_mod(d) if a != 1)
        gens.append(flat(p * d, 1))
    return sorted(gens)


def _exponent(d: int, a: int, fld: FieldSpec) -> int:
    n = fld.m * fld.p
    if n % d:
        raise DomainError(f"{d} does not divide {n}")
    return (n // d * a) % fld.m


def least_primitive_root_prime(p: int) -> int:
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in factor(p - 1).primes):
        g += 1
    return g


def image_of_generator(g: UnitGen, fld: FieldSpec) -> FieldElem:
    """h(g) in F_p[z]/(Phi_m)."""
    if g.kind is GenKind.FLAT:
        e = _exponent(g.d, g.a, fld)
        assert e != 0, f"image of {g} would be zero"
        return fld.one() - fld.z_power(e)
    if g.kind is GenKind.FRAC:
        # (1 - w**a)/(1 - w) = 1 + w + ... + w**(a-1); this stays valid when w maps to 1.
        w = _exponent(g.d, g.twist, fld)
        coeffs = [0] * fld.m
        for k in range(g.a):
            coeffs[k * w % fld.m] += 1
        return fld.element(coeffs)
    if g.kind is GenKind.ROOT_OF_UNITY:
        if g.d == 2:
            return fld.scalar(-1)
        return fld.z_power(_exponent(g.d, g.a, fld))
    if g.kind is GenKind.P_FAMILY:
        return fld.scalar(least_primitive_root_prime(fld.p))
    raise DomainError(f"unknown generator kind {g.kind}")


def image_frac_p(a: int, fld: FieldSpec) -> FieldElem:
    """h((1 - zeta_p**a)/(1 - zeta_p)) is just the scalar a."""
    if a % fld.p == 0:
        raise DomainError(f"{a} is not a unit mod {fld.p}")
    return fld.scalar(a)


def crt_twist(t: int, m: int, p: int) -> int:
    """The t' mod mp with t' = t (mod m) and t' = 1 (mod p)."""
    if math.gcd(t, m) != 1:
        raise DomainError(f"{t} is not a unit mod {m}")
    return (t * p * pow(p, -1, m) + m * pow(m, -1, p)) % (m * p) if m > 1 else 1


def galois_conjugate(g: UnitGen, t: int, m: int, p: int) -> UnitGen:
    """Apply the automorphism of Q(zeta_{mp}) fixing zeta_p with zeta_m -> zeta_m**t."""
    s = crt_twist(t, m, p)
    if g.kind is GenKind.FLAT:
        return flat(g.d, g.a * s % g.d)
    if g.kind is GenKind.FRAC:
        return UnitGen(GenKind.FRAC, g.d, g.a, g.twist * s % g.d)
    if g.kind is GenKind.ROOT_OF_UNITY:
        return g if g.d == 2 else root_of_unity(g.d, g.a * s)
    return g


def galois_act(x: FieldElem, t: int) -> FieldElem:
    """The matching field automorphism z -> z**t."""
    fld = x.field
    if math.gcd(t, fld.m) != 1:
        raise DomainError(f"{t} is not a unit mod {fld.m}")
    coeffs = [0] * fld.m
    for k, c in enumerate(x.coeffs):
        coeffs[k * t % fld.m] += c
    return fld.element(coeffs)


def distinct_images(gens: Iterable[UnitGen], fld: FieldSpec) -> list[FieldElem]:
    seen: dict[tuple[int, ...], FieldElem] = {}
    for g in gens:
        x = image_of_generator(g, fld)
        seen.setdefault(x.coeffs, x)
    return list(seen.values())


def subgroup_order_of_images(gens: Iterable[UnitGen], fld: FieldSpec, partial: bool = False) -> int:
    """Order of the subgroup of F* generated by the images.

    F* is cyclic, so this is the lcm of the element orders.  An image whose
    L-th power is already 1 cannot raise the lcm L and is skipped.  With
    ``partial`` on an incompletely factored field, only the factored part of
    each order is used and the result divides the true order.
    """
    order_of = FieldElem.partial_order if partial else FieldElem.order
    one = fld.one()
    lcm = 1
    for x in distinct_images(gens, fld):
        if x ** lcm == one:
            continue
        lcm = math.lcm(lcm, order_of(x))
    return lcm
