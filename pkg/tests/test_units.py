import math
import random

import pytest

from cycloswan.bigarith import DomainError, multiplicative_order
from cycloswan.cyclofield import make_field
from cycloswan.swan import brute_force_subgroup_order
from cycloswan.units import (
    MINUS_ONE,
    GenKind,
    UnitGen,
    enumerate_generators,
    flat,
    frac,
    galois_act,
    galois_conjugate,
    image_frac_p,
    image_of_generator,
    reduced_generator_set,
    root_of_unity,
    subgroup_order_of_images,
)

PAIRS = [(3, 5), (4, 3), (5, 3), (7, 3), (9, 5), (11, 7), (13, 7), (17, 3), (19, 3),
         (23, 5), (25, 3), (27, 5), (29, 3), (31, 3), (37, 5), (4, 7), (5, 13)]


def test_enumerate_generators_three_five():
    gens = enumerate_generators(3, 5)
    assert len(gens) == 14
    assert [g for g in gens if g.kind is GenKind.FRAC] == [frac(3, 2), frac(5, 2), frac(5, 3), frac(5, 4)]
    assert [g.a for g in gens if g.kind is GenKind.FLAT] == [1, 2, 4, 7, 8, 11, 13, 14]
    assert gens[-2:] == [MINUS_ONE, root_of_unity(15)]


def test_enumerate_generators_nine_five():
    gens = enumerate_generators(9, 5)
    assert sorted({g.d for g in gens if g.kind is GenKind.FRAC}) == [3, 5, 9]
    assert sorted({g.d for g in gens if g.kind is GenKind.FLAT}) == [15, 45]
    assert gens == sorted(gens)


def test_enumerate_generators_prime_power_n():
    gens = enumerate_generators(1, 7)
    assert not any(g.kind is GenKind.FLAT for g in gens)
    assert [g for g in gens if g.is_torsion] == [MINUS_ONE]


def test_enumerate_generators_domain():
    with pytest.raises(DomainError):
        enumerate_generators(10, 5)


def test_image_examples():
    f = make_field(3, 5)
    for a in range(1, 5):
        assert image_of_generator(frac(5, a), f) == f.scalar(a)
    # zeta_15 -> z, so 1 - zeta_15 -> 1 - z.
    assert image_of_generator(flat(15, 1), f) == f.one() - f.gen()
    z = image_of_generator(root_of_unity(15), f)
    assert z == f.gen() and z.order() == 3
    assert image_of_generator(MINUS_ONE, f) == f.scalar(4)


@pytest.mark.parametrize("m,p", PAIRS)
def test_frac_p_fast_path_agrees(m, p):
    f = make_field(m, p)
    for a in range(1, p):
        x = image_frac_p(a, f)
        assert image_of_generator(frac(p, a), f) == x
        assert x.order() == multiplicative_order(a, p)
    with pytest.raises(DomainError):
        image_frac_p(p, f)


@pytest.mark.parametrize("m,p", PAIRS)
def test_frac_geometric_sum_equals_quotient(m, p):
    f = make_field(m, p)
    n = m * p
    for g in enumerate_generators(m, p):
        if g.kind is not GenKind.FRAC or g.d == p:
            continue
        num = f.one() - f.z_power(n // g.d * g.a)
        den = f.one() - f.z_power(n // g.d)
        assert image_of_generator(g, f) == num * den.inverse()


def test_reduced_set_examples():
    red = reduced_generator_set(9, 5)
    flats = [g for g in red if g.kind is GenKind.FLAT]
    assert flats == [flat(15, 1), flat(45, 1)]
    assert [g for g in red if g.kind is GenKind.FRAC] == \
        [frac(3, 2)] + [frac(9, a) for a in (2, 4, 5, 7, 8)]
    assert [g for g in red if g.kind is GenKind.P_FAMILY] == [UnitGen(GenKind.P_FAMILY, 5, 0)]
    assert [g for g in red if g.is_torsion] == [MINUS_ONE, root_of_unity(45)]

    red = reduced_generator_set(3, 5)
    assert [g for g in red if g.kind is GenKind.FLAT] == [flat(15, 1)]
    assert [g for g in red if g.kind is GenKind.FRAC] == [frac(3, 2)]
    with pytest.raises(DomainError):
        reduced_generator_set(15, 7)


def test_p_family_marker_generates_prime_field():
    for m, p in [(3, 5), (11, 7), (5, 13)]:
        f = make_field(m, p)
        x = image_of_generator(UnitGen(GenKind.P_FAMILY, p, 0), f)
        assert x.order() == p - 1


def test_galois_conjugate_identity():
    for g in enumerate_generators(9, 5):
        assert galois_conjugate(g, 1, 9, 5) == g
    with pytest.raises(DomainError):
        galois_conjugate(flat(45, 1), 3, 9, 5)


@pytest.mark.parametrize("m,p", PAIRS)
def test_equivariance(m, p):
    f = make_field(m, p)
    rng = random.Random(m + 100 * p)
    units = [t for t in range(1, m) if math.gcd(t, m) == 1]
    gens = enumerate_generators(m, p)
    for _ in range(20):
        t = rng.choice(units)
        g = rng.choice(gens)
        conj = galois_conjugate(g, t, m, p)
        x = image_of_generator(g, f)
        y = image_of_generator(conj, f)
        assert y == galois_act(x, t)
        assert y.order() == x.order()


@pytest.mark.parametrize("m,p", [(3, 5), (9, 5), (25, 3), (27, 5), (4, 7), (37, 5)])
def test_flat_images_equal_orbit_of_representative(m, p):
    f = make_field(m, p)
    units = [t for t in range(1, m) if math.gcd(t, m) == 1]
    flats = [g for g in enumerate_generators(m, p) if g.kind is GenKind.FLAT]
    for d in sorted({g.d for g in flats}):
        level = {image_of_generator(g, f) for g in flats if g.d == d}
        rep = image_of_generator(flat(d, 1), f)
        orbit = {galois_act(rep, t) for t in units}
        assert level == orbit
        orbit_of_gen = {image_of_generator(galois_conjugate(flat(d, 1), t, m, p), f) for t in units}
        assert orbit_of_gen == orbit


def test_subgroup_order_examples():
    f = make_field(3, 5)
    assert subgroup_order_of_images([], f) == 1
    assert subgroup_order_of_images(enumerate_generators(3, 5), f) == 24
    f = make_field(9, 5)
    assert subgroup_order_of_images(enumerate_generators(9, 5), f) == 15624 // 7 == 2232


@pytest.mark.parametrize("m,p", PAIRS)
def test_full_and_reduced_agree(m, p):
    f = make_field(m, p)
    full = subgroup_order_of_images(enumerate_generators(m, p), f)
    assert subgroup_order_of_images(reduced_generator_set(m, p), f) == full
    plain_lcm = math.lcm(*(image_of_generator(g, f).order() for g in enumerate_generators(m, p)))
    assert plain_lcm == full


@pytest.mark.parametrize("m,p", [(3, 5), (4, 3), (5, 3), (7, 3), (4, 7), (9, 5), (5, 13), (3, 11), (2, 11)])
def test_lcm_matches_closure(m, p):
    f = make_field(m, p)
    gens = enumerate_generators(m, p)
    assert subgroup_order_of_images(gens, f) == brute_force_subgroup_order(gens, f)
