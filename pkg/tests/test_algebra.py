"""gcd, squarefree parts, germ inclusion, decomposition, Jacobian rank."""

import random

import pytest

from germimage.algebra import (
    IntersectionCase,
    decompose,
    first_nonzero_minor,
    gcd,
    intersection_dimension_case,
    jacobian_rank_deficient,
    squarefree_part,
    zero_set_germ_included,
)
from germimage.errors import GcdUndefinedError, PreconditionError
from germimage.poly import MapGerm, Polynomial
from germimage.rationals import GaussianRational, I

from _helpers import compose_case, factor_pool, random_unimodular, source_change, variables

x, y = variables(2)
x3, y3, z3 = variables(3)
one = Polynomial.one(2)
zero = Polynomial.zero(2)


def test_gcd_printed_examples():
    assert gcd(x * y, x * x * y * y + y**3) == y
    w = x**4 + y
    assert gcd(x * w, y * w * w) == w
    assert gcd(x * y + y, one) == one


def test_gcd_zero_and_normalization():
    assert gcd(zero, (x + y).scale(3)) == x + y
    assert gcd((x * y).scale(GaussianRational(0, 2)), zero) == x * y
    with pytest.raises(GcdUndefinedError):
        gcd(zero, zero)


def test_gcd_gaussian_coefficients():
    # (x + i*y) and (x - i*y) are coprime over Q(i)
    p = x + y.scale(I)
    q = x - y.scale(I)
    assert gcd(p * q, p * p) == p
    assert gcd(p, q) == one


def test_squarefree_examples():
    assert squarefree_part(y**3) == y
    assert squarefree_part(x * x * y) == x * y
    assert squarefree_part(x**4 + y) == x**4 + y
    with pytest.raises(PreconditionError):
        squarefree_part(zero)


def test_germ_inclusion_examples():
    assert zero_set_germ_included(y**3, y) is True
    assert zero_set_germ_included(x * (x - one), x) is True
    assert zero_set_germ_included(x + y, x) is False
    with pytest.raises(PreconditionError):
        zero_set_germ_included(zero, x)


def test_decompose_examples():
    dec = decompose(MapGerm(x * y, x * x * y * y + y**3))
    assert dec.h == y
    assert dec.f_hat == x
    assert dec.g_hat == x * x * y + y * y
    assert not dec.f_hat_is_unit and not dec.g_hat_is_unit

    w = x**4 + y
    dec2 = decompose(MapGerm(x * w, y * w * w))
    assert dec2.h == w
    assert dec2.f_hat == x
    assert dec2.g_hat == y * w

    dec3 = decompose(MapGerm(x * x, x * y))
    assert (dec3.h, dec3.f_hat, dec3.g_hat) == (x, x, y)


def test_decompose_remultiplies_bitwise():
    for f, g in [
        (x * y, x * x * y * y + y**3),
        ((x + y) ** 2, (x + y) ** 3),
        (x * (x**4 + y), y * (x**4 + y) ** 2),
    ]:
        dec = decompose(MapGerm(f, g))
        assert dec.h * dec.f_hat == f
        assert dec.h * dec.g_hat == g
        assert gcd(dec.f_hat, dec.g_hat).is_constant()


def test_intersection_dimension_case():
    germ = MapGerm(x3 * y3, x3 * z3)
    assert intersection_dimension_case(germ, decompose(germ)) is IntersectionCase.CODIM_ONE
    germ2 = MapGerm(x, y)
    assert intersection_dimension_case(germ2, decompose(germ2)) is IntersectionCase.CODIM_TWO
    germ3 = MapGerm(x * (y + x * x), y * (y + x * x))
    assert intersection_dimension_case(germ3, decompose(germ3)) is IntersectionCase.CODIM_ONE


def test_jacobian_examples():
    assert jacobian_rank_deficient(MapGerm(x, x * y)) is False
    ij, minor = first_nonzero_minor(MapGerm(x, x * y))
    assert ij == (0, 1) and minor == x

    assert jacobian_rank_deficient(MapGerm((x + y) ** 2, (x + y) ** 3)) is True

    assert jacobian_rank_deficient(MapGerm(x * (x + y), x * y)) is False
    _, minor2 = first_nonzero_minor(MapGerm(x * (x + y), x * y))
    assert minor2 == (x * x).scale(2)

    # n=1 is vacuously rank-deficient
    x1 = Polynomial.variable(1, 0)
    assert jacobian_rank_deficient(MapGerm(x1, x1 * x1)) is True


def test_jacobian_invariant_under_unimodular_source_change():
    rng = random.Random(11)
    germs = [
        MapGerm(x, x * y),
        MapGerm((x + y) ** 2, (x + y) ** 3),
        MapGerm(x * (x + y), x * y),
    ]
    for germ in germs:
        expected = jacobian_rank_deficient(germ)
        for _ in range(4):
            mat = random_unimodular(rng, 2)
            assert jacobian_rank_deficient(source_change(germ, mat)) == expected


# -- oracle family: tracked factor lists (builders in _helpers) ---------------


def test_germ_inclusion_matches_factor_oracle_sample():
    rng = random.Random(2024)
    pool = factor_pool()
    for _ in range(60):
        p, q, oracle = compose_case(rng, pool)
        assert zero_set_germ_included(p, q) == oracle


def test_germ_inclusion_reflexive_transitive():
    rng = random.Random(7)
    pool = [entry for entry in factor_pool() if entry[1]]
    for _ in range(20):
        fs = [rng.choice(pool)[0] for _ in range(rng.randint(1, 3))]
        p = Polynomial.one(3)
        for fac in fs:
            p = p * fac
        assert zero_set_germ_included(p, p) is True
    # transitivity on nested products
    a = pool[0][0]
    b = pool[3][0]
    c = pool[5][0]
    p1, p2, p3 = a, a * b, a * b * c
    assert zero_set_germ_included(p1, p2)
    assert zero_set_germ_included(p2, p3)
    assert zero_set_germ_included(p1, p3)


def test_gcd_divides_both_on_random_products():
    rng = random.Random(99)
    pool = factor_pool()
    for _ in range(25):
        p, q, _ = compose_case(rng, pool, max_factors=3)
        g = gcd(p, q)
        p.exact_divide(g)
        q.exact_divide(g)
