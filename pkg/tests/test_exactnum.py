import random
from fractions import Fraction

import pytest
from flint import fmpq_poly, fmpz_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_qk.exactnum import CycloNum, cyclotomic_poly, divisors, euler_phi, factorize, mobius


@pytest.mark.parametrize("n, expected", [(1, 1), (4, 0), (6, 1), (2, -1), (30, -1), (12, 0)])
def test_mobius_values(n, expected):
    assert mobius(n) == expected


def test_mobius_divisor_sum():
    for n in range(1, 201):
        assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_factorize_and_phi():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [euler_phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    with pytest.raises(ValueError):
        mobius(0)


@pytest.mark.parametrize("r, coeffs", [(1, [-1, 1]), (2, [1, 1]), (6, [1, -1, 1])])
def test_cyclotomic_examples(r, coeffs):
    assert cyclotomic_poly(r) == fmpq_poly(coeffs)


def test_cyclotomic_product_identity():
    for r in range(1, 51):
        prod = fmpq_poly([1])
        for s in divisors(r):
            prod *= cyclotomic_poly(s)
        assert prod == fmpq_poly([-1] + [0] * (r - 1) + [1])
        # flint's own table as an outside reference
        assert cyclotomic_poly(r) == fmpq_poly(fmpz_poly.cyclotomic(r))


def test_cyclo_examples():
    assert (1 - CycloNum.generator(2)).inv() == Fraction(1, 2)
    t4 = CycloNum.generator(4)
    assert t4 * t4 == -1
    # solve (1 - t)(a + b t) = 1 mod t^2 + t + 1 by hand:
    # (1-t)(a+bt) = a + (b-a) t - b t^2 = (a+b) + (2b-a) t, so a + b = 1, 2b - a = 0
    a, b = Fraction(2, 3), Fraction(1, 3)
    t3 = CycloNum.generator(3)
    assert (1 - t3).inv() == CycloNum(3, [a, b])


def test_cyclo_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        CycloNum(5, 0).inv()


def test_cyclo_order_mismatch():
    with pytest.raises(ValueError):
        CycloNum(3, 1) + CycloNum(4, 1)


def test_cyclo_inverse_randomized():
    rng = random.Random(1234)
    checked = 0
    while checked < 500:
        r = rng.randint(1, 12)
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(euler_phi(r))]
        a = CycloNum(r, coords)
        if a.is_zero():
            continue
        inv = a.inv()
        assert a * inv == 1 and inv * a == 1
        checked += 1


def test_generator_is_primitive_root():
    for r in range(1, 13):
        t = CycloNum.generator(r)
        assert t**r == 1
        for k in range(1, r):
            assert t**k != 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.lists(st.integers(-20, 20), min_size=1, max_size=30))
def test_from_poly_matches_horner(r, coeffs):
    poly = fmpq_poly(coeffs)
    t = CycloNum.generator(r)
    tinv = t.inv()
    direct = CycloNum(r, 0)
    inverse = CycloNum(r, 0)
    for c in reversed(coeffs):
        direct = direct * t + c
        inverse = inverse * tinv + c
    assert CycloNum.from_poly(poly, r) == direct
    assert CycloNum.from_poly(poly, r, inverse=True) == inverse
