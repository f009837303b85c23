import random

import pytest
from gmpy2 import mpq

from qalg.scalars import (
    DEFAULT_PRIMES,
    QQ,
    FractionField,
    InexactDivision,
    LaurentPoly,
    PrimeField,
    RatFunc,
    ScalarError,
    arith,
    derivative_at_one,
    evaluate,
    field_from_descriptor,
)

v = LaurentPoly.var("v")


def test_rational_addition():
    assert arith(mpq(2, 3), mpq(1, 3), "add") == 1


def test_laurent_multiplication():
    assert arith(v - v**-1, v, "mul") == v**2 - 1


def test_exact_division():
    assert arith(v**2 - 1, v - 1, "div-exact") == v + 1


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        (v**2 + 1).div_exact(v - 1)


def test_evaluate_at_one():
    assert evaluate(v - v**-1, {"v": 1}) == 0
    t = LaurentPoly.var("t")
    assert evaluate(t, {"t": 1}) == 1


def test_evaluate_rejects_unknown_symbol():
    with pytest.raises(ScalarError):
        evaluate(LaurentPoly.var("t"), {"x": 1})


@pytest.mark.parametrize(
    "f, expected",
    [(v - v**-1, 2), (v**2, 2), (LaurentPoly.const(1, ("v",)), 0)],
)
def test_derivative_at_one(f, expected):
    assert derivative_at_one(f) == expected


def test_default_primes_are_31_bit():
    assert DEFAULT_PRIMES == (2147483629, 2147483587, 2147483579)
    assert all(p < 2**31 for p in DEFAULT_PRIMES)


def test_prime_field_inverse():
    F = PrimeField(2147483629)
    a = F.convert(12345)
    assert F.mul(a, F.inv(a)) == 1
    assert F.convert(mpq(1, 2)) == F.inv(F.convert(2))


def test_fraction_field_reduces():
    F = FractionField(("t",))
    t = F.gen("t")
    x = (t * t - 1) / (t - 1)
    assert x == t + 1
    assert x.is_polynomial()


def test_ratfunc_evaluate_zero_denominator():
    F = FractionField(("t",))
    t = F.gen("t")
    with pytest.raises(ZeroDivisionError):
        (F.convert(1) / (t - 1)).evaluate({"t": 1})


def test_field_descriptors():
    assert field_from_descriptor("Q") == QQ
    assert isinstance(field_from_descriptor("Fp:101"), PrimeField)


def _random_laurent(rng):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        terms[(rng.randint(-2, 3),)] = rng.randint(-5, 5) or 1
    return LaurentPoly(("v",), terms)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(100):
        a, b, c = (_random_laurent(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a


def test_div_exact_inverts_mul():
    rng = random.Random(11)
    for _ in range(100):
        a, b = _random_laurent(rng), _random_laurent(rng)
        if b:
            assert (a * b).div_exact(b) == a


def test_evaluate_is_multiplicative():
    rng = random.Random(3)
    for _ in range(50):
        a, b = _random_laurent(rng), _random_laurent(rng)
        x = mpq(rng.randint(1, 9), rng.randint(1, 9))
        assert evaluate(a * b, {"v": x}) == evaluate(a, {"v": x}) * evaluate(b, {"v": x})


def test_ratfunc_arithmetic_matches_field_laws():
    F = FractionField(("t", "beta"))
    t, b = F.gen("t"), F.gen("beta")
    x = F.convert(1) / (t - b)
    y = F.convert(1) / (t + b)
    assert x + y == (2 * t) / (t * t - b * b)
    assert isinstance(x * y, RatFunc)
    assert (x * y) * ((t - b) * (t + b)) == 1
