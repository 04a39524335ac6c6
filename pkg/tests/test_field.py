from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geprofi import QQ, FpElement, PrimeField, RandomSource, derive_seed, inverse
from geprofi.errors import PreconditionError
from geprofi.field import is_prime, parse_field, scalars_from_json, scalars_to_json

rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 50))
primes = st.sampled_from([2, 3, 5, 7, 11, 101, 30011])


@st.composite
def fp_triples(draw):
    p = draw(primes)
    f = PrimeField(p)
    return f, [f(draw(st.integers(-10**6, 10**6))) for _ in range(3)]


@given(rationals, rationals, rationals)
def test_rational_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QQ.zero == a and a * QQ.one == a
    if a != 0:
        assert a * inverse(a) == 1


@given(fp_triples())
def test_prime_field_axioms(data):
    f, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a and a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == f.zero and a + (-a) == f.zero
    assert a * f.one == a
    if a != 0:
        assert a * inverse(a) == f.one
        assert a / a == f.one
        assert a ** (f.p - 1) == f.one  # Fermat
        assert a ** -1 == inverse(a)


@given(primes, st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_fraction_reduction_is_a_ring_map(p, n, d):
    f = PrimeField(p)
    if Fraction(n, d).denominator % p == 0:
        with pytest.raises(ZeroDivisionError):
            f(Fraction(n, d))
        return
    x = f(Fraction(n, d))
    assert x * Fraction(n, d).denominator == f(Fraction(n, d).numerator)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        inverse(PrimeField(7)(0))
    with pytest.raises(ZeroDivisionError):
        PrimeField(7)(3) / 0


def test_fields_do_not_mix():
    with pytest.raises(TypeError):
        PrimeField(5)(1) + PrimeField(7)(1)
    with pytest.raises(TypeError):
        QQ(PrimeField(5)(1))


@pytest.mark.parametrize("n", [0, 1, 4, 9, 91, 2**16])
def test_composite_moduli_rejected(n):
    with pytest.raises(PreconditionError):
        PrimeField(n)


def test_is_prime_small_table():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def test_parse_field_forms():
    assert parse_field("Q") is QQ
    assert parse_field(None) is QQ
    assert parse_field("Fp:11") == PrimeField(11)
    assert parse_field({"Fp": 13}) == PrimeField(13)
    with pytest.raises(ValueError):
        parse_field("R")
    with pytest.raises(PreconditionError):
        parse_field("Fp:12")


@given(st.lists(rationals, max_size=6))
def test_rational_json_round_trip(values):
    assert scalars_from_json(QQ, scalars_to_json(QQ, values)) == values


@given(primes, st.lists(st.integers(0, 10**6), max_size=6))
def test_prime_json_round_trip(p, values):
    f = PrimeField(p)
    xs = [f(v) for v in values]
    assert scalars_from_json(f, scalars_to_json(f, xs)) == xs


def test_rational_json_rejects_floats_and_bools():
    with pytest.raises(ValueError):
        QQ.from_json(0.5)
    with pytest.raises(ValueError):
        QQ.from_json(True)


def test_seed_derivation_is_stable_and_label_sensitive():
    assert derive_seed(7, "a", 1) == derive_seed(7, "a", 1)
    assert derive_seed(7, "a", 1) != derive_seed(7, "a", 2)
    assert derive_seed(7, "a") != derive_seed(8, "a")
    assert 0 <= derive_seed(0) < 2**64


def test_random_source_streams_repeat():
    a, b = RandomSource(42), RandomSource(42)
    assert QQ.sample(a, 20) == QQ.sample(b, 20)
    f = PrimeField(101)
    assert a.child("x").sample(f, 5) == b.child("x").sample(f, 5)
    assert all(abs(x) <= 3 for x in QQ.sample(RandomSource(1, bound=3), 50))
    with pytest.raises(PreconditionError):
        RandomSource(0, bound=0)


def test_fp_element_equality_with_ints():
    f = PrimeField(7)
    assert f(10) == 3 and f(3) == FpElement(10, 7)
    assert hash(f(3)) == hash(FpElement(3, 7))
    assert not f(0) and f(1)
