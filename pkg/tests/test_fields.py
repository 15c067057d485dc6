"""Field arithmetic: axioms, reduction, parsing."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilmat.errors import DenominatorDivisible, ParseError
from nilmat.fields import (
    QQ,
    FiniteField,
    FunctionField,
    NumberField,
    field_from_json,
    reduce_mod,
)

rationals = st.fractions(max_denominator=40)


def all_fields():
    return [
        QQ,
        FiniteField(5),
        FiniteField(2),
        FiniteField(3, 2),
        FiniteField(5, 2),
        NumberField((-2, 0, 1)),
        FunctionField(QQ),
        FunctionField(FiniteField(5)),
    ]


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.name())
def test_field_axioms(field):
    import random

    rng = random.Random(7)
    for _ in range(60):
        a = field.random_element(rng)
        b = field.random_element(rng)
        c = field.random_element(rng)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.add(a, field.neg(a)) == field.zero
        if not field.is_zero(a):
            assert field.mul(a, field.inv(a)) == field.one
        assert field.mul(a, field.one) == a
        assert field.add(a, field.zero) == a


def test_reduce_mod_examples():
    assert reduce_mod(Fraction(1, 2), 5) == 3
    assert reduce_mod(Fraction(0), 7) == 0
    with pytest.raises(DenominatorDivisible):
        reduce_mod(Fraction(1, 5), 5)


@given(
    st.fractions(max_denominator=30),
    st.fractions(max_denominator=30),
)
@settings(max_examples=120, deadline=None)
def test_reduce_mod_is_a_ring_homomorphism(x, y):
    p = 7
    if x.denominator % p == 0 or y.denominator % p == 0:
        return
    assert reduce_mod(x + y, p) == (reduce_mod(x, p) + reduce_mod(y, p)) % p
    assert reduce_mod(x * y, p) == (reduce_mod(x, p) * reduce_mod(y, p)) % p


def test_finite_field_tables_match_slow_path():
    F = FiniteField(5, 2)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == F._mul_slow(a, b)


def test_finite_field_extension_modulus_is_recorded_and_irreducible():
    F = FiniteField(3, 2)
    assert F.modulus is not None and len(F.modulus) == 3 and F.modulus[-1] == 1
    # same seed, same modulus
    assert FiniteField(3, 2).modulus == F.modulus
    d = F.to_json()
    assert d["kind"] == "GF" and "modulus" in d


def test_finite_field_frobenius_and_order():
    F = FiniteField(5, 2)
    g = F.multiplicative_generator()
    seen = set()
    x = F.one
    for _ in range(F.q - 1):
        x = F.mul(x, g)
        seen.add(x)
    assert len(seen) == F.q - 1
    w = F.element_of_order(8)
    assert F.pow(w, 8) == F.one and F.pow(w, 4) != F.one


def test_number_field_arithmetic():
    nf = NumberField((-2, 0, 1))  # sqrt(2)
    a = nf.gen()
    assert nf.mul(a, a) == nf.from_int(2)
    x = nf.parse(["1/2", "3"])
    assert nf.mul(x, nf.inv(x)) == nf.one
    assert nf.denominator_clearing(x) == 2


def test_function_field_arithmetic():
    ff = FunctionField(QQ)
    x = ff.x()
    inv = ff.inv(x)
    assert ff.mul(x, inv) == ff.one
    two_x = ff.add(x, x)
    assert ff.evaluate(two_x, Fraction(3)) == Fraction(6)
    e = ff.parse({"num": ["1", "1"], "den": ["2"]})  # (1 + X)/2
    assert ff.evaluate(e, Fraction(1)) == Fraction(1)


def test_field_descriptor_round_trip():
    for f in all_fields():
        g = field_from_json(f.to_json())
        assert g == f


def test_entry_parse_errors():
    with pytest.raises(ParseError):
        QQ.parse("1/0")
    with pytest.raises(ParseError):
        QQ.parse(7)
    with pytest.raises(ParseError):
        FiniteField(5).parse("x")
    with pytest.raises(ParseError):
        field_from_json({"kind": "NF", "minpoly": ["-1", "0", "1"]})  # reducible
    with pytest.raises(ParseError):
        field_from_json({"kind": "wat"})


def test_entry_format_round_trip():
    import random

    rng = random.Random(3)
    for f in all_fields():
        for _ in range(20):
            a = f.random_element(rng)
            assert f.parse(f.format(a)) == a
