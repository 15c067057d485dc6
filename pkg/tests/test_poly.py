"""Polynomial arithmetic and factorization."""

import random

import pytest

from nilmat.errors import UnsupportedField
from nilmat.fields import QQ, FiniteField, FunctionField, NumberField
from nilmat.poly import (
    Poly,
    cyclotomic_finite_order,
    cyclotomic_ints,
    discriminant,
    factor,
    gcd,
    is_irreducible_over_Q,
    resultant,
    squarefree_part,
)


def expand(lead, facs, field):
    out = Poly.make(field, [lead])
    for g, e in facs:
        for _ in range(e):
            out = out * g
    return out


def test_squarefree_part_examples():
    # (X-1)^2 over Q
    f = Poly.from_ints(QQ, [1, -2, 1])
    assert squarefree_part(f) == Poly.from_ints(QQ, [-1, 1])
    # X^2 - 2 already squarefree
    f2 = Poly.from_ints(QQ, [-2, 0, 1])
    assert squarefree_part(f2) == f2
    # X^5 - X^4 over GF(5): distinct roots 0 and 1
    F5 = FiniteField(5)
    f3 = Poly.from_ints(F5, [0, 0, 0, 0, -1, 1])
    assert squarefree_part(f3) == Poly.from_ints(F5, [0, -1, 1])


def test_squarefree_part_divides_and_is_coprime_with_derivative():
    rng = random.Random(11)
    for field in (QQ, FiniteField(5), FiniteField(3, 2)):
        for _ in range(40):
            coeffs = [field.random_element(rng) for _ in range(rng.randint(1, 5))] + [field.one]
            f = Poly.make(field, coeffs)
            if f.degree < 1:
                continue
            s = squarefree_part(f)
            assert (f % s).is_zero()
            assert gcd(s, s.derivative()).degree == 0


def test_factor_examples():
    F7 = FiniteField(7)
    _, facs = factor(Poly.from_ints(F7, [-2, 0, 1]))
    roots = sorted(F7.neg(g.coeffs[0]) for g, _ in facs)
    assert roots == [3, 4]
    F5 = FiniteField(5)
    _, facs5 = factor(Poly.from_ints(F5, [-2, 0, 1]))
    assert len(facs5) == 1 and facs5[0][0].degree == 2
    _, facsq = factor(Poly.from_ints(QQ, [-1, 0, 1]))
    assert [g.coeffs for g, _ in facsq] == [
        Poly.from_ints(QQ, [-1, 1]).coeffs,
        Poly.from_ints(QQ, [1, 1]).coeffs,
    ]


def test_factor_unsupported_fields():
    nf = NumberField((-2, 0, 1))
    with pytest.raises(UnsupportedField):
        factor(Poly.make(nf, [nf.one, nf.one]))
    ff = FunctionField(QQ)
    with pytest.raises(UnsupportedField):
        factor(Poly.make(ff, [ff.one, ff.one]))


def test_factor_reexpand_random():
    """factor then re-expand equals the input, 500 random polynomials."""
    rng = random.Random(23)
    count_gf = 0
    for q, l in ((5, 1), (7, 1), (2, 1), (3, 2), (13, 1)):
        F = FiniteField(q, l)
        for _ in range(80):
            deg = rng.randint(1, 8)
            coeffs = [F.random_element(rng) for _ in range(deg)] + [
                F.random_element(rng)
            ]
            f = Poly.make(F, coeffs)
            if f.degree < 1:
                continue
            lead, facs = factor(f)
            assert expand(lead, facs, F) == f
            for g, _ in facs:
                assert g.lc() == F.one
            count_gf += 1
    count_q = 0
    while count_q < 150:
        deg = rng.randint(1, 6)
        coeffs = [QQ.random_element(rng, 5) for _ in range(deg)] + [QQ.random_element(rng, 3)]
        f = Poly.make(QQ, coeffs)
        if f.degree < 1:
            continue
        lead, facs = factor(f)
        assert expand(lead, facs, QQ) == f
        count_q += 1
    assert count_gf + count_q >= 500


def test_factor_rational_products_of_knowns():
    # deliberate multi-factor products with multiplicities
    f = Poly.from_ints(QQ, [2, 1]) * Poly.from_ints(QQ, [2, 1]) * Poly.from_ints(QQ, [-1, 0, 3])
    lead, facs = factor(f)
    assert expand(lead, facs, QQ) == f
    degs = sorted((g.degree, e) for g, e in facs)
    assert degs == [(1, 2), (2, 1)]


def test_is_irreducible_over_Q():
    assert is_irreducible_over_Q(Poly.from_ints(QQ, [-2, 0, 1]))
    assert not is_irreducible_over_Q(Poly.from_ints(QQ, [-1, 0, 1]))
    assert is_irreducible_over_Q(Poly.from_ints(QQ, [1, 1, 1, 1, 1]))  # 5th cyclotomic


def test_cyclotomic_polynomials():
    assert cyclotomic_ints(1) == (-1, 1)
    assert cyclotomic_ints(4) == (1, 0, 1)
    assert cyclotomic_ints(6) == (1, -1, 1)
    assert cyclotomic_ints(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_finite_order_examples():
    assert cyclotomic_finite_order(Poly.from_ints(QQ, [-1, 1]), 3) == 1
    assert cyclotomic_finite_order(Poly.from_ints(QQ, [1, 0, 1]), 2) == 4
    assert cyclotomic_finite_order(Poly.from_ints(QQ, [-2, 1]), 4) is None
    # (X-1)(X^2+X+1): orders 1 and 3
    f = Poly.from_ints(QQ, [-1, 1]) * Poly.from_ints(QQ, [1, 1, 1])
    assert cyclotomic_finite_order(f, 2) == 3


def test_resultant_and_discriminant():
    f = Poly.from_ints(QQ, [-2, 0, 1])
    d = discriminant(f)
    assert d == QQ.from_int(8)
    g = Poly.from_ints(QQ, [-1, 1])
    h = Poly.from_ints(QQ, [1, 1])
    # res(X-1, X+1) = value of X+1 at 1 = 2 up to sign conventions
    r = resultant(g, h)
    assert r in (QQ.from_int(2), QQ.from_int(-2))
    # shared root means resultant zero
    assert resultant(f, Poly.from_ints(QQ, [-2, 0, 1])) == QQ.zero


def test_poly_divmod_and_gcd():
    F = FiniteField(7)
    f = Poly.from_ints(F, [1, 2, 3, 1])
    g = Poly.from_ints(F, [2, 1])
    q, r = divmod(f, g)
    assert q * g + r == f
    a = Poly.from_ints(F, [-1, 1]) * Poly.from_ints(F, [3, 1])
    b = Poly.from_ints(F, [-1, 1]) * Poly.from_ints(F, [5, 1])
    assert gcd(a, b) == Poly.from_ints(F, [-1, 1])
