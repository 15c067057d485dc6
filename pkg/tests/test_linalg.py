"""Exact linear algebra."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilmat.errors import NotInvariant, Singular
from nilmat.fields import QQ, FiniteField, NumberField
from nilmat.linalg import (
    Matrix,
    Subspace,
    fixed_space,
    inverse,
    kron,
    minimal_polynomial,
    nullspace,
    poly_at_matrix,
    quotient_action,
    rref,
    spin_basis,
)
from nilmat.poly import Poly


def random_invertible(field, n, rng, size=3):
    while True:
        m = Matrix.make(field, [[field.random_element(rng, size) for _ in range(n)] for _ in range(n)])
        try:
            inverse(m)
            return m
        except Singular:
            continue


FIELDS = [QQ, FiniteField(5), FiniteField(3, 2), NumberField((-2, 0, 1))]


def test_inverse_examples():
    assert inverse(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)
    m = Matrix.from_ints(QQ, [[1, 1], [0, 1]])
    assert inverse(m) == Matrix.from_ints(QQ, [[1, -1], [0, 1]])
    with pytest.raises(Singular):
        inverse(Matrix.from_ints(QQ, [[1, 1], [1, 1]]))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name())
def test_inverse_random(field):
    rng = random.Random(5)
    for _ in range(15):
        m = random_invertible(field, 3, rng)
        assert (m * inverse(m)).is_identity()


def test_minimal_polynomial_examples():
    assert minimal_polynomial(Matrix.identity(QQ, 3)) == Poly.from_ints(QQ, [-1, 1])
    m = Matrix.from_ints(QQ, [[1, 1], [0, 1]])
    assert minimal_polynomial(m) == Poly.from_ints(QQ, [1, -2, 1])
    rot = Matrix.from_ints(QQ, [[0, -1], [1, 0]])
    f = minimal_polynomial(rot)
    assert f == Poly.from_ints(QQ, [1, 0, 1])
    assert poly_at_matrix(f, rot).rows == Matrix.zero(QQ, 2).rows


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name())
def test_minimal_polynomial_annihilates(field):
    """200 random matrices per field kind: minpoly evaluates to zero and
    divides the characteristic-degree bound."""
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(1, 3)
        m = Matrix.make(field, [[field.random_element(rng, 3) for _ in range(n)] for _ in range(n)])
        f = minimal_polynomial(m)
        assert f.degree >= 1 and f.lc() == field.one
        assert poly_at_matrix(f, m).rows == Matrix.zero(field, n).rows
        assert f.degree <= n


def test_fixed_space_examples():
    e12 = Matrix.from_ints(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    e23 = Matrix.from_ints(QQ, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    w = fixed_space([e12, e23])
    assert w.dim == 1 and w.basis[0] == (QQ.one, QQ.zero, QQ.zero)
    a = Matrix.from_ints(QQ, [[1, 1], [0, 1]])
    b = Matrix.from_ints(QQ, [[1, 0], [1, 1]])
    assert fixed_space([a, b]).dim == 0
    assert fixed_space([Matrix.identity(QQ, 4)]).dim == 4


def test_fixed_space_dimension_matches_rank():
    rng = random.Random(3)
    F = FiniteField(5)
    for _ in range(30):
        gens = [
            Matrix.make(F, [[F.random_element(rng) for _ in range(3)] for _ in range(3)])
            for _ in range(2)
        ]
        w = fixed_space(gens)
        stacked = []
        ident = Matrix.identity(F, 3)
        for g in gens:
            stacked.extend(list(r) for r in (g - ident).rows)
        _, pivots = rref(F, stacked)
        assert w.dim == 3 - len(pivots)
        for row in w.basis:
            for g in gens:
                assert g.apply(row) == row


def test_quotient_action_examples():
    gens = [Matrix.from_ints(QQ, [[1, 1], [0, 1]])]
    w = Subspace.from_vectors(QQ, 2, [(QQ.one, QQ.zero)])
    q = quotient_action(gens, w)
    assert len(q) == 1 and q[0].rows == ((QQ.one,),)
    d12 = Matrix.from_ints(QQ, [[1, 0], [0, 2]])
    w2 = Subspace.from_vectors(QQ, 2, [(QQ.zero, QQ.one)])
    q2 = quotient_action([d12], w2)
    assert q2[0].rows == ((QQ.one,),)
    w3 = Subspace.from_vectors(QQ, 2, [(QQ.one, QQ.one)])
    with pytest.raises(NotInvariant):
        quotient_action([d12], w3)
    assert quotient_action(gens, Subspace.zero(QQ, 2)) == gens


def test_quotient_action_is_functorial():
    rng = random.Random(9)
    F = FiniteField(7)
    u = Matrix.from_ints(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    v = Matrix.from_ints(F, [[1, 0, 2], [0, 1, 1], [0, 0, 1]])
    w = fixed_space([u, v])
    qu, qv = quotient_action([u, v], w)
    (qprod,) = quotient_action([u * v], w)
    assert qu * qv == qprod


def test_spin_basis_examples():
    assert spin_basis([Matrix.identity(QQ, 3)]).dim == 1
    F5 = FiniteField(5)
    img = [Matrix.from_ints(F5, [[2, 0], [0, 1]]), Matrix.from_ints(F5, [[0, 1], [1, 0]])]
    assert spin_basis(img).dim == 4
    d = Matrix.diagonal(QQ, (QQ.from_int(1), QQ.from_int(2)))
    assert spin_basis([d]).dim == 2


def test_spin_basis_words_reproduce_matrices():
    F5 = FiniteField(5)
    gens = [Matrix.from_ints(F5, [[2, 0], [0, 1]]), Matrix.from_ints(F5, [[0, 1], [1, 0]])]
    basis = spin_basis(gens)
    assert basis.dim <= 4
    for mat, word in zip(basis.mats, basis.words):
        acc = Matrix.identity(F5, 2)
        for i in word:
            acc = acc * gens[i]
        assert acc == mat
    # coordinates solve correctly
    x = gens[0] * gens[1] * gens[0]
    coords = basis.coords(x)
    acc = Matrix.zero(F5, 2)
    for c, b in zip(coords, basis.mats):
        acc = acc + b * c
    assert acc == x


def test_kron_examples():
    assert kron(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)
    d = Matrix.diagonal(QQ, (QQ.from_int(3), QQ.from_int(5)))
    k = kron(d, Matrix.identity(QQ, 2))
    assert k == Matrix.diagonal(QQ, tuple(QQ.from_int(v) for v in (3, 3, 5, 5)))


@given(st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=30, deadline=None)
def test_kron_mixed_product(a0, b0):
    rng = random.Random(a0 * 17 + b0)
    F = FiniteField(7)
    mats = [
        Matrix.make(F, [[F.random_element(rng) for _ in range(2)] for _ in range(2)])
        for _ in range(4)
    ]
    a, b, c, d = mats
    assert kron(a, b) * kron(c, d) == kron(a * c, b * d)


def test_nullspace_and_rref_rational_blowup_control():
    rows = [
        [QQ.parse("1/2"), QQ.parse("1/3"), QQ.parse("1")],
        [QQ.parse("2"), QQ.parse("4/3"), QQ.parse("4")],
    ]
    red, pivots = rref(QQ, rows)
    assert pivots == [0]
    ns = nullspace(QQ, rows, 3)
    assert len(ns) == 2
    for v in ns:
        for row in rows:
            acc = QQ.zero
            for a, b in zip(row, v):
                acc += a * b
            assert acc == 0
