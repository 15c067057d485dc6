"""Congruence data selection, reduction maps, presentations, kernels."""

import random
from fractions import Fraction

import pytest

from nilmat.config import DEFAULT
from nilmat.congruence import (
    apply_congruence,
    apply_congruence_group,
    denominator_set,
    finite_image_presentation,
    kernel_is_central,
    kernel_normal_generators,
    select_modulus,
)
from nilmat.errors import CapExceeded, NoPrimeInRange, UnsupportedField
from nilmat.fields import QQ, FiniteField, FunctionField, NumberField, reduce_mod
from nilmat.groups import GroupSpec
from nilmat.linalg import Matrix
from nilmat.poly import Poly, resultant


def test_denominator_set_examples():
    G = GroupSpec(QQ, [Matrix.make(QQ, [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(3)]])])
    pi = denominator_set(G)
    assert 2 in pi and 3 in pi
    G2 = GroupSpec(QQ, [Matrix.from_ints(QQ, [[0, -1], [1, 0]])])
    assert denominator_set(G2) == ()
    nf = NumberField((-2, 0, 1))
    entry = nf.parse(["1/3", "1/3"])  # (1 + sqrt2)/3
    G3 = GroupSpec(nf, [Matrix.make(nf, [[entry, nf.zero], [nf.zero, nf.one]])])
    assert 3 in denominator_set(G3)


def test_denominator_set_function_field():
    ff = FunctionField(QQ)
    x = ff.x()
    e = ff.inv(x)  # 1/X
    G = GroupSpec(ff, [Matrix.make(ff, [[e, ff.zero], [ff.zero, ff.one]])])
    pi = denominator_set(G)
    assert any(len(f) == 2 for f in pi)  # the factor X


def test_select_modulus_rational():
    d31 = Matrix.from_ints(QQ, [[3, 0], [0, 1]])
    swap = Matrix.from_ints(QQ, [[0, 1], [1, 0]])
    cd = select_modulus(GroupSpec(QQ, [d31, swap]))
    assert cd.p == 5
    assert cd.checks["odd"] and cd.checks["coprime_to_denominators"]
    assert cd.checks["minpoly_squarefree_mod_p"]
    # re-verify the checks independently: resultants nonzero mod p
    for g in (d31, swap):
        from nilmat.linalg import minimal_polynomial

        h = minimal_polynomial(g)
        target = FiniteField(cd.p)
        hbar = Poly.make(target, [reduce_mod(c, cd.p) for c in h.coeffs])
        assert not target.is_zero(resultant(hbar, hbar.derivative()))


def test_select_modulus_respects_pi_and_override():
    G = GroupSpec(QQ, [Matrix.diagonal(QQ, (Fraction(1, 3), Fraction(5)))])
    cd = select_modulus(G)
    # 3 and 5 divide denominators; mod 7 the eigenvalues 1/3 and 5 collide
    assert cd.p == 11
    cd11 = select_modulus(G, DEFAULT.with_(prime_override=11))
    assert cd11.p == 11
    for bad in (3, 7):
        with pytest.raises(NoPrimeInRange):
            select_modulus(G, DEFAULT.with_(prime_override=bad))


def test_select_modulus_numberfield():
    nf = NumberField((-2, 0, 1))
    G = GroupSpec(nf, [Matrix.diagonal(nf, (nf.gen(), nf.one))])
    cd7 = select_modulus(G, DEFAULT.with_(prime_override=7))
    assert cd7.target.q == 7 and cd7.alpha_image == 3  # least root of X^2 - 2 mod 7
    cd5 = select_modulus(G, DEFAULT.with_(prime_override=5))
    assert cd5.target.l == 2 and cd5.target.q == 25
    img = apply_congruence(G.gens[0], cd5)
    # the image of sqrt2 squares to 2 in GF(25)
    a = img.rows[0][0]
    assert cd5.target.mul(a, a) == cd5.target.from_int(2)


def test_select_modulus_function_field_rational_base():
    ff = FunctionField(QQ)
    x = ff.x()
    G = GroupSpec(ff, [Matrix.make(ff, [[x, ff.zero], [ff.zero, ff.one]])])
    cd = select_modulus(G)
    # X itself divides the inverse denominators, so 0 is not admissible
    assert cd.eval_point != Fraction(0)
    img = apply_congruence(G.gens[0], cd)
    assert img.field.q == cd.p


def test_select_modulus_unramified_check_reverified():
    nf = NumberField((-2, 0, 1))
    G = GroupSpec(nf, [Matrix.diagonal(nf, (nf.gen(), nf.one))])
    cd = select_modulus(G)
    assert cd.checks["unramified"]
    fq = Poly.from_ints(QQ, nf.minpoly)
    disc = resultant(fq, fq.derivative())
    assert disc.numerator % cd.p != 0


def test_function_field_finite_base_extension_point():
    """When every base point is a denominator root, the evaluation point
    moves to an extension field."""
    ff = FunctionField(FiniteField(2))
    x = ff.x()
    x1 = ff.add(x, ff.one)
    # entries with denominators X and X + 1 exclude both GF(2) points
    g = Matrix.make(ff, [[ff.inv(x), ff.zero], [ff.zero, ff.inv(x1)]])
    G = GroupSpec(ff, [g])
    cd = select_modulus(G)
    assert cd.eval_target.q == 4
    img = apply_congruence(g, cd)
    assert img.field.q == 4
    # evaluation stays a homomorphism into GL(2, 4)
    assert apply_congruence(g * g, cd) == img * img


def test_apply_congruence_examples():
    m = Matrix.make(QQ, [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(1)]])
    G = GroupSpec(QQ, [m])
    cd = select_modulus(G, DEFAULT.with_(prime_override=5))
    assert apply_congruence(m, cd).rows == ((3, 0), (0, 1))
    assert apply_congruence(Matrix.identity(QQ, 2), cd).is_identity()
    nf = NumberField((-2, 0, 1))
    Gn = GroupSpec(nf, [Matrix.diagonal(nf, (nf.gen(), nf.one))])
    cdn = select_modulus(Gn, DEFAULT.with_(prime_override=7))
    assert apply_congruence(Gn.gens[0], cdn).rows == ((3, 0), (0, 1))


def test_apply_congruence_is_homomorphism():
    rng = random.Random(31)
    G = GroupSpec(QQ, [Matrix.from_ints(QQ, [[3, 0], [0, 1]])])
    cd = select_modulus(G)
    n = 2
    for _ in range(50):
        a = Matrix.make(QQ, [[Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3, 4, 6])) for _ in range(n)] for _ in range(n)])
        b = Matrix.make(QQ, [[Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3, 4, 6])) for _ in range(n)] for _ in range(n)])
        if any(x.denominator % cd.p == 0 for row in (a * b).rows for x in row):
            continue
        assert apply_congruence(a, cd) * apply_congruence(b, cd) == apply_congruence(a * b, cd)
    assert apply_congruence(Matrix.identity(QQ, n), cd).is_identity()


def test_finite_image_presentation_examples():
    F5 = FiniteField(5)
    pres = finite_image_presentation([Matrix.from_ints(F5, [[2]])], 10**6)
    assert pres.image_order == 4
    assert pres.relators == (((0, 1),) * 4,)
    trivial = finite_image_presentation([Matrix.identity(F5, 1)], 10**6)
    assert trivial.image_order == 1
    # every relator evaluates to the identity in the image
    rot = Matrix.from_ints(F5, [[0, 4], [1, 0]])
    refl = Matrix.from_ints(F5, [[1, 0], [0, 4]])
    img = GroupSpec(F5, [rot, refl])
    pres8 = finite_image_presentation(list(img.gens), 10**6)
    assert pres8.image_order == 8
    assert len(pres8.relators) >= 2
    for rel in pres8.relators:
        assert img.evaluate(rel).is_identity()
    assert len(pres8.transversal) == 8


def test_finite_image_presentation_cap():
    F7 = FiniteField(7)
    with pytest.raises(CapExceeded):
        finite_image_presentation([Matrix.from_ints(F7, [[3]])], 3)


def test_kernel_normal_generators_examples():
    G = GroupSpec(QQ, [Matrix.from_ints(QQ, [[2]])])
    cd = select_modulus(G, DEFAULT.with_(prime_override=5))
    img = apply_congruence_group(G, cd)
    pres = finite_image_presentation(list(img.gens), 10**6)
    kg = kernel_normal_generators(G, pres)
    assert [z.mat.rows for z in kg] == [((Fraction(16),),)]
    # D8 with integer entries: the mod-5 image is faithful, kernel trivial
    r = Matrix.from_ints(QQ, [[0, -1], [1, 0]])
    s = Matrix.from_ints(QQ, [[1, 0], [0, -1]])
    D8 = GroupSpec(QQ, [r, s])
    cd8 = select_modulus(D8)
    img8 = apply_congruence_group(D8, cd8)
    pres8 = finite_image_presentation(list(img8.gens), 10**6)
    assert pres8.image_order == 8
    for z in kernel_normal_generators(D8, pres8):
        assert z.mat.is_identity()


def test_kernel_is_central_examples():
    d31 = Matrix.from_ints(QQ, [[3, 0], [0, 1]])
    swap = Matrix.from_ints(QQ, [[0, 1], [1, 0]])
    G = GroupSpec(QQ, [d31, swap])
    cd = select_modulus(G)
    img = apply_congruence_group(G, cd)
    pres = finite_image_presentation(list(img.gens), 10**6)
    assert pres.image_order == 32
    kg = kernel_normal_generators(G, pres)
    ok, bad = kernel_is_central(G, kg)
    assert not ok
    z, gi = bad
    assert not (z.mat * G.gens[gi] == G.gens[gi] * z.mat)
    # abelian groups have central kernels by construction
    Ga = GroupSpec(QQ, [Matrix.from_ints(QQ, [[2]])])
    cda = select_modulus(Ga)
    presa = finite_image_presentation(list(apply_congruence_group(Ga, cda).gens), 10**6)
    oka, _ = kernel_is_central(Ga, kernel_normal_generators(Ga, presa))
    assert oka


def test_faithful_image_orders_on_finite_groups(ff_corpus):
    """For rational finite groups the congruence image has the same order;
    checked here on a couple of cases, in bulk by the acceptance suite."""
    r = Matrix.from_ints(QQ, [[0, -1], [1, 0]])
    s = Matrix.from_ints(QQ, [[1, 0], [0, -1]])
    for gens, order in (([r, s], 8), ([r], 4)):
        G = GroupSpec(QQ, gens)
        cd = select_modulus(G)
        img = apply_congruence_group(G, cd)
        pres = finite_image_presentation(list(img.gens), 10**6)
        assert pres.image_order == order


def test_select_modulus_rejects_finite_fields():
    F5 = FiniteField(5)
    with pytest.raises(UnsupportedField):
        select_modulus(GroupSpec(F5, [Matrix.identity(F5, 2)]))


def test_apply_congruence_stale_data_raises():
    from nilmat.errors import DenominatorDivisible

    G = GroupSpec(QQ, [Matrix.from_ints(QQ, [[3, 0], [0, 1]])])
    cd = select_modulus(G, DEFAULT.with_(prime_override=5))
    stale = Matrix.make(QQ, [[Fraction(1, 5), Fraction(0)], [Fraction(0), Fraction(1)]])
    with pytest.raises(DenominatorDivisible):
        apply_congruence(stale, cd)
