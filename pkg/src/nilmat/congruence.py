"""Congruence homomorphisms onto matrix groups over finite fields.

A validated modulus reduces GL(n, D_pi) onto GL(n, GF(p^l)) with a kernel
that is torsion-free in characteristic zero, so a finite group maps
injectively and relator preimages generate the kernel.  The checks bundled
in CongruenceData are exactly the ones that buy that guarantee: p odd,
coprime to the denominators, unramified for number fields, and keeping the
generators' minimal polynomials squarefree so the image stays semisimple.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .config import DEFAULT, Config
from .errors import CapExceeded, DenominatorDivisible, NoPrimeInRange, UnsupportedField
from .fields import (
    QQ,
    FiniteField,
    FunctionField,
    NumberField,
    RationalField,
    reduce_mod,
)
from .groups import Elt, GroupSpec, word_inverse, word_mul
from .linalg import Matrix, inverse, minimal_polynomial
from .numth import factorint, odd_primes
from .poly import Poly, factor, gcd as poly_gcd, resultant


@dataclass(frozen=True)
class CongruenceData:
    source: object                 # Field
    pi: tuple                      # denominator data (primes, or irreducible polys)
    p: int                         # reduction prime (char of the target)
    target: object                 # finite Field
    alpha_image: object = None     # root of the defining polynomial in the target
    eval_point: object = None      # function-field substitution point
    pi_after_eval: tuple = ()      # second-stage denominators for P(X), P = Q
    eval_target: object = None     # base field hosting the evaluation point
    checks: dict = dfield(default_factory=dict)

    def to_json(self):
        out = {
            "source": self.source.to_json(),
            "p": self.p,
            "target": self.target.to_json(),
            "checks": dict(self.checks),
        }
        if isinstance(self.source, FunctionField):
            out["pi"] = [[self.source.base.format(c) for c in f] for f in self.pi]
            out["eval_point"] = self.eval_target.format(self.eval_point)
            out["eval_target"] = self.eval_target.to_json()
            out["pi_after_eval"] = [str(q) for q in self.pi_after_eval]
        else:
            out["pi"] = [str(q) for q in self.pi]
        if self.alpha_image is not None:
            out["alpha_image"] = self.target.format(self.alpha_image)
        return out


def _rational_denominator_primes(mats):
    dens = set()
    for m in mats:
        for row in m.rows:
            for c in row:
                if c.denominator != 1:
                    dens.add(c.denominator)
    out = set()
    for d in dens:
        out.update(factorint(d))
    return tuple(sorted(out))


def _numberfield_denominator_primes(field, mats):
    out = set()
    for m in mats:
        for row in m.rows:
            for c in row:
                z = field.denominator_clearing(c)
                if z > 1:
                    out.update(factorint(z))
    return tuple(sorted(out))


def _functionfield_denominator_factors(field, mats):
    """Monic irreducible factors of all entry denominators."""
    base = field.base
    seen = set()
    out = []
    for m in mats:
        for row in m.rows:
            for c in row:
                den = c[1]
                if len(den) <= 1:
                    continue
                den_poly = Poly.make(base, den)
                if isinstance(base, RationalField):
                    _, facs = factor(den_poly)
                else:
                    _, facs = factor(den_poly)
                for g, _ in facs:
                    key = g.coeffs
                    if key not in seen:
                        seen.add(key)
                        out.append(g.coeffs)
    out.sort(key=lambda cs: (len(cs), cs))
    return tuple(out)


def denominator_set(G: GroupSpec):
    """Denominator data of the generators and their inverses."""
    mats = list(G.gens) + list(G.invs)
    F = G.field
    if isinstance(F, RationalField):
        return _rational_denominator_primes(mats)
    if isinstance(F, NumberField):
        return _numberfield_denominator_primes(F, mats)
    if isinstance(F, FunctionField):
        return _functionfield_denominator_factors(F, mats)
    raise UnsupportedField("denominator analysis applies to infinite coefficient fields")


def _minpoly_stays_squarefree(h: Poly, reduce_coeff, target):
    """Whether the coefficient-wise reduction of the squarefree h stays squarefree."""
    try:
        hbar = Poly.make(target, [reduce_coeff(c) for c in h.coeffs])
    except DenominatorDivisible:
        return False
    if hbar.degree != h.degree:
        return False
    return poly_gcd(hbar, hbar.derivative()).degree == 0


def _try_prime_rational(G, pi, minpolys, p):
    if p % 2 == 0 or any(p == q for q in pi):
        return None
    target = FiniteField(p)
    if not all(
        _minpoly_stays_squarefree(h, lambda c: reduce_mod(c, p), target) for h in minpolys
    ):
        return None
    return CongruenceData(
        source=G.field,
        pi=pi,
        p=p,
        target=target,
        checks={
            "odd": True,
            "coprime_to_denominators": True,
            "minpoly_squarefree_mod_p": True,
            "p_gt_n": p > G.degree,
        },
    )


def _select_modulus_rational(G, config):
    pi = denominator_set(G)
    n = G.degree
    minpolys = [minimal_polynomial(g) for g in G.gens]
    for require_gt_n in ([True, False] if config.prefer_p_gt_n else [False]):
        for p in odd_primes(3):
            if p > config.prime_cap:
                break
            if require_gt_n and p <= n:
                continue
            cd = _try_prime_rational(G, pi, minpolys, p)
            if cd is not None:
                return cd
    raise NoPrimeInRange(f"no valid odd prime below {config.prime_cap}")


def _frobenius_roots(target: FiniteField, factor_poly: Poly):
    """All roots of an irreducible factor inside GF(p^l), lexicographically sorted
    by coefficient vector."""
    l = target.l
    if l == 1:
        return [target.neg(factor_poly.coeffs[0])]
    root = target.from_coeffs([0, 1])
    roots = []
    cur = root
    for _ in range(l):
        roots.append(cur)
        cur = target.frobenius(cur)
    roots.sort(key=lambda a: tuple(target.digits(a)))
    return roots


def _nf_reduction_map(target, aimg, p):
    """Coefficient-tuple reduction Q(a) -> GF(p^l) at the chosen root."""

    def red(c):
        acc = target.zero
        for coeff in reversed(c):
            cc = reduce_mod(coeff, p)
            if target.l > 1:
                cc = target.from_coeffs([cc])
            acc = target.add(target.mul(acc, aimg), cc)
        return acc

    return red


def _try_prime_numberfield(G, pi, minpolys, disc_num, p):
    F = G.field
    if p % 2 == 0 or any(p == q for q in pi) or disc_num % p == 0:
        return None
    Fp = FiniteField(p)
    fbar = Poly.from_ints(Fp, F.minpoly)
    _, facs = factor(fbar)
    facs = sorted((g for g, _ in facs), key=lambda g: (g.degree, g.coeffs))
    l = facs[0].degree
    if l == 1:
        # least root among the linear factors
        target = Fp
        aimg = min(Fp.neg(g.coeffs[0]) for g in facs if g.degree == 1)
    else:
        chosen = facs[0]
        target = FiniteField(p, l, tuple(int(c) for c in chosen.coeffs))
        aimg = _frobenius_roots(target, chosen)[0]
    red = _nf_reduction_map(target, aimg, p)
    if not all(_minpoly_stays_squarefree(h, red, target) for h in minpolys):
        return None
    return CongruenceData(
        source=F,
        pi=pi,
        p=p,
        target=target,
        alpha_image=aimg,
        checks={
            "odd": True,
            "coprime_to_denominators": True,
            "unramified": True,
            "minpoly_squarefree_mod_p": True,
            "p_gt_n": p > G.degree,
        },
    )


def _select_modulus_numberfield(G, config):
    F = G.field
    pi = denominator_set(G)
    n = G.degree
    minpolys = [minimal_polynomial(g) for g in G.gens]
    fq = Poly.from_ints(QQ, F.minpoly)
    disc = resultant(fq, fq.derivative())
    disc_num = abs(disc.numerator)
    for require_gt_n in ([True, False] if config.prefer_p_gt_n else [False]):
        for p in odd_primes(3):
            if p > config.prime_cap:
                break
            if require_gt_n and p <= n:
                continue
            cd = _try_prime_numberfield(G, pi, minpolys, disc_num, p)
            if cd is not None:
                return cd
    raise NoPrimeInRange(f"no valid odd prime below {config.prime_cap}")


def _ff_candidate_points(base, config, seed=0):
    """Evaluation point candidates in a canonical order; finite bases extend
    to GF(p^(l*k)) when the base is exhausted."""
    if isinstance(base, RationalField):
        k = 0
        while k <= config.eval_cap:
            yield base, Fraction(k)
            k += 1
        return
    for a in base.elements():
        yield base, a
    k = 2
    while True:
        ext = FiniteField(base.p, base.l * k, seed=seed)
        for a in ext.elements():
            yield ext, a
        k += 1


def _embedding(base: FiniteField, ext: FiniteField):
    """Field embedding GF(p^l) -> GF(p^(l*k)) determined by the least root of
    the base modulus in the extension."""
    if base.l == 1:
        return lambda a, ext=ext: ext.from_coeffs([a])
    mod_poly = Poly.from_ints(ext, base.modulus)
    _, facs = factor(mod_poly)
    roots = sorted(
        (ext.neg(g.coeffs[0]) for g, _ in facs if g.degree == 1),
        key=lambda a: tuple(ext.digits(a)),
    )
    if not roots:
        raise ArithmeticError("base modulus has no root in the extension")
    r = roots[0]

    def emb(a, base=base, ext=ext, r=r):
        acc = ext.zero
        for c in reversed(base.digits(a)):
            acc = ext.add(ext.mul(acc, r), ext.from_coeffs([c]))
        return acc

    return emb


def _evaluate_ff_matrix(field: FunctionField, m: Matrix, point_field, point):
    base = field.base
    if point_field is base:
        conv = lambda v: v
    else:
        emb = _embedding(base, point_field)
        conv = emb

    def ev(c):
        num, den = c
        B = point_field
        acc_n = B.zero
        for coeff in reversed(num):
            acc_n = B.add(B.mul(acc_n, point), conv(coeff))
        acc_d = B.zero
        for coeff in reversed(den):
            acc_d = B.add(B.mul(acc_d, point), conv(coeff))
        if B.is_zero(acc_d):
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return B.mul(acc_n, B.inv(acc_d))

    return Matrix.make(point_field, [[ev(c) for c in row] for row in m.rows])


def _evaluate_ff_matrix_rational(field: FunctionField, m: Matrix, point):
    def ev(c):
        num, den = c
        acc_n = Fraction(0)
        for coeff in reversed(num):
            acc_n = acc_n * point + coeff
        acc_d = Fraction(0)
        for coeff in reversed(den):
            acc_d = acc_d * point + coeff
        if acc_d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return acc_n / acc_d

    return Matrix.make(QQ, [[ev(c) for c in row] for row in m.rows])


def _select_modulus_functionfield(G, config):
    F = G.field
    base = F.base
    pi = denominator_set(G)
    pi_polys = [Poly.make(base, cs) for cs in pi]
    n = G.degree
    tried = 0
    fallback = None
    for point_field, a in _ff_candidate_points(base, config, seed=config.seed):
        tried += 1
        if tried > config.eval_cap:
            break
        # the point must not be a root of any denominator factor
        if isinstance(base, RationalField):
            if any(g.evaluate(a) == 0 for g in pi_polys):
                continue
            try:
                evaluated = [_evaluate_ff_matrix_rational(F, g, a) for g in G.gens]
            except ZeroDivisionError:
                continue
            Geval = GroupSpec(QQ, evaluated)
            try:
                if config.prime_override is not None:
                    inner = _validate_prime(Geval, config.prime_override, config)
                else:
                    inner = _select_modulus_rational(Geval, config)
            except NoPrimeInRange:
                continue
            return CongruenceData(
                source=F,
                pi=pi,
                p=inner.p,
                target=inner.target,
                eval_point=a,
                eval_target=QQ,
                pi_after_eval=inner.pi,
                checks=dict(inner.checks, evaluation_point_admissible=True),
            )
        else:
            if point_field is base:
                vanishes = any(base.is_zero(g.evaluate(a)) for g in pi_polys)
            else:
                emb = _embedding(base, point_field)
                vanishes = any(
                    point_field.is_zero(
                        Poly.make(point_field, [emb(c) for c in g.coeffs]).evaluate(a)
                    )
                    for g in pi_polys
                )
            if vanishes:
                continue
            try:
                evaluated = [_evaluate_ff_matrix(F, g, point_field, a) for g in G.gens]
            except ZeroDivisionError:
                continue
            semisimple = True
            for m in evaluated:
                h = minimal_polynomial(m)
                if poly_gcd(h, h.derivative()).degree != 0:
                    semisimple = False
                    break
            cd = CongruenceData(
                source=F,
                pi=pi,
                p=base.p,
                target=point_field,
                eval_point=a,
                eval_target=point_field,
                checks={"evaluation_point_admissible": True, "image_semisimple": semisimple},
            )
            # prefer a point keeping the generators semisimple; otherwise the
            # first admissible point still gives a valid evaluation
            if semisimple:
                return cd
            if fallback is None:
                fallback = cd
    if fallback is not None:
        return fallback
    raise NoPrimeInRange(f"no admissible evaluation data within {config.eval_cap} candidates")


def select_modulus(G: GroupSpec, config: Config = DEFAULT) -> CongruenceData:
    """Smallest valid reduction data for the group's coefficient field."""
    F = G.field
    if isinstance(F, FiniteField):
        raise UnsupportedField("finite fields need no reduction")
    if config.prime_override is not None and not isinstance(F, FunctionField):
        return _validate_prime(G, config.prime_override, config)
    if isinstance(F, RationalField):
        return _select_modulus_rational(G, config)
    if isinstance(F, NumberField):
        return _select_modulus_numberfield(G, config)
    if isinstance(F, FunctionField):
        return _select_modulus_functionfield(G, config)
    raise UnsupportedField(f"no reduction strategy for {F.name()}")


def _validate_prime(G, p, config):
    """Run the full check battery for a user-supplied prime."""
    F = G.field
    pi = denominator_set(G)
    minpolys = [minimal_polynomial(g) for g in G.gens]
    if isinstance(F, RationalField):
        cd = _try_prime_rational(G, pi, minpolys, p)
    elif isinstance(F, NumberField):
        fq = Poly.from_ints(QQ, F.minpoly)
        disc_num = abs(resultant(fq, fq.derivative()).numerator)
        cd = _try_prime_numberfield(G, pi, minpolys, disc_num, p)
    else:
        raise UnsupportedField("prime override applies to Q and number fields")
    if cd is None:
        raise NoPrimeInRange(f"prime {p} fails the validity checks")
    return cd


def apply_congruence(m: Matrix, cd: CongruenceData) -> Matrix:
    """Entrywise reduction of a matrix through the validated modulus."""
    F = cd.source
    target = cd.target
    if isinstance(F, RationalField):
        return Matrix.make(target, [[reduce_mod(c, cd.p) for c in row] for row in m.rows])
    if isinstance(F, NumberField):
        aimg = cd.alpha_image

        def red(c):
            acc = target.zero
            for coeff in reversed(c):
                cc = reduce_mod(coeff, cd.p)
                cc = cc if target.l == 1 else target.from_coeffs([cc])
                acc = target.add(target.mul(acc, aimg), cc)
            return acc

        return Matrix.make(target, [[red(c) for c in row] for row in m.rows])
    if isinstance(F, FunctionField):
        if isinstance(F.base, RationalField):
            evaluated = _evaluate_ff_matrix_rational(F, m, cd.eval_point)
            return Matrix.make(
                target, [[reduce_mod(c, cd.p) for c in row] for row in evaluated.rows]
            )
        return _evaluate_ff_matrix(F, m, cd.eval_target, cd.eval_point)
    raise UnsupportedField(f"no reduction for {F.name()}")


def apply_congruence_group(G: GroupSpec, cd: CongruenceData) -> GroupSpec:
    return GroupSpec(cd.target, [apply_congruence(g, cd) for g in G.gens])


# ---------------------------------------------------------------------------
# Cayley closure, presentations, kernels

@dataclass(frozen=True)
class PresentationData:
    n_gens: int
    relators: tuple      # Words over the generators
    transversal: dict    # image Matrix -> Word
    image_order: int


def finite_image_presentation(image_gens, cap, identity=None) -> PresentationData:
    """Breadth-first Cayley closure of the image with a spanning-tree
    transversal; one relator per non-tree edge."""
    if not image_gens:
        ident = identity
        if ident is None:
            raise ValueError("need generators or an explicit identity")
        return PresentationData(0, (), {ident: ()}, 1)
    F = image_gens[0].field
    ident = Matrix.identity(F, image_gens[0].n)
    inv_gens = [inverse(g) for g in image_gens]
    transversal = {ident: ()}
    order = [ident]
    relators = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        tv = transversal[v]
        qi += 1
        for i, g in enumerate(image_gens):
            w = v * g
            if w in transversal:
                rel = word_mul(tv, ((i, 1),), word_inverse(transversal[w]))
                if rel:
                    relators.append(rel)
            else:
                if len(order) + 1 > cap:
                    raise CapExceeded(cap, "Cayley closure")
                transversal[w] = word_mul(tv, ((i, 1),))
                order.append(w)
    return PresentationData(len(image_gens), tuple(relators), transversal, len(order))


def kernel_normal_generators(G: GroupSpec, pres: PresentationData):
    """Relator evaluations over the source generators: normal generators of
    the congruence kernel."""
    out = []
    for rel in pres.relators:
        out.append(Elt(G.evaluate(rel), rel))
    return out


def kernel_is_central(G: GroupSpec, kernel_elts):
    """True when every kernel normal generator commutes with every generator;
    otherwise the first offending pair."""
    for z in kernel_elts:
        for i, g in enumerate(G.gens):
            if not (z.mat * g == g * z.mat):
                return False, (z, i)
    return True, None


def schreier_kernel_generators(source_elts, image_mats, cap):
    """Kernel generators of the map source_elts[i] -> image_mats[i], assumed
    a homomorphism onto the group the images generate.

    Returns (kernel Elts, image order, transversal words).  Words compose
    through the BFS transversal, so each kernel element lifts to the
    reference generators.
    """
    if not image_mats:
        return [], 1, ((),)
    F = image_mats[0].field
    ident = Matrix.identity(F, image_mats[0].n)
    transversal = {ident: ()}
    order = [ident]
    schreier_words = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        tv = transversal[v]
        qi += 1
        for i, g in enumerate(image_mats):
            w = v * g
            if w in transversal:
                word = word_mul(tv, ((i, 1),), word_inverse(transversal[w]))
                if word:
                    schreier_words.append(word)
            else:
                if len(order) + 1 > cap:
                    raise CapExceeded(cap, "Schreier enumeration")
                transversal[w] = word_mul(tv, ((i, 1),))
                order.append(w)
    # evaluate the schreier words over the source elements
    out = []
    seen = set()
    for word in schreier_words:
        mat = None
        elt_word = ()
        for i, e in word:
            piece = source_elts[i] if e == 1 else source_elts[i].inv()
            mat = piece.mat if mat is None else mat * piece.mat
            elt_word = word_mul(elt_word, piece.word)
        if mat is None:
            continue
        if mat.is_identity():
            continue
        if mat not in seen:
            seen.add(mat)
            out.append(Elt(mat, elt_word))
    return out, len(order), tuple(transversal[v] for v in order)
