"""Jordan splitting and unipotency machinery.

The multiplicative decomposition g = s u (s diagonalizable, u unipotent,
commuting) is computed by the classical Newton iteration on the squarefree
part of the minimal polynomial; over the perfect fields supported here the
components stay over the ground field.  Char-p function fields are refused,
the top-level pipeline reduces those by evaluation first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT, Config
from .errors import (
    CapExceeded,
    ImperfectField,
    NotNilpotentSignal,
    NotUnipotent,
    NotUnipotentGenerator,
)
from .fields import FiniteField, FunctionField, NumberField
from .groups import GroupSpec
from .linalg import (
    Matrix,
    Span,
    Subspace,
    fixed_space,
    inverse,
    minimal_polynomial,
    poly_at_matrix,
    quotient_action,
)
from .poly import Poly, cyclotomic_finite_order, squarefree_part
from .witness import WItem, Witness


@dataclass(frozen=True)
class JordanPair:
    s: Matrix
    u: Matrix


@dataclass(frozen=True)
class UnipotentCert:
    flag: tuple          # descending subspaces V = V_0 > V_1 > ... > V_l = 0
    T: Matrix            # T g T^-1 is upper unitriangular for every generator

    @property
    def length(self):
        return len(self.flag) - 1


@dataclass(frozen=True)
class SplitResult:
    gens_s: tuple
    gens_u: tuple
    cert_u: UnipotentCert
    commute: bool


def _check_perfect(field):
    if isinstance(field, FunctionField) and field.characteristic() > 0:
        raise ImperfectField("char-p function fields are not perfect; reduce by evaluation first")


def is_unipotent_matrix(g: Matrix) -> bool:
    F = g.field
    n = g.n
    return ((g - Matrix.identity(F, n)) ** n).rows == Matrix.zero(F, n).rows


def jordan(g: Matrix) -> JordanPair:
    """Unique commuting factorization g = s u with s diagonalizable, u unipotent."""
    F = g.field
    _check_perfect(F)
    n = g.n
    ident = Matrix.identity(F, n)
    f = minimal_polynomial(g)
    fstar = squarefree_part(f)
    if fstar.degree == f.degree:
        return JordanPair(g, ident)
    x = g
    dstar = fstar.derivative()
    for _ in range(max(1, math.ceil(math.log2(n)) + 1)):
        fx = poly_at_matrix(fstar, x)
        if fx.rows == Matrix.zero(F, n).rows:
            break
        x = x - fx * inverse(poly_at_matrix(dstar, x))
    s = x
    u = inverse(s) * g
    if not (s * u == g and u * s == g and is_unipotent_matrix(u)):
        raise ArithmeticError("jordan iteration failed to converge")
    return JordanPair(s, u)


def is_unipotent_group(gens, config: Config = DEFAULT) -> UnipotentCert:
    """Flag certificate for the group generated by unipotent matrices, or
    NotUnipotent carrying the quotient generators with zero fixed space."""
    if not gens:
        raise ValueError("no generators")
    F = gens[0].field
    n = gens[0].n
    for g in gens:
        if not is_unipotent_matrix(g):
            raise NotUnipotentGenerator("input matrix is not unipotent")

    def recurse(cur, embed, level):
        d = len(embed)
        if d == 0 or all(g.is_identity() for g in cur):
            return []
        w = fixed_space(cur)
        if w.dim == 0:
            raise NotUnipotent(level, cur)
        if w.dim == d:
            return []
        qcoords = [j for j in range(d) if j not in set(w.pivots)]
        qgens = quotient_action(cur, w)
        sub = recurse(qgens, [embed[q] for q in qcoords], level + 1)
        w_orig = [_combine(F, embed, row) for row in w.basis]
        return [vecs + w_orig for vecs in sub] + [w_orig]

    embed0 = [tuple(Matrix.identity(F, n).rows[i]) for i in range(n)]
    inner = recurse(list(gens), embed0, 0)
    flag = [Subspace.full(F, n)]
    flag += [Subspace.from_vectors(F, n, vecs) for vecs in inner]
    flag.append(Subspace.zero(F, n))
    # adapted basis, deepest term first, gives the unitriangularizing T
    span = Span(F, n)
    cols = []
    for sub in reversed(flag):
        for row in sub.basis:
            if span.insert(row):
                cols.append(row)
    s_mat = Matrix(F, tuple(zip(*cols)))
    return UnipotentCert(tuple(flag), inverse(s_mat))


def _combine(F, embed, coeffs):
    n = len(embed[0])
    out = [F.zero] * n
    for c, vec in zip(coeffs, embed):
        if not F.is_zero(c):
            for j in range(n):
                out[j] = F.add(out[j], F.mul(c, vec[j]))
    return tuple(out)


def reduction_split(G: GroupSpec, config: Config = DEFAULT) -> SplitResult:
    """Split the generators into diagonalizable and unipotent parts, certify
    the unipotent part, and check the parts commute; a failed check raises
    NotNilpotentSignal with the witness."""
    _check_perfect(G.field)
    n = G.degree
    if not G.gens:
        ident_cert = UnipotentCert((Subspace.full(G.field, n), Subspace.zero(G.field, n)), G.identity)
        return SplitResult((), (), ident_cert, True)
    pairs = [jordan(g) for g in G.gens]
    gens_s = tuple(p.s for p in pairs)
    gens_u = tuple(p.u for p in pairs)
    try:
        cert = is_unipotent_group(list(gens_u), config)
    except NotUnipotent as nu:
        raise NotNilpotentSignal(
            Witness(
                kind="not_unipotent_fixed_point_free",
                context="u_parts",
                items=tuple(
                    WItem(f"quotient_gen_{i}", m, None, {"level": nu.level})
                    for i, m in enumerate(nu.quotient_gens)
                ),
                note=(
                    "the unipotent parts of the generators act fixed-point-freely at flag "
                    f"level {nu.level}, so they generate no unipotent group"
                ),
            )
        ) from None
    for i, u in enumerate(gens_u):
        for j, s in enumerate(gens_s):
            if not (u * s == s * u):
                raise NotNilpotentSignal(
                    Witness(
                        kind="non_commuting_pair",
                        context="jordan_parts",
                        items=(
                            WItem("x", u, ((i, 1),), {"part": "u", "generator": i}),
                            WItem("y", s, ((j, 1),), {"part": "s", "generator": j}),
                        ),
                        note="a unipotent part fails to commute with a diagonalizable part",
                    )
                )
    return SplitResult(gens_s, gens_u, cert, True)


def cr_series(G: GroupSpec, split: SplitResult | None = None, config: Config = DEFAULT):
    """Descending module series with completely reducible factors, from the
    unipotent-part flag."""
    if split is None:
        split = reduction_split(G, config)
    return list(split.cert_u.flag)


def _field_degree_over_prime(field, n):
    """Degree bound for eigenvalue root-of-unity orders."""
    if isinstance(field, NumberField):
        return n * field.degree
    if isinstance(field, FunctionField):
        return _field_degree_over_prime(field.base, n)
    return n


def finite_order(g: Matrix, config: Config = DEFAULT):
    """Multiplicative order of g, or None when infinite."""
    F = g.field
    n = g.n
    ident = Matrix.identity(F, n)
    if g == ident:
        return 1
    char = F.characteristic()
    if char == 0:
        f = minimal_polynomial(g)
        fstar = squarefree_part(f)
        if fstar.degree != f.degree:
            return None
        if isinstance(F, FunctionField):
            # finite order needs constant eigenvalue data
            if any(len(c[0]) > 1 or len(c[1]) > 1 for c in fstar.coeffs):
                return None
            base_poly = Poly.make(F.base, [F.base.div(c[0][0] if c[0] else F.base.zero, c[1][0]) for c in fstar.coeffs])
            k = cyclotomic_finite_order(base_poly, _field_degree_over_prime(F, n))
        else:
            k = cyclotomic_finite_order(f, _field_degree_over_prime(F, n))
        return k
    if isinstance(F, FiniteField):
        x = g
        for i in range(1, config.order_cap + 1):
            if x == ident:
                return i
            x = x * g
        raise CapExceeded(config.order_cap, "element order iteration")
    # char-p function field: finite order forces constant semisimple data
    f = minimal_polynomial(g)
    fstar = squarefree_part(f)
    if any(len(c[0]) > 1 or len(c[1]) > 1 for c in fstar.coeffs):
        return None
    x = g
    for i in range(1, config.order_cap + 1):
        if x == ident:
            return i
        x = x * g
    raise CapExceeded(config.order_cap, "element order iteration")
