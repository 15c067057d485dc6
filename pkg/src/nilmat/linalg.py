"""Exact dense linear algebra over any Field.

Vectors are coefficient tuples, matrices act on column vectors.  Row
echelon work over Q clears denominators and eliminates by integer cross
multiplication with per-row content stripping, which keeps entry growth
in check without floating point or modular tricks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvariant, Singular
from .fields import Field, RationalField
from .poly import Poly, lcm as poly_lcm


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple

    @property
    def n_rows(self):
        return len(self.rows)

    @property
    def n_cols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def n(self):
        return self.n_rows

    def is_square(self):
        return self.n_rows == self.n_cols

    @staticmethod
    def make(field, rows):
        return Matrix(field, tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(field, n, m=None):
        m = n if m is None else m
        z = field.zero
        return Matrix(field, tuple(tuple(z for _ in range(m)) for _ in range(n)))

    @staticmethod
    def from_ints(field, rows):
        return Matrix.make(field, [[field.from_int(c) for c in r] for r in rows])

    @staticmethod
    def diagonal(field, entries):
        n = len(entries)
        z = field.zero
        return Matrix(field, tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)))

    def is_identity(self):
        F = self.field
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if i == j:
                    if not F.is_one(c):
                        return False
                elif not F.is_zero(c):
                    return False
        return True

    def __add__(self, other):
        F = self.field
        return Matrix(
            F,
            tuple(
                tuple(F.add(a, b) for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other):
        F = self.field
        return Matrix(
            F,
            tuple(
                tuple(F.sub(a, b) for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self):
        F = self.field
        return Matrix(F, tuple(tuple(F.neg(c) for c in r) for r in self.rows))

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Matrix):
            return Matrix(F, tuple(tuple(F.mul(c, other) for c in r) for r in self.rows))
        bt = tuple(zip(*other.rows))
        mt = getattr(F, "_mul_table", None)
        if mt is not None and F.l == 1:
            p = F.p
            return Matrix(
                F,
                tuple(
                    tuple(sum(mt[a][b] for a, b in zip(row, col)) % p for col in bt)
                    for row in self.rows
                ),
            )
        out = []
        for row in self.rows:
            orow = []
            for col in bt:
                acc = F.zero
                for a, b in zip(row, col):
                    acc = F.add(acc, F.mul(a, b))
                orow.append(acc)
            out.append(tuple(orow))
        return Matrix(F, tuple(out))

    def __pow__(self, e):
        if e < 0:
            return inverse(self) ** (-e)
        out = Matrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def transpose(self):
        return Matrix(self.field, tuple(zip(*self.rows)))

    def apply(self, vec):
        """Matrix times column vector."""
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, b in zip(row, vec):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def commutes_with(self, other):
        return self * other == other * self

    def __repr__(self):
        return f"Matrix({self.field.name()}, {[list(r) for r in self.rows]})"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return inverse(a) * inverse(b) * a * b


def conjugate(a: Matrix, t: Matrix) -> Matrix:
    """t a t^-1."""
    return t * a * inverse(t)


# ---------------------------------------------------------------------------
# echelon forms

def _q_strip(row):
    """Scale a Fraction row to primitive integers; returns list of ints."""
    den = 1
    for c in row:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def rref(field, rows):
    """Reduced row echelon form; returns (rows as tuples, pivot columns)."""
    if isinstance(field, RationalField):
        return _rref_q(rows)
    work = [list(r) for r in rows]
    m = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if not field.is_zero(work[i][c]):
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(m):
            if i != r and not field.is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    out = [tuple(work[i]) for i in range(r)]
    return out, pivots


def _rref_q(rows):
    """Fraction-free forward elimination over the integers, then pivot
    normalization; equivalent to rref over Q with controlled entry growth."""
    work = [_q_strip([Fraction(c) for c in r]) for r in rows]
    m = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        lead = work[r][c]
        for i in range(r + 1, m):
            if work[i][c]:
                f = work[i][c]
                work[i] = [lead * x - f * y for x, y in zip(work[i], work[r])]
                g = 0
                for x in work[i]:
                    g = math.gcd(g, abs(x))
                if g > 1:
                    work[i] = [x // g for x in work[i]]
        pivots.append(c)
        r += 1
        if r == m:
            break
    # back substitution with Fractions
    frac = [[Fraction(x) for x in work[i]] for i in range(r)]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        frac[i] = [x / frac[i][c] for x in frac[i]]
        for k in range(i):
            f = frac[k][c]
            if f:
                frac[k] = [x - f * y for x, y in zip(frac[k], frac[i])]
    return [tuple(row) for row in frac], pivots


def nullspace(field, rows, ncols):
    """Basis vectors v (length ncols) with M v = 0, from the RREF of M."""
    red, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = []
    for j in free:
        v = [field.zero] * ncols
        v[j] = field.one
        for row, p in zip(red, pivots):
            v[p] = field.neg(row[j])
        out.append(tuple(v))
    return out


class Span:
    """Incremental row span with reduction coefficients over inserted rows."""

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.rows = []  # (vector, pivot, coeffs over inserted originals)
        self.count = 0

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """(residual, coeffs) with vec = residual + sum coeffs_i * original_i."""
        F = self.field
        v = list(vec)
        coeffs = [F.zero] * self.count
        for row, p, rc in self.rows:
            c = v[p]
            if F.is_zero(c):
                continue
            for j in range(self.ncols):
                v[j] = F.sub(v[j], F.mul(c, row[j]))
            for j, x in enumerate(rc):
                coeffs[j] = F.add(coeffs[j], F.mul(c, x))
        return tuple(v), coeffs

    def insert(self, vec):
        """Add vec if independent; returns True when the span grew."""
        F = self.field
        residual, coeffs = self.reduce(vec)
        pivot = None
        for j, c in enumerate(residual):
            if not F.is_zero(c):
                pivot = j
                break
        self.count += 1
        for row in self.rows:
            row[2].append(F.zero)
        if pivot is None:
            self.count -= 1
            for row in self.rows:
                row[2].pop()
            return False
        inv = F.inv(residual[pivot])
        norm = tuple(F.mul(inv, c) for c in residual)
        rc = [F.neg(F.mul(inv, c)) for c in coeffs] + [inv]
        rc = rc[: self.count]
        rc += [F.zero] * (self.count - len(rc))
        self.rows.append([norm, pivot, rc])
        return True

    def coords(self, vec):
        """Coefficients over the inserted independent rows, or None."""
        F = self.field
        residual, coeffs = self.reduce(vec)
        if any(not F.is_zero(c) for c in residual):
            return None
        return coeffs


@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient: int
    basis: tuple  # RREF rows
    pivots: tuple

    @staticmethod
    def from_vectors(field, ambient, vectors):
        red, pivots = rref(field, list(vectors)) if vectors else ([], [])
        return Subspace(field, ambient, tuple(red), tuple(pivots))

    @staticmethod
    def full(field, ambient):
        return Subspace.from_vectors(field, ambient, [Matrix.identity(field, ambient).rows[i] for i in range(ambient)])

    @staticmethod
    def zero(field, ambient):
        return Subspace(field, ambient, (), ())

    @property
    def dim(self):
        return len(self.basis)

    def reduce_vec(self, v):
        F = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if not F.is_zero(c):
                for j in range(self.ambient):
                    v[j] = F.sub(v[j], F.mul(c, row[j]))
        return tuple(v)

    def contains(self, v):
        F = self.field
        return all(F.is_zero(c) for c in self.reduce_vec(v))

    def is_invariant(self, mats):
        return all(self.contains(m.apply(b)) for b in self.basis for m in mats)


def fixed_space(gens) -> Subspace:
    """Common fixed vectors of the generators: the kernel of the stacked g - 1."""
    if not gens:
        raise ValueError("no generators")
    F = gens[0].field
    n = gens[0].n
    stacked = []
    ident = Matrix.identity(F, n)
    for g in gens:
        stacked.extend(list(r) for r in (g - ident).rows)
    if not stacked:
        return Subspace.full(F, n)
    vecs = nullspace(F, stacked, n)
    return Subspace.from_vectors(F, n, vecs)


def quotient_action(gens, w: Subspace):
    """Induced matrices on V/w in the non-pivot standard coordinates."""
    if not gens:
        return []
    F = gens[0].field
    n = gens[0].n
    if w.dim == 0:
        return list(gens)
    if not w.is_invariant(gens):
        raise NotInvariant("subspace is not invariant under all generators")
    qcoords = [j for j in range(n) if j not in set(w.pivots)]
    out = []
    for g in gens:
        cols = []
        for j in qcoords:
            e = [F.zero] * n
            e[j] = F.one
            img = w.reduce_vec(g.apply(tuple(e)))
            cols.append([img[q] for q in qcoords])
        rows = tuple(tuple(cols[j][i] for j in range(len(qcoords))) for i in range(len(qcoords)))
        out.append(Matrix(F, rows))
    return out


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise Singular("only square matrices invert")
    F = a.field
    n = a.n
    aug = [list(a.rows[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    red, pivots = rref(F, aug)
    if len(pivots) < n or list(pivots[:n]) != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix(F, tuple(tuple(row[n:]) for row in red))


def minimal_polynomial(a: Matrix) -> Poly:
    """Least monic annihilator, by per-vector Krylov annihilators lcm'd
    over the standard basis."""
    F = a.field
    n = a.n
    overall = Poly.one_(F)
    for j in range(n):
        if overall.degree == n:
            break
        e = [F.zero] * n
        e[j] = F.one
        v = tuple(e)
        # skip vectors already annihilated
        if _poly_apply_vec(overall, a, v) == tuple([F.zero] * n):
            continue
        span = Span(F, n)
        cur = v
        while span.insert(cur):
            cur = a.apply(cur)
        coeffs = span.coords(cur)
        ann = Poly.make(F, [F.neg(c) for c in coeffs] + [F.one])
        overall = poly_lcm(overall, ann)
    return overall.monic()


def _poly_apply_vec(f: Poly, a: Matrix, v):
    F = a.field
    out = tuple(F.mul(f.coeffs[0], c) for c in v) if not f.is_zero() else tuple([F.zero] * len(v))
    cur = v
    for k in range(1, len(f.coeffs)):
        cur = a.apply(cur)
        c = f.coeffs[k]
        if not F.is_zero(c):
            out = tuple(F.add(x, F.mul(c, y)) for x, y in zip(out, cur))
    return out


def poly_at_matrix(f: Poly, a: Matrix) -> Matrix:
    F = a.field
    n = a.n
    out = Matrix.zero(F, n)
    for c in reversed(f.coeffs):
        out = out * a + Matrix.identity(F, n) * c
    return out


class AlgebraBasis:
    """Basis of the enveloping algebra with producing words over the
    generators; words are index tuples, the empty word is the identity."""

    def __init__(self, field, n, mats, words, span):
        self.field = field
        self.n = n
        self.mats = list(mats)
        self.words = list(words)
        self._span = span

    @property
    def dim(self):
        return len(self.mats)

    def coords(self, x: Matrix):
        flat = tuple(c for row in x.rows for c in row)
        return self._span.coords(flat)


def spin_basis(gens) -> AlgebraBasis:
    """Breadth-first closure of {1, generators} under right multiplication,
    keeping matrices independent of the current span."""
    if not gens:
        raise ValueError("no generators")
    F = gens[0].field
    n = gens[0].n
    span = Span(F, n * n)
    ident = Matrix.identity(F, n)
    basis_mats = []
    basis_words = []
    queue = [(ident, ())]
    qi = 0
    while qi < len(queue):
        mat, word = queue[qi]
        qi += 1
        flat = tuple(c for row in mat.rows for c in row)
        if not span.insert(flat):
            continue
        basis_mats.append(mat)
        basis_words.append(word)
        for i, g in enumerate(gens):
            queue.append((mat * g, word + (i,)))
    return AlgebraBasis(F, n, basis_mats, basis_words, span)


def kron(a: Matrix, b: Matrix) -> Matrix:
    F = a.field
    out = []
    for i in range(a.n_rows):
        for k in range(b.n_rows):
            row = []
            for j in range(a.n_cols):
                aij = a.rows[i][j]
                row.extend(F.mul(aij, b.rows[k][l]) for l in range(b.n_cols))
            out.append(tuple(row))
    return Matrix(F, tuple(out))
