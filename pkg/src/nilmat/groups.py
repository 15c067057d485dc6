"""Finitely generated matrix groups: generator lists with cached inverses,
and words over the generators used for witnesses and Schreier bookkeeping.

A Word is a tuple of (generator index, +1 | -1) pairs; the empty word is
the identity.  Pipeline elements travel as Elt pairs (matrix, word) so a
non-trivial claim about an element can always be replayed from the file
generators by plain multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Singular, SingularGenerator
from .linalg import Matrix, inverse

Word = tuple


def word_inverse(w: Word) -> Word:
    return tuple((i, -e) for i, e in reversed(w))


def word_mul(*ws) -> Word:
    out = []
    for w in ws:
        for i, e in w:
            if out and out[-1][0] == i and out[-1][1] == -e:
                out.pop()
            else:
                out.append((i, e))
    return tuple(out)


def word_commutator(a: Word, b: Word) -> Word:
    return word_mul(word_inverse(a), word_inverse(b), a, b)


def evaluate_word(w: Word, gens, invs) -> Matrix:
    if not gens:
        raise ValueError("cannot evaluate a word without generators")
    out = Matrix.identity(gens[0].field, gens[0].n)
    for i, e in w:
        out = out * (gens[i] if e == 1 else invs[i])
    return out


@dataclass(frozen=True)
class Elt:
    """A group element with a word expressing it over the reference generators."""

    mat: Matrix
    word: Word

    def __mul__(self, other):
        return Elt(self.mat * other.mat, word_mul(self.word, other.word))

    def inv(self):
        return Elt(inverse(self.mat), word_inverse(self.word))

    def commutator(self, other):
        return Elt(
            inverse(self.mat) * inverse(other.mat) * self.mat * other.mat,
            word_commutator(self.word, other.word),
        )

    def is_identity(self):
        return self.mat.is_identity()


class GroupSpec:
    """A coefficient field plus invertible square generators with cached inverses."""

    def __init__(self, field, gens):
        gens = list(gens)
        if gens:
            n = gens[0].n
            for g in gens:
                if not g.is_square() or g.n != n:
                    raise SingularGenerator("generators must be square and of equal size")
            self.degree = n
        else:
            self.degree = 1
            gens = []
        self.field = field
        self.gens = tuple(gens)
        try:
            self.invs = tuple(inverse(g) for g in self.gens)
        except Singular as e:
            raise SingularGenerator(str(e)) from None

    @property
    def identity(self):
        return Matrix.identity(self.field, self.degree)

    def elts(self):
        """Generators paired with their single-letter words."""
        return [Elt(g, ((i, 1),)) for i, g in enumerate(self.gens)]

    def evaluate(self, w: Word) -> Matrix:
        if not self.gens:
            return self.identity
        return evaluate_word(w, self.gens, self.invs)

    def is_trivial(self):
        return all(g.is_identity() for g in self.gens)

    def subgroup(self, gens):
        return GroupSpec(self.field, gens)

    def __repr__(self):
        return f"GroupSpec({self.field.name()}, degree {self.degree}, {len(self.gens)} generators)"
