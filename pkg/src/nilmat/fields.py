"""Exact arithmetic for the supported coefficient fields.

A Field object bundles the operations of one concrete field.  Element
values are plain hashable Python objects:

  rationals            fractions.Fraction
  GF(p^l)              int in [0, p^l), base-p digit encoding of the
                       coefficient vector over GF(p)
  number field Q(a)    tuple of m Fractions, power basis of a
  function field P(X)  pair (num, den) of coefficient tuples over P,
                       den monic, fraction reduced

Keeping values primitive means matrices assembled from them hash and
compare exactly, which the closure and Cayley machinery depends on.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DenominatorDivisible, ParseError
from .numth import is_prime

_TABLE_MAX = 64


# ---------------------------------------------------------------------------
# raw polynomial helpers over an arbitrary Field (coefficient tuples,
# zero polynomial = empty tuple, highest coefficient nonzero)

def pt_trim(field, cs):
    cs = list(cs)
    while cs and field.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def pt_add(field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return pt_trim(field, out)


def pt_neg(field, a):
    return tuple(field.neg(c) for c in a)


def pt_sub(field, a, b):
    return pt_add(field, a, pt_neg(field, b))


def pt_mul(field, a, b):
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return pt_trim(field, out)


def pt_scale(field, a, c):
    if field.is_zero(c):
        return ()
    return pt_trim(field, [field.mul(x, c) for x in a])


def pt_divmod(field, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv_lc = field.inv(b[-1])
    while len(a) >= len(b) and a:
        c = field.mul(a[-1], inv_lc)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = field.sub(a[k + i], field.mul(c, y))
        while a and field.is_zero(a[-1]):
            a.pop()
    return pt_trim(field, q), pt_trim(field, a)


def pt_mod(field, a, b):
    return pt_divmod(field, a, b)[1]


def _pt_int_primitive(a):
    """Fraction coefficient tuple -> primitive integer list (content dropped)."""
    den = 1
    for c in a:
        d = c.denominator
        den = den * d // _igcd(den, d)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = _igcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _pt_gcd_q(a, b):
    """Primitive polynomial remainder sequence over Z; avoids the coefficient
    blow-up of naive Fraction division."""
    fa = _pt_int_primitive(a)
    fb = _pt_int_primitive(b)
    while fb and any(fb):
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        # pseudo-remainder of lc(fb)^k * fa by fb
        k = len(fa) - len(fb) + 1
        lc = fb[-1]
        r = [c * lc**k for c in fa]
        while len(r) >= len(fb) and any(r):
            c = r[-1]
            if c % lc:
                raise ArithmeticError("pseudo remainder failure")
            q = c // lc
            off = len(r) - len(fb)
            for i, y in enumerate(fb):
                r[off + i] -= q * y
            while len(r) > 1 and r[-1] == 0:
                r.pop()
            if len(r) == 1 and r[0] == 0:
                r = []
                break
        g = 0
        for c in r:
            g = _igcd(g, abs(c))
        if g > 1:
            r = [c // g for c in r]
        fa, fb = fb, r
    if not fa or not any(fa):
        return ()
    lead = Fraction(fa[-1])
    return tuple(Fraction(c) / lead for c in fa)


def pt_gcd(field, a, b):
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return ()
        return pt_scale(field, a, field.inv(a[-1]))
    if isinstance(field, RationalField):
        return _pt_gcd_q(a, b)
    while b:
        a, b = b, pt_mod(field, a, b)
    if not a:
        return ()
    return pt_scale(field, a, field.inv(a[-1]))


def pt_eval(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------

class Field:
    """Common interface; concrete fields fill in the primitives."""

    kind = None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def characteristic(self):
        return 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return self.name()


class RationalField(Field):
    kind = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_int(self, k):
        return Fraction(k)

    def descriptor(self):
        return ("Q",)

    def name(self):
        return "Q"

    def to_json(self):
        return {"kind": "Q"}

    def parse(self, s):
        if not isinstance(s, str):
            raise ParseError(f"rational entry must be a string, got {s!r}")
        try:
            v = Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational entry {s!r}: {e}") from None
        return v

    def format(self, a):
        return str(a)

    def random_element(self, rng, size=6):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return Fraction(num, den)


QQ = RationalField()


def reduce_mod(x: Fraction, p: int) -> int:
    """Reduce a rational with p-coprime denominator into GF(p)."""
    den = x.denominator
    if den % p == 0:
        raise DenominatorDivisible(f"denominator of {x} divisible by {p}")
    return x.numerator * pow(den, -1, p) % p


class FiniteField(Field):
    """GF(p^l); for l > 1 the modulus is an explicit monic irreducible.

    Elements are integers in [0, p^l) encoding the coefficient vector
    base p, least significant coefficient first.
    """

    kind = "GF"

    def __init__(self, p, l=1, modulus=None, seed=0):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if l < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.l = l
        self.q = p**l
        self.zero = 0
        self.one = 1 % self.q
        if l == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = find_irreducible_modulus(p, l, seed)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != l + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree l")
            if not _gfp_is_irreducible(p, modulus):
                raise ValueError("modulus is not irreducible over GF(p)")
            self.modulus = modulus
            # reductions of X^l .. X^(2l-2) modulo the modulus, as digit vectors
            red = []
            cur = [(-c) % p for c in modulus[:-1]]
            red.append(tuple(cur))
            for _ in range(l - 2):
                cur = [0] + cur
                carry = cur.pop()
                if carry:
                    cur = [(cur[i] + carry * red[0][i]) % p for i in range(l)]
                red.append(tuple(cur))
            self._xpow = red
        self._mul_table = None
        self._inv_table = None
        if self.q <= _TABLE_MAX:
            self._build_tables()

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._mul_slow(a, b)
                mul[a][b] = v
                mul[b][a] = v
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._pow_slow(a, q - 2)
        self._inv_table = inv

    # digit codecs
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.l):
            out.append(a % p)
            a //= p
        return out

    def undigits(self, ds):
        v = 0
        for c in reversed(ds):
            v = v * self.p + (c % self.p)
        return v

    def add(self, a, b):
        if self.l == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.l == 1:
            return (-a) % self.p
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def _mul_slow(self, a, b):
        p = self.p
        if self.l == 1:
            return a * b % p
        da, db = self.digits(a), self.digits(b)
        l = self.l
        prod = [0] * (2 * l - 1)
        for i, x in enumerate(da):
            if not x:
                continue
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:l]
        for k in range(l, 2 * l - 1):
            c = prod[k]
            if c:
                r = self._xpow[k - l]
                out = [(out[i] + c * r[i]) % p for i in range(l)]
        return self.undigits(out)

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def _pow_slow(self, a, e):
        out = self.one
        while e:
            if e & 1:
                out = self._mul_slow(out, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._inv_table is not None:
            return self._inv_table[a]
        if self.l == 1:
            return pow(a, -1, self.p)
        return self._pow_slow(a, self.q - 2)

    def from_int(self, k):
        return k % self.p

    def characteristic(self):
        return self.p

    def elements(self):
        return range(self.q)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def from_coeffs(self, cs):
        """Element from a GF(p) coefficient list (length <= l)."""
        ds = [int(c) % self.p for c in cs]
        if len(ds) > self.l:
            raise ValueError("coefficient vector longer than extension degree")
        ds += [0] * (self.l - len(ds))
        return self.undigits(ds)

    def multiplicative_generator(self):
        """Least primitive element, by exhaustive order check (small q only)."""
        from .numth import factorint

        fac = factorint(self.q - 1)
        for a in range(1, self.q):
            if all(self.pow(a, (self.q - 1) // t) != self.one for t in fac):
                return a
        raise RuntimeError("no generator found")

    def element_of_order(self, k):
        """Element of exact multiplicative order k (requires k | q - 1)."""
        if (self.q - 1) % k:
            raise ValueError(f"{k} does not divide {self.q - 1}")
        g = self.multiplicative_generator()
        return self.pow(g, (self.q - 1) // k)

    def descriptor(self):
        return ("GF", self.p, self.l, self.modulus)

    def name(self):
        if self.l == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.l})"

    def to_json(self):
        d = {"kind": "GF", "p": self.p, "l": self.l}
        if self.modulus is not None:
            d["modulus"] = [str(c) for c in self.modulus]
        return d

    def parse(self, s):
        if self.l == 1:
            if isinstance(s, str):
                try:
                    return int(s) % self.p
                except ValueError:
                    raise ParseError(f"bad GF({self.p}) entry {s!r}") from None
            if isinstance(s, int):
                return s % self.p
            raise ParseError(f"bad GF({self.p}) entry {s!r}")
        if not isinstance(s, (list, tuple)):
            raise ParseError(f"GF({self.p}^{self.l}) entry must be a coefficient array")
        try:
            return self.from_coeffs([int(c) for c in s])
        except (ValueError, TypeError):
            raise ParseError(f"bad GF({self.p}^{self.l}) entry {s!r}") from None

    def format(self, a):
        if self.l == 1:
            return str(a)
        return [str(c) for c in self.digits(a)]

    def random_element(self, rng, size=None):
        return rng.randrange(self.q)


def _gfp_is_irreducible(p, coeffs):
    """Irreducibility over GF(p) of a monic polynomial given by int coeffs."""
    base = FiniteField(p)
    f = pt_trim(base, tuple(c % p for c in coeffs))
    l = len(f) - 1
    if l < 1:
        return False
    if l == 1:
        return True
    x = (0, 1)
    # x^(p^l) = x mod f, and x^(p^(l/r)) - x coprime to f for prime r | l
    xp = x
    powers = []
    for _ in range(l):
        xp = _pt_powmod(base, xp, p, f)
        powers.append(xp)
    if powers[-1] != pt_mod(base, x, f):
        return False
    from .numth import factorint

    for r in factorint(l):
        d = l // r
        g = pt_gcd(base, pt_sub(base, powers[d - 1], x), f)
        if len(g) - 1 > 0:
            return False
    return True

def _pt_powmod(field, a, e, m):
    out = pt_mod(field, (field.one,), m)
    a = pt_mod(field, a, m)
    while e:
        if e & 1:
            out = pt_mod(field, pt_mul(field, out, a), m)
        a = pt_mod(field, pt_mul(field, a, a), m)
        e >>= 1
    return out


def find_irreducible_modulus(p, l, seed=0):
    """Monic irreducible of degree l over GF(p), by seeded random search."""
    rng = random.Random(f"modulus:{p}:{l}:{seed}")
    while True:
        coeffs = [rng.randrange(p) for _ in range(l)] + [1]
        if coeffs[0] == 0:
            continue
        if _gfp_is_irreducible(p, coeffs):
            return tuple(coeffs)


class NumberField(Field):
    """Q(a) for a root a of a monic irreducible integer polynomial.

    Elements are coefficient tuples of Fractions in the power basis.
    Irreducibility of the defining polynomial is the caller's contract;
    the poly module provides the check used at parse time.
    """

    kind = "NF"

    def __init__(self, minpoly):
        mp = tuple(int(c) for c in minpoly)
        if len(mp) < 3 or mp[-1] != 1:
            raise ValueError("minpoly must be monic of degree >= 2")
        self.minpoly = mp
        self.degree = len(mp) - 1
        m = self.degree
        self.zero = tuple([Fraction(0)] * m)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (m - 1))
        # reductions of a^m .. a^(2m-2)
        red = []
        cur = [Fraction(-c) for c in mp[:-1]]
        red.append(tuple(cur))
        for _ in range(m - 2):
            cur = [Fraction(0)] + cur
            carry = cur.pop()
            if carry:
                cur = [cur[i] + carry * red[0][i] for i in range(m)]
            red.append(tuple(cur))
        self._apow = red

    def gen(self):
        m = self.degree
        return tuple([Fraction(0), Fraction(1)] + [Fraction(0)] * (m - 2))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        m = self.degree
        prod = [Fraction(0)] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:m]
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                r = self._apow[k - m]
                out = [out[i] + c * r[i] for i in range(m)]
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        # extended euclid of the representing polynomial with minpoly over Q
        f = pt_trim(QQ, a)
        g = tuple(Fraction(c) for c in self.minpoly)
        r0, r1 = g, f
        s0, s1 = (), (QQ.one,)
        while r1:
            q, r = pt_divmod(QQ, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, pt_sub(QQ, s0, pt_mul(QQ, q, s1))
        c = QQ.inv(r0[-1])
        inv = pt_scale(QQ, s0, c)
        out = list(inv) + [Fraction(0)] * (self.degree - len(inv))
        return tuple(out[: self.degree])

    def from_int(self, k):
        m = self.degree
        return tuple([Fraction(k)] + [Fraction(0)] * (m - 1))

    def descriptor(self):
        return ("NF", self.minpoly)

    def name(self):
        return f"Q(a), a^{self.degree} defined by {list(self.minpoly)}"

    def to_json(self):
        return {"kind": "NF", "minpoly": [str(c) for c in self.minpoly]}

    def parse(self, s):
        if not isinstance(s, (list, tuple)) or len(s) > self.degree:
            raise ParseError(f"number field entry must be a coefficient array of length <= {self.degree}")
        try:
            cs = [Fraction(str(c)) for c in s]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number field entry {s!r}") from None
        cs += [Fraction(0)] * (self.degree - len(cs))
        return tuple(cs)

    def format(self, a):
        return [str(c) for c in a]

    def random_element(self, rng, size=4):
        return tuple(Fraction(rng.randint(-size, size), rng.randint(1, 2)) for _ in range(self.degree))

    def denominator_clearing(self, a):
        """Least positive z with z*a integral in the power basis."""
        from math import lcm

        return lcm(*[c.denominator for c in a]) if a else 1


class FunctionField(Field):
    """P(X) for P rational or finite; elements are reduced fractions of
    coefficient tuples over the base, denominator monic."""

    kind = "FF"

    def __init__(self, base):
        if isinstance(base, FunctionField):
            raise ValueError("function field base must not itself be a function field")
        if not isinstance(base, (RationalField, FiniteField)):
            raise ValueError("function field base must be Q or a finite field")
        self.base = base
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))

    def make(self, num, den):
        B = self.base
        num = pt_trim(B, num)
        den = pt_trim(B, den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = pt_gcd(B, num, den)
        if len(g) > 1 or not B.is_one(g[0]):
            num = pt_divmod(B, num, g)[0]
            den = pt_divmod(B, den, g)[0]
        c = B.inv(den[-1])
        if not B.is_one(den[-1]):
            num = pt_scale(B, num, c)
            den = pt_scale(B, den, c)
        return (num, den)

    def x(self):
        B = self.base
        return ((B.zero, B.one), (B.one,))

    def add(self, a, b):
        B = self.base
        (n1, d1), (n2, d2) = a, b
        return self.make(pt_add(B, pt_mul(B, n1, d2), pt_mul(B, n2, d1)), pt_mul(B, d1, d2))

    def neg(self, a):
        return (pt_neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        return self.make(pt_mul(B, a[0], b[0]), pt_mul(B, a[1], b[1]))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        return self.make(a[1], a[0])

    def from_int(self, k):
        B = self.base
        v = B.from_int(k)
        if B.is_zero(v):
            return self.zero
        return ((v,), (B.one,))

    def from_base(self, v):
        if self.base.is_zero(v):
            return self.zero
        return ((v,), (self.base.one,))

    def characteristic(self):
        return self.base.characteristic()

    def evaluate(self, a, point):
        """Evaluate at a base-field point; denominator must not vanish."""
        B = self.base
        den = pt_eval(B, a[1], point)
        if B.is_zero(den):
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return B.mul(pt_eval(B, a[0], point), B.inv(den))

    def descriptor(self):
        return ("FF", self.base.descriptor())

    def name(self):
        return f"{self.base.name()}(X)"

    def to_json(self):
        return {"kind": "FF", "base": self.base.to_json()}

    def parse(self, s):
        if not isinstance(s, dict) or "num" not in s or "den" not in s:
            raise ParseError("function field entry must be {\"num\": [...], \"den\": [...]}")
        B = self.base
        try:
            num = tuple(B.parse(c) for c in s["num"])
            den = tuple(B.parse(c) for c in s["den"])
            return self.make(num, den)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in entry {s!r}") from None

    def format(self, a):
        B = self.base
        return {"num": [B.format(c) for c in a[0]], "den": [B.format(c) for c in a[1]]}

    def random_element(self, rng, size=2):
        B = self.base
        num = tuple(B.random_element(rng) for _ in range(rng.randint(1, size)))
        den = tuple([B.random_element(rng) for _ in range(rng.randint(0, size - 1))] + [B.one])
        try:
            return self.make(num, den)
        except ZeroDivisionError:
            return self.one


def field_from_json(d, seed=0):
    if not isinstance(d, dict) or "kind" not in d:
        raise ParseError("field descriptor must be an object with a 'kind'")
    kind = d["kind"]
    if kind == "Q":
        return QQ
    if kind == "GF":
        try:
            p = int(d["p"])
            l = int(d.get("l", 1))
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"bad GF descriptor {d!r}") from None
        modulus = d.get("modulus")
        if modulus is not None:
            modulus = tuple(int(c) for c in modulus)
        try:
            return FiniteField(p, l, modulus, seed=seed)
        except ValueError as e:
            raise ParseError(str(e)) from None
    if kind == "NF":
        try:
            mp = tuple(int(c) for c in d["minpoly"])
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"bad NF descriptor {d!r}") from None
        try:
            nf = NumberField(mp)
        except ValueError as e:
            raise ParseError(str(e)) from None
        from .poly import Poly, is_irreducible_over_Q

        if not is_irreducible_over_Q(Poly.from_ints(QQ, mp)):
            raise ParseError("number field minpoly is not irreducible over Q")
        return nf
    if kind == "FF":
        base = field_from_json(d.get("base", {}), seed=seed)
        try:
            return FunctionField(base)
        except ValueError as e:
            raise ParseError(str(e)) from None
    raise ParseError(f"unknown field kind {kind!r}")
