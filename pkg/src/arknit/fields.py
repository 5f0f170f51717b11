"""Exact scalar arithmetic: the rationals (default) or a prime field F_p.

Elements are plain Python values, Fraction for Q and int in [0, p) for F_p,
so matrices stay lists of lists with no wrapper objects. A Field instance
only bundles the arithmetic and the exact string codec used by the JSON
formats. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Q when p == 0, otherwise the prime field F_p."""

    def __init__(self, p=0):
        if p and not _is_prime(p):
            raise ValueError("field characteristic must be 0 or prime, got %r" % (p,))
        self.p = p
        if p:
            self.zero = 0
            self.one = 1
        else:
            self.zero = Fraction(0)
            self.one = Fraction(1)

    @property
    def name(self):
        return "QQ" if self.p == 0 else "GF(%d)" % self.p

    def of(self, x):
        """Coerce an int, string or Fraction into a field element."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError("denominator divisible by p")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverting zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def parse(self, s):
        """Exact string to element: "3", "-2/7", or a residue mod p."""
        s = s.strip()
        if self.p:
            if "/" in s:
                num, den = s.split("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(s) % self.p
        return Fraction(s)

    def fmt(self, a):
        """Element to exact string, inverse of parse."""
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%d)" % self.p


QQ = Field(0)

#: default prime for modular runs, large enough to dodge small-char accidents
DEFAULT_PRIME = 32003


def field_from_name(name):
    """"QQ" or "Fp"/"GF(p)"/"p" to a Field."""
    s = str(name).strip()
    if s in ("QQ", "Q", "0", "rational", "rationals"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        s = s[3:-1]
    elif s.startswith("F") and s[1:].isdigit():
        s = s[1:]
    if s.isdigit():
        return Field(int(s))
    raise ValueError("unknown field name %r" % (name,))
