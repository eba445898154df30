"""Exact Laurent-polynomial arithmetic over the rationals.

Three immutable polynomial flavours share the coefficient field
``fractions.Fraction``:

``LaurentPoly``
    f(z) = sum_{k=lo..hi} c_k z^k, finitely many terms, negative
    exponents allowed.

``SymLaurentPoly``
    f[z] = c_0 + sum_{k>=1} c_k (z^k + z^-k), invariant under
    z -> 1/z.  In bijection with ordinary polynomials of the same
    degree in x = (z + 1/z)/2.

``XPoly``
    ordinary polynomial in one variable x, coefficients ascending.

The zero polynomial is always the empty coefficient tuple, so
structural equality is mathematical equality.  All values are
immutable after construction and all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

#: the coefficient field used everywhere in this package
ExactScalar = Fraction

Rat = Union[int, Fraction]


class NonzeroRemainder(ArithmeticError):
    """An exact division left a remainder; some identity upstream is broken."""


def _frac(v: Rat) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class LaurentPoly:
    """f(z) = sum c_k z^k with coeffs[i] the coefficient of z^(lo+i).

    Stored normalized: first and last stored coefficients are nonzero;
    the zero polynomial is ``LaurentPoly()`` with empty coeffs and lo=0.
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int = 0, coeffs: Iterable[Rat] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        drop = 0
        while drop < len(cs) and cs[drop] == 0:
            drop += 1
        if drop:
            cs = cs[drop:]
            lo += drop
        object.__setattr__(self, "lo", lo if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def hi(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no top exponent")
        return self.lo + len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        if self.is_zero:
            return "LaurentPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*z^{self.lo + i}")
        return "LaurentPoly(" + " + ".join(terms) + ")"

    # -- ring operations -----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        cs = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            cs[self.lo + i - lo] += c
        for i, c in enumerate(other.coeffs):
            cs[other.lo + i - lo] += c
        return LaurentPoly(lo, cs)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return LaurentPoly()
        cs = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        cs[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, cs)

    def scale(self, r: Rat) -> "LaurentPoly":
        r = _frac(r)
        if r == 0:
            return LaurentPoly()
        return LaurentPoly(self.lo, [c * r for c in self.coeffs])

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        if self.is_zero:
            return self
        return LaurentPoly(self.lo + k, self.coeffs)

    def dilate(self, r: Rat) -> "LaurentPoly":
        """Substitute z -> r*z: the coefficient of z^k is scaled by r^k."""
        r = _frac(r)
        if r == 0:
            raise ZeroDivisionError("dilation factor must be nonzero")
        return LaurentPoly(self.lo, [c * r ** (self.lo + i) for i, c in enumerate(self.coeffs)])

    def invert_z(self) -> "LaurentPoly":
        """Substitute z -> 1/z."""
        if self.is_zero:
            return self
        return LaurentPoly(-self.hi, tuple(reversed(self.coeffs)))

    def divide_exact(self, g: "LaurentPoly") -> "LaurentPoly":
        """Return h with self == g*h, raising NonzeroRemainder otherwise."""
        if g.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return LaurentPoly()
        # reduce to ordinary polynomial division; the normalized
        # representations both have nonzero constant term after the shift
        rem = list(self.coeffs)
        div = g.coeffs
        dn = len(div) - 1
        if len(rem) - 1 < dn:
            raise NonzeroRemainder(f"{self!r} not divisible by {g!r}")
        quot = [Fraction(0)] * (len(rem) - dn)
        for top in range(len(rem) - 1, dn - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            f = c / div[dn]
            quot[top - dn] = f
            for j in range(dn + 1):
                rem[top - dn + j] -= f * div[j]
        if any(rem):
            raise NonzeroRemainder(f"{self!r} not divisible by {g!r}")
        return LaurentPoly(self.lo - g.lo, quot)

    def __call__(self, zv: Rat) -> Fraction:
        zv = _frac(zv)
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            acc += c * zv ** (self.lo + i)
        return acc

    # -- symmetry ------------------------------------------------------

    @property
    def is_symmetric(self) -> bool:
        return self == self.invert_z()

    def to_sym(self) -> "SymLaurentPoly":
        if self.is_zero:
            return SymLaurentPoly()
        if not self.is_symmetric:
            raise ValueError(f"not symmetric under z -> 1/z: {self!r}")
        return SymLaurentPoly([self.coeff(k) for k in range(self.hi + 1)])


class SymLaurentPoly:
    """f[z] = c[0] + sum_{k>=1} c[k] (z^k + z^-k).

    Trailing zero coefficients are stripped; the zero polynomial is the
    empty tuple.  Closed under addition and multiplication.
    """

    __slots__ = ("c",)

    def __init__(self, c: Iterable[Rat] = ()):
        cs = [_frac(v) for v in c]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "c", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("SymLaurentPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return len(self.c) - 1

    def coeff(self, k: int) -> Fraction:
        k = abs(k)
        return self.c[k] if k < len(self.c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymLaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        if self.is_zero:
            return "SymLaurentPoly(0)"
        parts = [f"({self.c[0]})"] if self.c[0] else []
        for k in range(1, len(self.c)):
            if self.c[k]:
                parts.append(f"({self.c[k]})*(z^{k}+z^-{k})")
        return "SymLaurentPoly(" + " + ".join(parts) + ")"

    def to_laurent(self) -> LaurentPoly:
        if self.is_zero:
            return LaurentPoly()
        n = self.degree
        cs = [Fraction(0)] * (2 * n + 1)
        cs[n] = self.c[0]
        for k in range(1, n + 1):
            cs[n + k] = self.c[k]
            cs[n - k] = self.c[k]
        return LaurentPoly(-n, cs)

    def __add__(self, other: "SymLaurentPoly") -> "SymLaurentPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, v in enumerate(b):
            cs[i] += v
        return SymLaurentPoly(cs)

    def __neg__(self) -> "SymLaurentPoly":
        return SymLaurentPoly([-v for v in self.c])

    def __sub__(self, other: "SymLaurentPoly") -> "SymLaurentPoly":
        return self + (-other)

    def __mul__(self, other: "SymLaurentPoly") -> "SymLaurentPoly":
        if self.is_zero or other.is_zero:
            return SymLaurentPoly()
        return (self.to_laurent() * other.to_laurent()).to_sym()

    def scale(self, r: Rat) -> "SymLaurentPoly":
        r = _frac(r)
        if r == 0:
            return SymLaurentPoly()
        return SymLaurentPoly([v * r for v in self.c])

    def __call__(self, zv: Rat) -> Fraction:
        zv = _frac(zv)
        if self.is_zero:
            return Fraction(0)
        acc = self.c[0]
        for k in range(1, len(self.c)):
            acc += self.c[k] * (zv ** k + zv ** (-k))
        return acc


class XPoly:
    """Ordinary polynomial in x; coeffs[i] is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()):
        cs = [_frac(v) for v in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        if self.is_zero:
            return "XPoly(0)"
        return "XPoly(" + " + ".join(
            f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c) + ")"

    def __add__(self, other: "XPoly") -> "XPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, v in enumerate(b):
            cs[i] += v
        return XPoly(cs)

    def __neg__(self) -> "XPoly":
        return XPoly([-v for v in self.coeffs])

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        if self.is_zero or other.is_zero:
            return XPoly()
        cs = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        cs[i + j] += a * b
        return XPoly(cs)

    def scale(self, r: Rat) -> "XPoly":
        r = _frac(r)
        if r == 0:
            return XPoly()
        return XPoly([v * r for v in self.coeffs])

    def shift_x(self, k: int) -> "XPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return XPoly((Fraction(0),) * k + self.coeffs)

    def compose_scale(self, r: Rat) -> "XPoly":
        """Substitute x -> r*x."""
        r = _frac(r)
        return XPoly([c * r ** i for i, c in enumerate(self.coeffs)])

    def derivative(self) -> "XPoly":
        return XPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divide_x_exact(self) -> "XPoly":
        """Divide by x, requiring a zero constant term."""
        if self.is_zero:
            return self
        if self.coeffs[0] != 0:
            raise NonzeroRemainder("constant term nonzero, x does not divide")
        return XPoly(self.coeffs[1:])

    def divide_exact(self, g: "XPoly") -> "XPoly":
        """Return h with self == g*h, raising NonzeroRemainder otherwise."""
        q = LaurentPoly(0, self.coeffs).divide_exact(LaurentPoly(0, g.coeffs))
        if q.is_zero:
            return XPoly()
        if q.lo < 0:
            raise NonzeroRemainder("quotient is not a polynomial")
        return XPoly((Fraction(0),) * q.lo + q.coeffs)

    def __call__(self, xv: Rat) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * _frac(xv) + c
        return acc


# -- conversions between the x and z pictures ---------------------------

def x_monomial_sym(n: int) -> SymLaurentPoly:
    """x^n written as a symmetric Laurent polynomial, x = (z + 1/z)/2."""
    return x_to_sym(XPoly((Fraction(0),) * n + (Fraction(1),)))


def x_to_sym(p: XPoly) -> SymLaurentPoly:
    """Substitute x = (z + 1/z)/2 into p."""
    out = SymLaurentPoly()
    power = SymLaurentPoly([Fraction(1)])
    xs = SymLaurentPoly([Fraction(0), Fraction(1, 2)])
    for i, c in enumerate(p.coeffs):
        if i:
            power = power * xs
        if c:
            out = out + power.scale(c)
    return out


def sym_to_x(f: SymLaurentPoly) -> XPoly:
    """Inverse of :func:`x_to_sym`: the unique p with p((z+1/z)/2) = f[z].

    Works by eliminating the top coefficient against x^k, whose leading
    symmetric coefficient is 2^-k.
    """
    rem = f
    out = [Fraction(0)] * (len(f.c) or 1)
    while not rem.is_zero:
        k = rem.degree
        ck = rem.c[k] * 2 ** k
        out[k] = ck
        rem = rem - x_monomial_sym(k).scale(ck)
    return XPoly(out)


def dilate(f: LaurentPoly, r: Rat) -> LaurentPoly:
    return f.dilate(r)


def divide_exact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f.divide_exact(g)


#: z - 1/z, the divisor appearing in every divided-difference operator
Z_MINUS_ZINV = LaurentPoly(-1, (Fraction(-1), Fraction(0), Fraction(1)))
