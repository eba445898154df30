"""Operators on graded polynomial spaces: X, the skew operators L, and
the symmetric second-order operators D, plus the generic commutator and
the reconstruction of D from L.

A :class:`PolyOperator` wraps an exact action together with its matrix
columns in the graded monomial basis {1, x, x^2, ...} (for symmetric
Laurent spaces the basis element x^j means ((z + 1/z)/2)^j).  Columns
are computed lazily and cached; after construction an operator is
immutable and freely shareable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

from .families import (FamilySpec, AW, JACOBI, CQJ49, CQJ09, CQU, BIGQ,
                       cqjacobi_aw_spec, cqultra_aw_spec)
from .laurent import (LaurentPoly, SymLaurentPoly, XPoly, Z_MINUS_ZINV,
                      sym_to_x, x_to_sym, _frac)

Poly = Union[SymLaurentPoly, XPoly]


class PolyOperator:
    """A linear operator given by an exact action on one polynomial space."""

    def __init__(self, action: Callable[[Poly], Poly], space: str,
                 degree_shift: int, name: str = ""):
        self.action = action
        self.space = space            # "sym" or "x"
        self.degree_shift = degree_shift
        self.name = name
        self._columns: dict[int, tuple] = {}

    def __call__(self, f: Poly) -> Poly:
        return self.action(f)

    def basis(self, j: int) -> Poly:
        mono = XPoly((Fraction(0),) * j + (Fraction(1),))
        return x_to_sym(mono) if self.space == "sym" else mono

    def column(self, j: int) -> tuple:
        """x-coordinates of the image of x^j (padded by the caller)."""
        col = self._columns.get(j)
        if col is None:
            out = self.action(self.basis(j))
            if isinstance(out, SymLaurentPoly):
                out = sym_to_x(out)
            col = out.coeffs
            self._columns[j] = col
        return col

    def matrix(self, n_cols: int) -> tuple:
        return tuple(self.column(j) for j in range(n_cols + 1))

    def __repr__(self):
        return f"PolyOperator({self.name or 'anonymous'}, space={self.space})"


def op_x(space: str) -> PolyOperator:
    """Multiplication by x (by (z + 1/z)/2 on the symmetric side)."""
    if space == "sym":
        xs = SymLaurentPoly([Fraction(0), Fraction(1, 2)])
        return PolyOperator(lambda f: f * xs, "sym", 1, "X")
    return PolyOperator(lambda f: f.shift_x(1), "x", 1, "X")


def compose(outer: PolyOperator, inner: PolyOperator, name: str = "") -> PolyOperator:
    if outer.space != inner.space:
        raise ValueError("operator spaces differ")
    return PolyOperator(lambda f: outer(inner(f)), outer.space,
                        outer.degree_shift + inner.degree_shift,
                        name or f"{outer.name}∘{inner.name}")


def commutator(D: PolyOperator, X: PolyOperator) -> PolyOperator:
    """DX - XD."""
    if D.space != X.space:
        raise ValueError("operator spaces differ")
    return PolyOperator(lambda f: D(X(f)) - X(D(f)), D.space,
                        D.degree_shift + X.degree_shift,
                        f"[{D.name},{X.name}]")


def operators_agree(op1: PolyOperator, op2: PolyOperator, max_col: int):
    """First column where the two matrices differ, or None if they agree."""
    for j in range(max_col + 1):
        a, b = op1.column(j), op2.column(j)
        width = max(len(a), len(b))
        pa = a + (Fraction(0),) * (width - len(a))
        pb = b + (Fraction(0),) * (width - len(b))
        if pa != pb:
            return j
    return None


def gamma_slope(op: PolyOperator, n: int) -> Fraction:
    """Coefficient of x^(n+1) in op(x^n)."""
    col = op.column(n)
    return col[n + 1] if len(col) > n + 1 else Fraction(0)


# ----------------------------------------------------------------------
# divided-shift skeleton shared by every symmetric-Laurent L
# ----------------------------------------------------------------------

def divided_shift_op(v: LaurentPoly, step: Fraction, name: str) -> PolyOperator:
    """f[z] -> (v(z) f[step*z] - v(1/z) f[z/step]) / (z - 1/z).

    Symmetry of the input makes the numerator divisible by z - 1/z; a
    remainder would mean broken algebra upstream, reported as
    NonzeroRemainder.
    """
    v_inv = v.invert_z()
    inv_step = 1 / _frac(step)

    def act(f: SymLaurentPoly) -> SymLaurentPoly:
        fl = f.to_laurent()
        num = v * fl.dilate(step) - v_inv * fl.dilate(inv_step)
        return num.divide_exact(Z_MINUS_ZINV).to_sym()

    return PolyOperator(act, "sym", 1, name)


def _linear_factors(zeros_scaled, extra=()):
    """Product of (1 - r z) over r plus extra Laurent factors."""
    acc = LaurentPoly(0, (Fraction(1),))
    for r in zeros_scaled:
        acc = acc * LaurentPoly(0, (Fraction(1), -_frac(r)))
    for e in extra:
        acc = acc * e
    return acc


# ----------------------------------------------------------------------
# Askey-Wilson
# ----------------------------------------------------------------------

def aw_L(spec: FamilySpec) -> PolyOperator:
    """((1-az)(1-bz)(1-cz)(1-dz) z^-2 f[qz] - (inverted) z^2 f[z/q]) / (z-1/z)."""
    a, b, c, d, q = (spec.params[k] for k in "abcdq")
    v = _linear_factors((a, b, c, d)).shift(-2)
    return divided_shift_op(v, q, "L_aw")


def aw_D(spec: FamilySpec) -> PolyOperator:
    """The second-order operator with the family as eigenfunctions.

    (1-1/q)/2 * (Df)[z] = v(z) f[qz] - (v(z)+v(1/z)) f[z] + v(1/z) f[z/q],
    v(z) = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-qz^2)); implemented by
    clearing the denominator and dividing exactly afterwards.
    """
    a, b, c, d, q = (spec.params[k] for k in "abcdq")
    n_lin = _linear_factors((a, b, c, d))
    one_minus_z2 = LaurentPoly(0, (Fraction(1), Fraction(0), Fraction(-1)))
    one_minus_qz2 = LaurentPoly(0, (Fraction(1), Fraction(0), -q))
    wv = n_lin * one_minus_z2.invert_z() * one_minus_qz2.invert_z()
    wv_inv = wv.invert_z()
    mid = wv + wv_inv
    clear = one_minus_z2 * one_minus_qz2 * one_minus_z2.invert_z() * one_minus_qz2.invert_z()
    scale = Fraction(2) / (1 - 1 / q)
    inv_q = 1 / q

    def act(f: SymLaurentPoly) -> SymLaurentPoly:
        fl = f.to_laurent()
        num = wv * fl.dilate(q) - mid * fl + wv_inv * fl.dilate(inv_q)
        return num.divide_exact(clear).to_sym().scale(scale)

    return PolyOperator(act, "sym", 0, "D_aw")


# ----------------------------------------------------------------------
# Jacobi
# ----------------------------------------------------------------------

def jacobi_L(spec: FamilySpec) -> PolyOperator:
    """(1-x^2) f' - ((alpha-beta) + (alpha+beta+2) x)/2 * f."""
    al, be = spec.params["alpha"], spec.params["beta"]
    one_minus_x2 = XPoly([1, 0, -1])
    lin = XPoly([(al - be) / 2, (al + be + 2) / 2])

    def act(f: XPoly) -> XPoly:
        return one_minus_x2 * f.derivative() - lin * f

    return PolyOperator(act, "x", 1, "L_jacobi")


def jacobi_D(spec: FamilySpec) -> PolyOperator:
    """(1-x^2)/2 f'' + ((beta-alpha) - (alpha+beta+2) x)/2 * f'."""
    al, be = spec.params["alpha"], spec.params["beta"]
    half_one_minus_x2 = XPoly([Fraction(1, 2), 0, Fraction(-1, 2)])
    lin = XPoly([(be - al) / 2, -(al + be + 2) / 2])

    def act(f: XPoly) -> XPoly:
        return half_one_minus_x2 * f.derivative().derivative() + lin * f.derivative()

    return PolyOperator(act, "x", 0, "D_jacobi")


# ----------------------------------------------------------------------
# continuous q-Jacobi (two step sizes)
# ----------------------------------------------------------------------

def cqjacobi_L(spec: FamilySpec) -> PolyOperator:
    """Step q^(1/2): v(z) = (1 - q^(a/2+1/4) z)(1 + q^(b/2+1/4) z)(1 - q^(1/2) z^2) z^-2."""
    s = spec.base
    ea, eb = int(2 * spec.params["alpha"]), int(2 * spec.params["beta"])
    one_minus_sqz2 = LaurentPoly(0, (Fraction(1), Fraction(0), -s ** 2))
    v = _linear_factors((s ** (ea + 1), -s ** (eb + 1)),
                        extra=(one_minus_sqz2,)).shift(-2)
    return divided_shift_op(v, s ** 2, "L_cqjacobi")


def cqjacobi_Ltilde(spec: FamilySpec) -> PolyOperator:
    """Step q: the quartic coefficient from the second embedding."""
    s = spec.base
    ea, eb = int(2 * spec.params["alpha"]), int(2 * spec.params["beta"])
    v = _linear_factors((s ** (ea + 1), s ** (ea + 3),
                         -s ** (eb + 1), -s ** (eb + 3))).shift(-2)
    return divided_shift_op(v, s ** 4, "Ltilde_cqjacobi")


def cqjacobi_D(spec: FamilySpec) -> PolyOperator:
    return aw_D(cqjacobi_aw_spec(spec, 49))


# ----------------------------------------------------------------------
# continuous q-ultraspherical
# ----------------------------------------------------------------------

def cqultra_L(spec: FamilySpec) -> PolyOperator:
    """v(z) = (1 - t z^2)(z^-2 - q^(1/2)), step q^(1/2)."""
    qh = spec.qpow(Fraction(1, 2))
    t = spec.params["t"]
    one_minus_tz2 = LaurentPoly(0, (Fraction(1), Fraction(0), -t))
    zm2_minus_sq = LaurentPoly(-2, (Fraction(1),)) - LaurentPoly(0, (qh,))
    return divided_shift_op(one_minus_tz2 * zm2_minus_sq, qh, "L_cqultra")


def cqultra_D(spec: FamilySpec) -> PolyOperator:
    return aw_D(cqultra_aw_spec(spec))


def cqultra_nonskew_op(spec: FamilySpec) -> PolyOperator:
    """z^-1 (1 - t z^2) f[q^(1/2) z] + z (1 - t z^-2) f[z / q^(1/2)].

    The difference of the raising and lowering relations; degree-raising
    but not skew symmetric.
    """
    t = spec.params["t"]
    m1 = LaurentPoly(-1, (Fraction(1),)) - LaurentPoly(1, (t,))
    m2 = m1.invert_z()
    step = spec.qpow(Fraction(1, 2))
    inv_step = 1 / step

    def act(f: SymLaurentPoly) -> SymLaurentPoly:
        fl = f.to_laurent()
        return (m1 * fl.dilate(step) + m2 * fl.dilate(inv_step)).to_sym()

    return PolyOperator(act, "sym", 1, "T_cqultra")


# ----------------------------------------------------------------------
# big q-Jacobi
# ----------------------------------------------------------------------

def bigq_L(spec: FamilySpec) -> PolyOperator:
    """((1-x)(1+b/c x) f(qx) - (1 - x/(aq))(1 + x/(cq)) f(x/q)) / x."""
    a, b, c, q = (spec.params[k] for k in "abcq")
    G = XPoly([1, b / c - 1, -b / c])
    M = XPoly([1, 1 / (c * q) - 1 / (a * q), -1 / (a * c * q * q)])
    inv_q = 1 / q

    def act(f: XPoly) -> XPoly:
        return (G * f.compose_scale(q) - M * f.compose_scale(inv_q)).divide_x_exact()

    return PolyOperator(act, "x", 1, "L_bigq")


# ----------------------------------------------------------------------
# D from L (reconstruction) and family dispatch
# ----------------------------------------------------------------------

def d_from_l(L: PolyOperator) -> PolyOperator:
    """The symmetric operator with [D, X] = L, D(1) = 0.

    On monomials D(x^n) = sum_{k<n} X^k L(x^{n-k-1}), computed through
    the recursion D(x^n) = L(x^{n-1}) + X D(x^{n-1}) and extended
    linearly via x-coordinates.
    """
    X = op_x(L.space)
    cache: dict[int, Poly] = {}

    def d_mono(n: int) -> Poly:
        if n == 0:
            return SymLaurentPoly() if L.space == "sym" else XPoly()
        got = cache.get(n)
        if got is None:
            got = L(L.basis(n - 1)) + X(d_mono(n - 1))
            cache[n] = got
        return got

    def act(f: Poly) -> Poly:
        coords = sym_to_x(f) if isinstance(f, SymLaurentPoly) else f
        out = SymLaurentPoly() if L.space == "sym" else XPoly()
        for j, cj in enumerate(coords.coeffs):
            if cj:
                out = out + d_mono(j).scale(cj)
        return out

    return PolyOperator(act, L.space, 0, f"D_from({L.name})")


def family_L(spec: FamilySpec) -> PolyOperator:
    return {AW: aw_L, JACOBI: jacobi_L, CQJ49: cqjacobi_L,
            CQJ09: cqjacobi_L, CQU: cqultra_L, BIGQ: bigq_L}[spec.family](spec)


def family_D(spec: FamilySpec) -> PolyOperator:
    """The explicit symmetric operator, or its reconstruction from L."""
    table = {AW: aw_D, JACOBI: jacobi_D, CQJ49: cqjacobi_D,
             CQJ09: cqjacobi_D, CQU: cqultra_D}
    if has_explicit_D(spec):
        return table[spec.family](spec)
    return d_from_l(family_L(spec))


def has_explicit_D(spec: FamilySpec) -> bool:
    if spec.family == BIGQ:
        return False
    if spec.family == CQU and spec.base_exp != 4:
        return False        # the explicit operator needs q^(1/4)
    return True
