"""The five polynomial families and their exact coefficient data.

A :class:`FamilySpec` names a family and fixes rational parameter
values.  Fractional powers of q are kept rational by carrying a base
scale s with q = s**base_exp, so expressions like q^(alpha/2 + 1/4)
become integer powers of s.  A :class:`FamilyData` holds, for every
degree up to a cap, the polynomial p_n together with

  k_n     leading coefficient in x
  A_n,B_n,C_n   three-term recurrence  x p_n = A_n p_{n+1} + B_n p_n + C_n p_{n-1}
  h_n     squared norm, normalized h_0 = 1, via C_n = A_{n-1} h_n / h_{n-1}
  lam_n   eigenvalue of the family's second-order operator, lam_0 = 0
  gamma_n slope of the skew operator, gamma_n = lam_{n+1} - lam_n

Families whose literature data stops at the recurrence (big q-Jacobi
beyond the hypergeometric sum, the middle recurrence coefficient of
continuous q-Jacobi) source the missing numbers from exact expansion,
never from guesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .laurent import SymLaurentPoly, XPoly, sym_to_x, x_to_sym, _frac
from .qcalc import q_pochhammer, q_pochhammer_multi

Rat = Union[int, Fraction]

AW = "askey-wilson"
JACOBI = "jacobi"
CQJ49 = "continuous-q-jacobi-e49"
CQJ09 = "continuous-q-jacobi-e09"
CQU = "continuous-q-ultraspherical"
BIGQ = "big-q-jacobi"

#: families exposed on the command line (the two continuous q-Jacobi
#: embeddings construct the same polynomials; e49 is the primary build)
CLI_FAMILIES = (AW, JACOBI, "continuous-q-jacobi", CQU, BIGQ)


class InadmissibleParameters(ValueError):
    """Parameter values that hit an excluded denominator or power of q."""


class ExpansionError(ArithmeticError):
    """A basis expansion left a residual; the family data is corrupt."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Mapping[str, Fraction]
    base: Fraction | None = None   # s with q = s**base_exp
    base_exp: int = 1

    @property
    def q(self) -> Fraction:
        if "q" in self.params:
            return self.params["q"]
        raise KeyError(f"family {self.family} carries no q")

    def qpow(self, e: Rat) -> Fraction:
        """q**e as an exact rational, via the base scale."""
        if self.base is None:
            raise InadmissibleParameters(f"family {self.family} has no base scale")
        ex = _frac(e) * self.base_exp
        if ex.denominator != 1:
            raise InadmissibleParameters(
                f"q^({e}) is not an integer power of the base scale s={self.base}")
        return self.base ** int(ex)

    def sorted_params(self) -> dict:
        return {k: self.params[k] for k in sorted(self.params)}


# ----------------------------------------------------------------------
# parameter-point constructors
# ----------------------------------------------------------------------

def aw_spec(a: Rat, b: Rat, c: Rat, d: Rat, q: Rat | None = None,
            s: Rat | None = None, m: int = 1) -> FamilySpec:
    """Askey-Wilson parameters; pass either q directly or a base s with q=s^m."""
    if (q is None) == (s is None):
        raise ValueError("give exactly one of q or a base scale s")
    if q is None:
        base = _frac(s)
        qv = base ** m
    else:
        base, m, qv = _frac(q), 1, _frac(q)
    return FamilySpec(AW, {"a": _frac(a), "b": _frac(b), "c": _frac(c),
                           "d": _frac(d), "q": qv}, base=base, base_exp=m)


def jacobi_spec(alpha: Rat, beta: Rat) -> FamilySpec:
    al, be = _frac(alpha), _frac(beta)
    if al <= -1 or be <= -1:
        raise InadmissibleParameters("alpha and beta must exceed -1")
    return FamilySpec(JACOBI, {"alpha": al, "beta": be}, base=None, base_exp=0)


def cqjacobi_spec(alpha: Rat, beta: Rat, s: Rat, embedding: int = 49) -> FamilySpec:
    al, be, sv = _frac(alpha), _frac(beta), _frac(s)
    if (2 * al).denominator != 1 or (2 * be).denominator != 1:
        raise InadmissibleParameters(
            "alpha, beta must be half-integers so q^(alpha/2+1/4) is a power of s")
    if not (0 < sv < 1):
        raise InadmissibleParameters("base scale s must lie in (0,1)")
    if al < 0 or be < 0:
        raise InadmissibleParameters(
            "alpha, beta >= 0 keeps the induced parameters inside the unit interval")
    family = CQJ49 if embedding == 49 else CQJ09
    return FamilySpec(family, {"alpha": al, "beta": be, "q": sv ** 4},
                      base=sv, base_exp=4)


def cqultra_spec(u: Rat, s: Rat, m: int = 4) -> FamilySpec:
    """Continuous q-ultraspherical with t = u^2 (so t^(1/2) stays rational).

    The base convention is q = s^m with m = 4 or 2.  m = 4 makes q^(1/4)
    rational, enabling the four-parameter restriction and the explicit
    second-order operator; m = 2 covers points like q = 1/4 where only
    q^(1/2) is needed (recurrence construction, D rebuilt from L).
    """
    uv, sv = _frac(u), _frac(s)
    if m not in (2, 4):
        raise InadmissibleParameters("base exponent must be 2 or 4")
    if not (0 < abs(uv) < 1):
        raise InadmissibleParameters("u must satisfy 0 < |u| < 1")
    if not (0 < sv < 1):
        raise InadmissibleParameters("base scale s must lie in (0,1)")
    return FamilySpec(CQU, {"t": uv * uv, "u": uv, "q": sv ** m},
                      base=sv, base_exp=m)


def bigq_spec(a: Rat, b: Rat, c: Rat, q: Rat) -> FamilySpec:
    av, bv, cv, qv = _frac(a), _frac(b), _frac(c), _frac(q)
    if av == 0 or cv == 0:
        raise InadmissibleParameters("a and c must be nonzero")
    return FamilySpec(BIGQ, {"a": av, "b": bv, "c": cv, "q": qv},
                      base=qv, base_exp=1)


def cqjacobi_aw_spec(spec: FamilySpec, embedding: int = 49) -> FamilySpec:
    """The Askey-Wilson parameter point a continuous q-Jacobi family restricts."""
    s = spec.base
    al, be = spec.params["alpha"], spec.params["beta"]
    ea, eb = int(2 * al), int(2 * be)
    if embedding == 49:
        # base q^(1/2) = s^2 and quadruple (q^(a/2+1/4), -q^(b/2+1/4), q^(1/4), -q^(1/4))
        return aw_spec(s ** (ea + 1), -s ** (eb + 1), s, -s, s=s, m=2)
    # base q = s^4 and quadruple (q^(a/2+1/4), q^(a/2+3/4), -q^(b/2+1/4), -q^(b/2+3/4))
    return aw_spec(s ** (ea + 1), s ** (ea + 3), -s ** (eb + 1), -s ** (eb + 3),
                   s=s, m=4)


def cqultra_aw_spec(spec: FamilySpec) -> FamilySpec:
    """AW quadruple (t^(1/2), -t^(1/2), q^(1/4), -q^(1/4)) at base q^(1/2)."""
    if spec.base_exp != 4:
        raise InadmissibleParameters(
            "the four-parameter restriction needs q^(1/4), i.e. base q = s^4")
    s, u = spec.base, spec.params["u"]
    return aw_spec(u, -u, s, -s, s=s, m=2)


# ----------------------------------------------------------------------
# admissibility
# ----------------------------------------------------------------------

def validate_spec(spec: FamilySpec, n_max: int = 16) -> None:
    """Reject parameter points that break any denominator up to degree n_max."""
    if spec.family == JACOBI:
        al, be = spec.params["alpha"], spec.params["beta"]
        if al <= -1 or be <= -1:
            raise InadmissibleParameters("alpha and beta must exceed -1")
        return
    q = spec.q
    if not (0 < q < 1):
        raise InadmissibleParameters("q must lie in (0,1)")
    if spec.family == AW:
        _validate_aw(spec.params, n_max)
    elif spec.family in (CQJ49, CQJ09):
        _validate_aw(cqjacobi_aw_spec(spec, 49).params, n_max)
        _validate_aw(cqjacobi_aw_spec(spec, 9).params, n_max)
    elif spec.family == CQU:
        if spec.base_exp == 4:
            _validate_aw(cqultra_aw_spec(spec).params, n_max)
        # with q, t in (0,1) every denominator 1 - t q^n is automatically safe
    elif spec.family == BIGQ:
        a, b, c = (spec.params[k] for k in "abc")
        for n in range(1, n_max + 2):
            if a * q ** n == 1 or c * q ** n == -1 or a * b * q ** n == 1:
                raise InadmissibleParameters(f"degenerate denominator at n={n}")
    else:
        raise ValueError(f"unknown family {spec.family}")


def _validate_aw(params: Mapping[str, Fraction], n_max: int) -> None:
    a, b, c, d, q = (params[k] for k in "abcdq")
    if 0 in (a, b, c, d):
        raise InadmissibleParameters("zero Askey-Wilson parameter")
    prods = [a * a, b * b, c * c, d * d,
             a * b, a * c, a * d, b * c, b * d, c * d]
    for p in prods:
        w = p
        for _ in range(2 * n_max + 1):   # p * q^k == 1 <=> p == q^-k
            if w == 1:
                raise InadmissibleParameters(f"product {p} is an inverse power of q")
            w *= q
    abcd = a * b * c * d
    w = abcd / q                         # abcd * q^m for m = -1 .. 2 n_max + 2
    for _ in range(2 * n_max + 4):
        if w == 1:
            raise InadmissibleParameters("abcd hits an inverse power of q")
        w *= q


# ----------------------------------------------------------------------
# hypergeometric constructions
# ----------------------------------------------------------------------

def _aw_phi43(n: int, a: Fraction, b: Fraction, c: Fraction, d: Fraction,
              q: Fraction) -> SymLaurentPoly:
    """(ab,ac,ad;q)_n a^-n 4phi3(q^-n, q^(n-1)abcd, az, a/z; ab,ac,ad; q,q)."""
    abcd = a * b * c * d
    out = SymLaurentPoly([Fraction(1)])
    term = SymLaurentPoly([Fraction(1)])   # (az;q)_k (a/z;q)_k
    r = Fraction(1)
    qinvn = q ** (-n)
    for k in range(1, n + 1):
        j = k - 1
        r *= (1 - qinvn * q ** j) * (1 - abcd * q ** (n - 1 + j)) * q
        r /= (1 - a * b * q ** j) * (1 - a * c * q ** j) * (1 - a * d * q ** j) * (1 - q ** k)
        aj = a * q ** j
        term = term * SymLaurentPoly([1 + aj * aj, -aj])
        out = out + term.scale(r)
    pref = q_pochhammer_multi((a * b, a * c, a * d), q, n) * a ** (-n)
    return out.scale(pref)


def aw_polynomial(n: int, spec: FamilySpec) -> SymLaurentPoly:
    p = spec.params
    return _aw_phi43(n, p["a"], p["b"], p["c"], p["d"], p["q"])


def bigq_polynomial(n: int, spec: FamilySpec) -> XPoly:
    """3phi2(q^-n, abq^(n+1), x; aq, -cq; q, q), a degree-n polynomial in x."""
    a, b, c, q = (spec.params[k] for k in "abcq")
    out = XPoly([Fraction(1)])
    term = XPoly([Fraction(1)])            # (x;q)_k
    r = Fraction(1)
    qinvn = q ** (-n)
    for k in range(1, n + 1):
        j = k - 1
        r *= (1 - qinvn * q ** j) * (1 - a * b * q ** (n + 1 + j)) * q
        r /= (1 - a * q ** k) * (1 + c * q ** k) * (1 - q ** k)
        term = term * XPoly([1, -q ** j])
        out = out + term.scale(r)
    return out


def cqjacobi_polynomial(n: int, spec: FamilySpec, embedding: int = 49) -> SymLaurentPoly:
    s = spec.base
    al, be = spec.params["alpha"], spec.params["beta"]
    ea, eb = int(2 * al), int(2 * be)
    q = s ** 4
    aw = cqjacobi_aw_spec(spec, embedding)
    raw = aw_polynomial(n, aw)
    minus = -s ** (ea + eb + 2)            # -q^((alpha+beta+1)/2), base q^(1/2)=s^2
    if embedding == 49:
        denom = q_pochhammer(minus, s ** 2, n) * q_pochhammer(q, q, n)
    else:
        denom = q_pochhammer(minus, s ** 2, 2 * n) * q_pochhammer(q, q, n)
    return raw.scale(s ** ((ea + 1) * n) / denom)


def cqultra_polynomial(n: int, spec: FamilySpec) -> SymLaurentPoly:
    s, u = spec.base, spec.params["u"]
    t, q = u * u, s ** 4
    raw = aw_polynomial(n, cqultra_aw_spec(spec))
    pref = q_pochhammer(t, s * s, n) / (
        q_pochhammer(s * s * t, q, n) * q_pochhammer(q, q, n))
    return raw.scale(pref)


def jacobi_polynomial(n: int, spec: FamilySpec) -> XPoly:
    return build_family(spec, n).polys[n]


# ----------------------------------------------------------------------
# family data
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyData:
    """Exact per-degree data for one family at one parameter point.

    ``polys`` runs to degree n_max+1 and ``lam`` to index n_max+1 so
    that every check at n <= n_max has its neighbours available.
    """

    spec: FamilySpec
    space: str                       # "sym" or "x"
    n_max: int
    polys: tuple                     # native polynomials, 0 .. n_max+1
    polys_x: tuple                   # the same in x coordinates
    k: tuple                         # leading x-coefficients, 0 .. n_max+1
    A: tuple                         # 0 .. n_max
    B: tuple
    C: tuple                         # C_0 = 0 by convention
    h: tuple                         # h_0 = 1
    lam: tuple                       # 0 .. n_max+1
    gamma: tuple                     # 0 .. n_max

    @property
    def family(self) -> str:
        return self.spec.family

    def poly_native(self, f):
        """Coerce an XPoly into the family's native space if needed."""
        if self.space == "sym" and isinstance(f, XPoly):
            return x_to_sym(f)
        return f

    def expand(self, f) -> list:
        """Coefficients of f in the family basis, by leading-term elimination."""
        if isinstance(f, SymLaurentPoly):
            f = sym_to_x(f)
        return _expand_x(self.polys_x, self.k, f)

    def reconstruct(self, coeffs: Sequence[Fraction]) -> XPoly:
        out = XPoly()
        for i, c in enumerate(coeffs):
            if c:
                out = out + self.polys_x[i].scale(c)
        return out


def _expand_x(polys_x: Sequence[XPoly], k: Sequence[Fraction], f: XPoly) -> list:
    if f.is_zero:
        return []
    deg = f.degree
    if deg >= len(polys_x):
        raise ExpansionError(f"degree {deg} exceeds the available family data")
    rem = list(f.coeffs)
    out = [Fraction(0)] * (deg + 1)
    for m in range(deg, -1, -1):
        c = rem[m] / k[m]
        out[m] = c
        if c:
            for i, v in enumerate(polys_x[m].coeffs):
                rem[i] -= c * v
    if any(rem):
        raise ExpansionError("expansion left a nonzero residual")
    return out


def _polys_from_recurrence(A, B, C, n_hi, space):
    """Seed p_0 = 1 and iterate p_{n+1} = ((x - B_n) p_n - C_n p_{n-1}) / A_n."""
    if space == "sym":
        one = SymLaurentPoly([Fraction(1)])
        xs = SymLaurentPoly([Fraction(0), Fraction(1, 2)])
        xmul = lambda p: p * xs
    else:
        one = XPoly([Fraction(1)])
        xmul = lambda p: p.shift_x(1)
    polys = [one]
    for n in range(n_hi):
        nxt = xmul(polys[n]) - polys[n].scale(B[n])
        if n > 0:
            nxt = nxt - polys[n - 1].scale(C[n])
        polys.append(nxt.scale(1 / A[n]))
    return polys


def _leading_k(polys_x) -> tuple:
    return tuple(p.coeffs[-1] for p in polys_x)


def _norms_recursive(A, C, n_hi) -> tuple:
    h = [Fraction(1)]
    for n in range(1, n_hi + 1):
        h.append(h[n - 1] * C[n] / A[n - 1])
    return tuple(h)


# -- per-family coefficient formulas -------------------------------------

def aw_coefficients(n: int, spec: FamilySpec):
    """(A_n, B_n, C_n, h_n, lam_n, gamma_n) from the closed Askey-Wilson forms."""
    a, b, c, d, q = (spec.params[k] for k in "abcdq")
    abcd = a * b * c * d
    kn = _aw_k(n, abcd, q)
    A = kn / _aw_k(n + 1, abcd, q)
    B = _aw_B(n, a, b, c, d, q)
    if n >= 1:
        C = (_aw_k(n - 1, abcd, q) / kn) * (_aw_h(n, a, b, c, d, q) /
                                            _aw_h(n - 1, a, b, c, d, q))
    else:
        C = Fraction(0)
    return (A, B, C, _aw_h(n, a, b, c, d, q), _aw_lam(n, abcd, q),
            _aw_gamma(n, abcd, q))


def _aw_k(n, abcd, q):
    return Fraction(2) ** n * q_pochhammer(abcd * q ** (n - 1), q, n)


def _aw_h(n, a, b, c, d, q):
    abcd = a * b * c * d
    num = (1 - abcd / q) * q_pochhammer_multi(
        (q, a * b, a * c, a * d, b * c, b * d, c * d), q, n)
    den = (1 - abcd * q ** (2 * n - 1)) * q_pochhammer(abcd / q, q, n)
    return num / den


def _aw_B(n, a, b, c, d, q):
    abcd = a * b * c * d
    e1 = a + b + c + d
    e3 = b * c * d + a * b * d + a * c * d + a * b * c
    num = (e1 * (q - abcd * q ** (n - 1) - abcd * q ** n + abcd * q ** (2 * n))
           + e3 * (1 - q ** n - q ** (n + 1) + abcd * q ** (2 * n - 1)))
    den = 2 * (1 - abcd * q ** (2 * n - 2)) * (1 - abcd * q ** (2 * n))
    return num * q ** (n - 1) / den


def _aw_lam(n, abcd, q):
    return 2 * (q ** (-n) - 1) * (1 - abcd * q ** (n - 1)) / (1 - 1 / q)


def _aw_gamma(n, abcd, q):
    return 2 * (abcd * q ** n - q ** (-n))


def jacobi_coefficients(n: int, spec: FamilySpec):
    al, be = spec.params["alpha"], spec.params["beta"]
    ab = al + be
    if n == 0:
        A = Fraction(2) / (ab + 2)
        B = (be - al) / (ab + 2)
        C = Fraction(0)
    else:
        A = 2 * (n + 1) * (n + ab + 1) / ((2 * n + ab + 1) * (2 * n + ab + 2))
        B = (be * be - al * al) / ((2 * n + ab) * (2 * n + ab + 2))
        C = 2 * (n + al) * (n + be) / ((2 * n + ab) * (2 * n + ab + 1))
    lam = Fraction(-n * (n + ab + 1), 2)
    gamma = -(2 * n + ab + 2) / Fraction(2)
    return A, B, C, lam, gamma


def cqjacobi_AC(n: int, spec: FamilySpec):
    """The recurrence end coefficients for continuous q-Jacobi (C_0 := 0)."""
    s = spec.base
    al, be = spec.params["alpha"], spec.params["beta"]
    ea, eb = int(2 * al), int(2 * be)
    q = s ** 4

    def qp(num4: int) -> Fraction:           # q^(num4/4) = s^num4
        return s ** num4

    A = ((1 - q ** (n + 1)) * (1 - qp(4 * n + 2 * ea + 2 * eb + 4))
         / (2 * qp(ea + 1) * (1 - qp(4 * n + ea + eb + 2))
            * (1 - qp(4 * n + ea + eb + 4))))
    if n >= 1:
        C = (qp(ea + 1) * (1 - qp(4 * n + 2 * ea)) * (1 - qp(4 * n + 2 * eb))
             / (2 * (1 - qp(4 * n + ea + eb)) * (1 - qp(4 * n + ea + eb + 2))))
    else:
        C = Fraction(0)
    return A, C


def cqjacobi_gamma(n: int, spec: FamilySpec) -> Fraction:
    """Slope for the q^(1/2)-step operator: 2 (q^((n+a+b+2)/2) - q^(-n/2))."""
    s = spec.base
    ea, eb = int(2 * spec.params["alpha"]), int(2 * spec.params["beta"])
    return 2 * (s ** (2 * n + ea + eb + 4) - s ** (-2 * n))


def cqjacobi_gamma_tilde(n: int, spec: FamilySpec) -> Fraction:
    """Slope for the whole-q-step operator: 2 (q^(n+a+b+2) - q^-n)."""
    s = spec.base
    ea, eb = int(2 * spec.params["alpha"]), int(2 * spec.params["beta"])
    return 2 * (s ** (4 * n + 2 * ea + 2 * eb + 8) - s ** (-4 * n))


def cqultra_coefficients(n: int, spec: FamilySpec):
    t, q = spec.params["t"], spec.q
    A = (1 - q ** (n + 1)) / (2 * (1 - t * q ** n))
    C = (1 - t * t * q ** (n - 1)) / (2 * (1 - t * q ** n)) if n >= 1 else Fraction(0)
    return A, Fraction(0), C


# -- builders -------------------------------------------------------------

def build_family(spec: FamilySpec, n_max: int) -> FamilyData:
    validate_spec(spec, n_max)
    if spec.family == AW:
        return _build_aw(spec, n_max)
    if spec.family == JACOBI:
        return _build_jacobi(spec, n_max)
    if spec.family in (CQJ49, CQJ09):
        return _build_cqjacobi(spec, n_max)
    if spec.family == CQU:
        return _build_cqultra(spec, n_max)
    if spec.family == BIGQ:
        return _build_bigq(spec, n_max)
    raise ValueError(f"unknown family {spec.family}")


def _build_aw(spec, n_max):
    hi = n_max + 1
    a, b, c, d, q = (spec.params[k] for k in "abcdq")
    abcd = a * b * c * d
    polys = tuple(aw_polynomial(n, spec) for n in range(hi + 1))
    polys_x = tuple(sym_to_x(p) for p in polys)
    A = tuple(_aw_k(n, abcd, q) / _aw_k(n + 1, abcd, q) for n in range(n_max + 1))
    B = tuple(_aw_B(n, a, b, c, d, q) for n in range(n_max + 1))
    hs = tuple(_aw_h(n, a, b, c, d, q) for n in range(n_max + 1))
    C = (Fraction(0),) + tuple(A[n - 1] * hs[n] / hs[n - 1] for n in range(1, n_max + 1))
    lam = tuple(_aw_lam(n, abcd, q) for n in range(hi + 1))
    gamma = tuple(_aw_gamma(n, abcd, q) for n in range(n_max + 1))
    return FamilyData(spec, "sym", n_max, polys, polys_x, _leading_k(polys_x),
                      A, B, C, hs, lam, gamma)


def _build_jacobi(spec, n_max):
    hi = n_max + 1
    coef = [jacobi_coefficients(n, spec) for n in range(hi + 1)]
    A = tuple(c[0] for c in coef)
    B = tuple(c[1] for c in coef)
    C = tuple(c[2] for c in coef)
    polys = tuple(_polys_from_recurrence(A, B, C, hi, "x"))
    lam = tuple(c[3] for c in coef)
    gamma = tuple(c[4] for c in coef[:n_max + 1])
    return FamilyData(spec, "x", n_max, polys, polys, _leading_k(polys),
                      A[:n_max + 1], B[:n_max + 1], C[:n_max + 1],
                      _norms_recursive(A, C, n_max), lam, gamma)


def _build_cqjacobi(spec, n_max):
    hi = n_max + 1
    embedding = 49 if spec.family == CQJ49 else 9
    polys = tuple(cqjacobi_polynomial(n, spec, embedding) for n in range(hi + 1))
    polys_x = tuple(sym_to_x(p) for p in polys)
    k = _leading_k(polys_x)
    AC = [cqjacobi_AC(n, spec) for n in range(n_max + 1)]
    A = tuple(v[0] for v in AC)
    C = tuple(v[1] for v in AC)
    B = tuple(_expand_x(polys_x, k, polys_x[n].shift_x(1))[n]
              for n in range(n_max + 1))
    # eigenvalues of the q^(1/2)-step operator through the restriction
    s = spec.base
    ea, eb = int(2 * spec.params["alpha"]), int(2 * spec.params["beta"])
    lam = tuple(2 * (s ** (-2 * n) - 1) * (1 - s ** (2 * n + ea + eb + 2))
                / (1 - s ** (-2)) for n in range(hi + 1))
    gamma = tuple(cqjacobi_gamma(n, spec) for n in range(n_max + 1))
    return FamilyData(spec, "sym", n_max, polys, polys_x, k, A, B, C,
                      _norms_recursive(A, C, n_max), lam, gamma)


def _build_cqultra(spec, n_max):
    hi = n_max + 1
    coef = [cqultra_coefficients(n, spec) for n in range(hi + 1)]
    A = tuple(v[0] for v in coef)
    B = tuple(v[1] for v in coef)
    C = tuple(v[2] for v in coef)
    if spec.base_exp == 4:
        polys = tuple(cqultra_polynomial(n, spec) for n in range(hi + 1))
    else:
        # q^(1/4) is not available at base q = s^2; the recurrence is
        polys = tuple(_polys_from_recurrence(A, B, C, hi, "sym"))
    polys_x = tuple(sym_to_x(p) for p in polys)
    t = spec.params["t"]
    qh = spec.qpow(Fraction(1, 2))                 # q^(1/2)
    lam = tuple(2 * (qh ** (-n) - 1) * (1 - t * qh ** n)
                / (1 - 1 / qh) for n in range(hi + 1))
    gamma = tuple(2 * (t * qh ** (n + 1) - qh ** (-n)) for n in range(n_max + 1))
    return FamilyData(spec, "sym", n_max, polys, polys_x, _leading_k(polys_x),
                      A[:n_max + 1], B[:n_max + 1], C[:n_max + 1],
                      _norms_recursive(A, C, n_max), lam, gamma)


def _build_bigq(spec, n_max):
    from . import operators   # deferred: operators imports this module

    hi = n_max + 1
    polys = tuple(bigq_polynomial(n, spec) for n in range(hi + 1))
    k = _leading_k(polys)
    ABC = [_recurrence_row(polys, k, n) for n in range(n_max + 1)]
    A = tuple(v[0] for v in ABC)
    B = tuple(v[1] for v in ABC)
    C = tuple(v[2] for v in ABC)
    # slopes read off the degree-raising operator; eigenvalues accumulate
    L = operators.bigq_L(spec)
    gamma = []
    for n in range(hi + 1):
        Lx = L(XPoly((Fraction(0),) * n + (Fraction(1),)))
        gamma.append(Lx.coeff(n + 1))
    lam = [Fraction(0)]
    for n in range(hi):
        lam.append(lam[-1] + gamma[n])
    return FamilyData(spec, "x", n_max, polys, polys, k, A, B, C,
                      _norms_recursive(A, C, n_max), tuple(lam),
                      tuple(gamma[:n_max + 1]))


def _recurrence_row(polys_x, k, n):
    coeffs = _expand_x(polys_x, k, polys_x[n].shift_x(1))
    A = coeffs[n + 1]
    B = coeffs[n]
    C = coeffs[n - 1] if n >= 1 else Fraction(0)
    for i, v in enumerate(coeffs):
        if v and abs(i - n) > 1:
            raise ExpansionError("x p_n expands outside its three neighbours")
    return A, B, C


def recurrence_from_expansion(fd: FamilyData, n: int):
    """(A_n, B_n, C_n) recovered from expanding x * p_n in the family basis."""
    return _recurrence_row(fd.polys_x, fd.k, n)


def norms(fd: FamilyData, n: int) -> Fraction:
    return fd.h[n]


def aw_norm_closed(spec: FamilySpec, n: int) -> Fraction:
    a, b, c, d, q = (spec.params[k] for k in "abcdq")
    return _aw_h(n, a, b, c, d, q)


# ----------------------------------------------------------------------
# seeded parameter sampling
# ----------------------------------------------------------------------

_HALF_GRID = tuple(Fraction(k, 2) for k in range(0, 6))


def _rat01(rng: random.Random, den_max: int = 8) -> Fraction:
    den = rng.randrange(2, den_max + 1)
    return Fraction(rng.randrange(1, den), den)


def _rat_signed(rng: random.Random, den_max: int = 8) -> Fraction:
    v = _rat01(rng, den_max)
    return -v if rng.random() < 0.5 else v


def draw_spec(family: str, rng: random.Random) -> FamilySpec:
    if family == AW:
        return aw_spec(_rat_signed(rng), _rat_signed(rng), _rat_signed(rng),
                       _rat_signed(rng), q=_rat01(rng))
    if family == JACOBI:
        return jacobi_spec(rng.randrange(0, 3) - 1 + _rat01(rng, 6),
                           rng.randrange(0, 3) - 1 + _rat01(rng, 6))
    if family in (CQJ49, CQJ09, "continuous-q-jacobi"):
        emb = 49 if family != CQJ09 else 9
        return cqjacobi_spec(rng.choice(_HALF_GRID), rng.choice(_HALF_GRID),
                             _rat01(rng, 5), embedding=emb)
    if family == CQU:
        return cqultra_spec(_rat_signed(rng, 6), _rat01(rng, 5))
    if family == BIGQ:
        return bigq_spec(_rat01(rng), _rat01(rng), _rat01(rng), _rat01(rng))
    raise ValueError(f"unknown family {family}")


def sample_specs(family: str, count: int, seed: int, n_max: int = 16):
    """Deterministically draw distinct admissible parameter points."""
    # string seeds hash deterministically across processes (unlike tuples)
    rng = random.Random(f"{seed}:{family}")
    out = []
    seen = set()
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 500 * count:
            raise RuntimeError("sampler failed to find admissible parameters")
        try:
            spec = draw_spec(family, rng)
            validate_spec(spec, n_max)
        except InadmissibleParameters:
            continue
        key = tuple(sorted(spec.params.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(spec)
    return out
