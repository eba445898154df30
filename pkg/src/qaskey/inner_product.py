"""Exact inner products by orthogonal expansion.

The pairing <f, g> = sum_n f_n g_n h_n, where f_n, g_n are the
coefficients of f and g in the family basis and h_0 = 1, reproduces the
family's orthogonality pairing exactly on polynomials, so symmetry and
skew-symmetry of operators can be certified without any integration.
"""

from __future__ import annotations

from fractions import Fraction

from .families import FamilyData
from .laurent import XPoly, x_to_sym
from .operators import PolyOperator


def expand_in_family(f, fd: FamilyData) -> list:
    """Coefficients c with f = sum c_n p_n (unique; exact)."""
    return fd.expand(f)


def inner(f, g, fd: FamilyData) -> Fraction:
    cf, cg = fd.expand(f), fd.expand(g)
    return sum((a * b * h for a, b, h in zip(cf, cg, fd.h)), Fraction(0))


def _basis(fd: FamilyData, j: int):
    mono = XPoly((Fraction(0),) * j + (Fraction(1),))
    return x_to_sym(mono) if fd.space == "sym" else mono


def _pairing_table(op: PolyOperator, fd: FamilyData, max_deg: int):
    """inner(op e_i, e_j) for monomials e_i, e_j up to max_deg."""
    cols = [fd.expand(op(_basis(fd, i))) for i in range(max_deg + 1)]
    basis = [fd.expand(_basis(fd, j)) for j in range(max_deg + 1)]
    table = {}
    for i in range(max_deg + 1):
        for j in range(max_deg + 1):
            table[i, j] = sum(
                (a * b * h for a, b, h in zip(cols[i], basis[j], fd.h)),
                Fraction(0))
    return table


def symmetry_residual(op: PolyOperator, fd: FamilyData, max_deg: int) -> Fraction:
    """max |<op e_i, e_j> - <e_i, op e_j>| over monomial pairs."""
    t = _pairing_table(op, fd, max_deg)
    return max(abs(t[i, j] - t[j, i])
               for i in range(max_deg + 1) for j in range(max_deg + 1))


def skew_symmetry_residual(op: PolyOperator, fd: FamilyData, max_deg: int) -> Fraction:
    """max |<op e_i, e_j> + <e_i, op e_j>| over monomial pairs."""
    t = _pairing_table(op, fd, max_deg)
    return max(abs(t[i, j] + t[j, i])
               for i in range(max_deg + 1) for j in range(max_deg + 1))
