import random
from fractions import Fraction as F

import pytest

from qaskey.laurent import SymLaurentPoly, XPoly, x_to_sym, sym_to_x
from qaskey.qcalc import (central_q_derivative, divided_q_difference,
                          q_derivative, q_pochhammer)


def rand_xpoly(rng, deg=8):
    return XPoly([F(rng.randrange(-9, 10), rng.randrange(1, 8)) for _ in range(deg + 1)])


class TestPochhammer:
    def test_empty_product(self):
        assert q_pochhammer(F(1, 3), F(1, 2), 0) == 1

    def test_single(self):
        assert q_pochhammer(F(1, 3), F(1, 2), 1) == F(2, 3)

    def test_half_half_two(self):
        # (1 - 1/2)(1 - 1/4) = 3/8
        assert q_pochhammer(F(1, 2), F(1, 2), 2) == F(3, 8)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            q_pochhammer(F(1, 2), F(1, 2), -1)


class TestQDerivative:
    def test_constant(self):
        assert q_derivative(XPoly([5]), F(1, 3)).is_zero

    def test_linear(self):
        assert q_derivative(XPoly([0, 1]), F(1, 3)) == XPoly([1])

    def test_square(self):
        q = F(1, 3)
        assert q_derivative(XPoly([0, 0, 1]), q) == XPoly([0, 1 + q])

    def test_pointwise_oracle(self):
        # (f(x) - f(qx)) / ((1-q) x) evaluated directly at rational points
        rng = random.Random(10)
        q = F(2, 5)
        for _ in range(10):
            f = rand_xpoly(rng)
            g = q_derivative(f, q)
            for xv in (F(1, 2), F(3), F(-2, 7)):
                assert g(xv) == (f(xv) - f(q * xv)) / ((1 - q) * xv)

    def test_q_leibniz(self):
        # D_q(fg)(x) = f(qx) D_q g(x) + D_q f(x) g(x)
        rng = random.Random(11)
        q = F(3, 7)
        for _ in range(10):
            f, g = rand_xpoly(rng), rand_xpoly(rng)
            lhs = q_derivative(f * g, q)
            rhs = f.compose_scale(q) * q_derivative(g, q) + q_derivative(f, q) * g
            assert lhs == rhs


class TestCentralQDerivative:
    def test_constant(self):
        assert central_q_derivative(XPoly([3]), F(1, 2)).is_zero

    def test_linear(self):
        assert central_q_derivative(XPoly([0, 1]), F(1, 2)) == XPoly([1])

    def test_square(self):
        q = F(1, 2)
        assert central_q_derivative(XPoly([0, 0, 1]), q) == XPoly([0, q + 1 / q])

    def test_pointwise_oracle(self):
        rng = random.Random(12)
        q = F(2, 3)
        for _ in range(10):
            f = rand_xpoly(rng)
            g = central_q_derivative(f, q)
            for xv in (F(1, 3), F(5, 2)):
                assert g(xv) == (f(q * xv) - f(xv / q)) / ((q - 1 / q) * xv)

    def test_bracket_ratio_vs_plain(self):
        # D_q x^n carries (1-q^n)/(1-q), d_q x^n carries (q^n - q^-n)/(q - 1/q)
        q = F(1, 2)
        for n in range(1, 9):
            mono = XPoly([0] * n + [1])
            assert q_derivative(mono, q).coeff(n - 1) == (1 - q ** n) / (1 - q)
            assert central_q_derivative(mono, q).coeff(n - 1) == \
                (q ** n - q ** (-n)) / (q - 1 / q)

    def test_bad_q(self):
        for bad in (0, 1, -1):
            with pytest.raises(ValueError):
                central_q_derivative(XPoly([0, 1]), bad)


class TestDividedQDifference:
    def test_constant(self):
        assert divided_q_difference(SymLaurentPoly([7]), F(1, 2)).is_zero

    def test_degree_one(self):
        # numerator 2 s-(1/s) times (z - 1/z) cancels exactly; matches d(2x)/dx
        assert divided_q_difference(SymLaurentPoly([0, 1]), F(1, 2)) == SymLaurentPoly([2])

    def test_degree_two_frozen(self):
        # brute-force oracle at s = 1/2:
        # 2 (s^2 - s^-2)(z^2 - z^-2) / ((s - 1/s)(z - 1/z)) = 2 (s + 1/s)(z + 1/z)
        s = F(1, 2)
        got = divided_q_difference(SymLaurentPoly([0, 0, 1]), s)
        assert got == SymLaurentPoly([0, 2 * (s + 1 / s)])
        assert got == SymLaurentPoly([0, 5])

    def test_lowers_degree_by_one(self):
        rng = random.Random(13)
        s = F(2, 3)
        for _ in range(15):
            f = SymLaurentPoly([F(rng.randrange(-5, 6), rng.randrange(1, 5))
                                for _ in range(7)] + [F(1)])
            assert divided_q_difference(f, s).degree == f.degree - 1

    def test_pointwise_oracle(self):
        rng = random.Random(14)
        s = F(3, 5)
        for _ in range(10):
            f = SymLaurentPoly([F(rng.randrange(-5, 6), rng.randrange(1, 5))
                                for _ in range(6)])
            g = divided_q_difference(f, s)
            for zv in (F(2), F(5, 3)):
                expect = 2 * (f(s * zv) - f(zv / s)) / ((s - 1 / s) * (zv - 1 / zv))
                assert g(zv) == expect

    def test_contracts_to_derivative(self):
        # as s -> 1 the divided difference approaches d/dx exactly in rationals
        f = SymLaurentPoly([F(1, 3), F(-2, 5), F(1, 2), F(0), F(1)])
        dfdx = sym_to_x(f).derivative()
        devs = []
        for k in range(2, 9):
            s = 1 - F(1, 2 ** k)
            diff = sym_to_x(divided_q_difference(f, s)) - dfdx
            devs.append(max((abs(c) for c in diff.coeffs), default=F(0)))
        assert all(devs[i + 1] < devs[i] for i in range(len(devs) - 1))
        assert devs[-1] < F(1, 50)

    def test_bad_step(self):
        for bad in (0, 1, -1):
            with pytest.raises(ValueError):
                divided_q_difference(SymLaurentPoly([0, 1]), bad)
