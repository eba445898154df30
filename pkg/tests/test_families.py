from fractions import Fraction as F

import pytest

from qaskey import families as fam
from qaskey.laurent import SymLaurentPoly, XPoly, sym_to_x


AW_SAMPLE = dict(a=F(1, 3), b=F(1, 4), c=F(1, 5), d=F(-1, 6), q=F(1, 2))


@pytest.fixture(scope="module")
def aw_fd():
    return fam.build_family(fam.aw_spec(**AW_SAMPLE), 8)


class TestAskeyWilson:
    def test_p0(self):
        spec = fam.aw_spec(**AW_SAMPLE)
        assert fam.aw_polynomial(0, spec) == SymLaurentPoly([1])

    def test_leading_coefficient_p1(self, aw_fd):
        abcd = AW_SAMPLE["a"] * AW_SAMPLE["b"] * AW_SAMPLE["c"] * AW_SAMPLE["d"]
        assert aw_fd.k[1] == 2 * (1 - abcd)

    def test_k_closed_form(self, aw_fd):
        from qaskey.qcalc import q_pochhammer
        abcd = AW_SAMPLE["a"] * AW_SAMPLE["b"] * AW_SAMPLE["c"] * AW_SAMPLE["d"]
        q = AW_SAMPLE["q"]
        for n in range(7):
            assert aw_fd.k[n] == 2 ** n * q_pochhammer(abcd * q ** (n - 1), q, n)

    def test_degree_exactness(self, aw_fd):
        for n in range(9):
            assert aw_fd.polys[n].degree == n

    def test_recurrence_matches_hypergeometric(self, aw_fd):
        rebuilt = fam._polys_from_recurrence(aw_fd.A, aw_fd.B, aw_fd.C, 8, "sym")
        for n in range(9):
            assert rebuilt[n] == aw_fd.polys[n]

    def test_expansion_recovers_recurrence(self, aw_fd):
        for n in range(7):
            assert fam.recurrence_from_expansion(aw_fd, n) == \
                (aw_fd.A[n], aw_fd.B[n], aw_fd.C[n])

    def test_lambda_gamma(self, aw_fd):
        q = AW_SAMPLE["q"]
        abcd = AW_SAMPLE["a"] * AW_SAMPLE["b"] * AW_SAMPLE["c"] * AW_SAMPLE["d"]
        assert aw_fd.lam[0] == 0
        assert aw_fd.gamma[0] == 2 * (abcd - 1)
        for n in range(8):
            assert aw_fd.gamma[n] == 2 * (abcd * q ** n - q ** (-n))
            assert aw_fd.gamma[n] == aw_fd.lam[n + 1] - aw_fd.lam[n]
            assert aw_fd.gamma[n] != 0

    def test_A0_k_ratio(self, aw_fd):
        assert aw_fd.A[0] * aw_fd.k[1] == aw_fd.k[0] == 1

    def test_h1_closed_form(self, aw_fd):
        a, b, c, d, q = (AW_SAMPLE[k] for k in "abcdq")
        abcd = a * b * c * d
        expect = ((1 - abcd / q) * (1 - q) * (1 - a * b) * (1 - a * c) * (1 - a * d)
                  * (1 - b * c) * (1 - b * d) * (1 - c * d)
                  / ((1 - abcd * q) * (1 - abcd / q)))
        assert fam.norms(aw_fd, 1) == expect
        # recursive path agrees
        assert aw_fd.h[1] == aw_fd.C[1] / aw_fd.A[0]

    def test_norm_positivity(self, aw_fd):
        for n in range(8):
            assert aw_fd.h[n] > 0

    def test_inadmissible_rejected(self):
        # abcd = q hits the (1 - abcd/q) denominator
        spec = fam.aw_spec(F(1, 2), F(1, 2), F(1, 2), F(4), q=F(1, 2))
        with pytest.raises(fam.InadmissibleParameters):
            fam.validate_spec(spec, 4)

    def test_zero_parameter_rejected(self):
        with pytest.raises(fam.InadmissibleParameters):
            fam.validate_spec(fam.aw_spec(0, F(1, 2), F(1, 3), F(1, 4), q=F(1, 2)), 4)


class TestJacobi:
    def test_p1_closed_form(self):
        fd = fam.build_family(fam.jacobi_spec(1, 2), 4)
        # P_1 = ((alpha+beta+2) x + alpha-beta)/2
        assert fd.polys[1] == XPoly([F(-1, 2), F(5, 2)])

    def test_legendre_values(self):
        fd = fam.build_family(fam.jacobi_spec(0, 0), 4)
        assert fd.polys[2] == XPoly([F(-1, 2), 0, F(3, 2)])
        assert fd.B[0] == 0

    def test_lambda_formula(self):
        al, be = F(1, 2), F(3, 4)
        fd = fam.build_family(fam.jacobi_spec(al, be), 6)
        for n in range(7):
            assert fd.lam[n] == -F(n) * (n + al + be + 1) / 2
            if n < 6:
                assert fd.gamma[n] == -(2 * n + al + be + 2) / 2

    def test_alpha_beta_bounds(self):
        with pytest.raises(fam.InadmissibleParameters):
            fam.jacobi_spec(-1, 0)


class TestContinuousQJacobi:
    def test_embeddings_agree(self):
        spec = fam.cqjacobi_spec(1, 2, F(1, 2))
        for n in range(9):
            assert fam.cqjacobi_polynomial(n, spec, 49) == \
                fam.cqjacobi_polynomial(n, spec, 9)

    def test_embeddings_agree_half_integer(self):
        spec = fam.cqjacobi_spec(F(1, 2), F(3, 2), F(2, 5))
        for n in range(6):
            assert fam.cqjacobi_polynomial(n, spec, 49) == \
                fam.cqjacobi_polynomial(n, spec, 9)

    def test_p0_and_degree(self):
        spec = fam.cqjacobi_spec(0, 0, F(1, 2))
        fd = fam.build_family(spec, 6)
        assert fd.polys[0] == SymLaurentPoly([1])
        for n in range(7):
            assert fd.polys[n].degree == n

    def test_AC_sign(self):
        spec = fam.cqjacobi_spec(0, 0, F(1, 2))
        fd = fam.build_family(spec, 4)
        assert fd.A[0] * fd.C[1] > 0

    def test_AC_match_expansion(self):
        spec = fam.cqjacobi_spec(1, 2, F(1, 2))
        fd = fam.build_family(spec, 6)
        for n in range(1, 6):
            A, B, C = fam.recurrence_from_expansion(fd, n)
            assert (A, C) == (fd.A[n], fd.C[n])

    def test_quarter_integer_rejected(self):
        with pytest.raises(fam.InadmissibleParameters):
            fam.cqjacobi_spec(F(1, 4), 0, F(1, 2))


class TestContinuousQUltraspherical:
    def test_c0_c1(self):
        spec = fam.cqultra_spec(F(1, 2), F(1, 2))
        fd = fam.build_family(spec, 4)
        t, q = spec.params["t"], spec.q
        assert fd.polys[0] == SymLaurentPoly([1])
        assert fd.polys[1] == SymLaurentPoly([0, (1 - t) / (1 - q)])

    def test_recurrence_has_no_middle_term(self):
        spec = fam.cqultra_spec(F(1, 3), F(1, 2))
        fd = fam.build_family(spec, 6)
        for n in range(6):
            assert fam.recurrence_from_expansion(fd, n)[1] == 0 == fd.B[n]

    def test_specialization_matches_recurrence(self):
        spec = fam.cqultra_spec(F(2, 3), F(2, 5))
        fd = fam.build_family(spec, 6)
        rebuilt = fam._polys_from_recurrence(fd.A, fd.B, fd.C, 6, "sym")
        for n in range(7):
            assert rebuilt[n] == fd.polys[n]

    def test_u_bounds(self):
        with pytest.raises(fam.InadmissibleParameters):
            fam.cqultra_spec(1, F(1, 2))


class TestBigQJacobi:
    def test_value_at_one(self):
        spec = fam.bigq_spec(F(1, 3), F(1, 4), F(1, 5), F(1, 2))
        for n in range(9):
            assert fam.bigq_polynomial(n, spec)(1) == 1

    def test_p1_two_term_sum(self):
        # oracle: 1 + (q^-1;q)_1 (abq^2;q)_1 (x;q)_1 q / ((aq;q)_1 (-cq;q)_1 (q;q)_1)
        a, b, c, q = F(1, 3), F(1, 4), F(1, 5), F(1, 2)
        spec = fam.bigq_spec(a, b, c, q)
        factor = (1 - 1 / q) * (1 - a * b * q ** 2) * q / ((1 - a * q) * (1 + c * q) * (1 - q))
        oracle = XPoly([1 + factor, -factor])
        assert fam.bigq_polynomial(1, spec) == oracle
        assert oracle == XPoly([F(-3, 44), F(47, 44)])

    def test_gamma_leading_slope(self):
        a, b, c, q = F(1, 3), F(1, 4), F(1, 5), F(1, 2)
        fd = fam.build_family(fam.bigq_spec(a, b, c, q), 6)
        # L(1) = [(b/c-1) - (1/(cq) - 1/(aq))] + [1/(acq^2) - b/c] x
        assert fd.gamma[0] == 1 / (a * c * q * q) - b / c
        for n in range(6):
            assert fd.gamma[n] == q ** (-n) / (a * c * q * q) - b * q ** n / c

    def test_lambda_cumulative(self):
        fd = fam.build_family(fam.bigq_spec(F(1, 3), F(1, 4), F(1, 5), F(1, 2)), 5)
        assert fd.lam[0] == 0
        for n in range(5):
            assert fd.lam[n + 1] == fd.lam[n] + fd.gamma[n]


class TestSampler:
    @pytest.mark.parametrize("family", fam.CLI_FAMILIES)
    def test_deterministic_and_admissible(self, family):
        a = fam.sample_specs(family, 6, seed=42, n_max=8)
        b = fam.sample_specs(family, 6, seed=42, n_max=8)
        assert [s.params for s in a] == [s.params for s in b]
        for spec in a:
            fam.validate_spec(spec, 8)

    def test_distinct_seeds_differ(self):
        a = fam.sample_specs(fam.AW, 4, seed=1)
        b = fam.sample_specs(fam.AW, 4, seed=2)
        assert [s.params for s in a] != [s.params for s in b]

    @pytest.mark.parametrize("family", fam.CLI_FAMILIES)
    def test_samples_build_and_hypotheses_hold(self, family):
        for spec in fam.sample_specs(family, 3, seed=7, n_max=6):
            fd = fam.build_family(spec, 6)
            for n in range(6):
                assert fd.gamma[n] != 0
                assert fd.lam[n + 1] != fd.lam[n]
                assert fd.h[n] != 0
                if n >= 1:   # lowering/raising coefficients stay nondegenerate
                    assert fd.gamma[n] + fd.gamma[n - 1] != 0


class TestQpow:
    def test_integral_exponents(self):
        spec = fam.cqjacobi_spec(1, 2, F(1, 2))
        assert spec.qpow(F(1, 2)) == F(1, 4)    # q = 1/16, sqrt q = 1/4
        assert spec.qpow(F(1, 4)) == F(1, 2)

    def test_fractional_rejected(self):
        spec = fam.aw_spec(**AW_SAMPLE)
        with pytest.raises(fam.InadmissibleParameters):
            spec.qpow(F(1, 2))
