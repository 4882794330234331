from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermq.certify import BASE_Q_SAMPLES, certifying_q_samples, sample_count
from hermq.qcore import (
    DomainError,
    SeriesDivergenceError,
    SeriesTruncation,
    as_rational,
    basic_hypergeometric,
    classical_hypergeometric,
    hahn_power,
    q_binomial,
    q_brace_pochhammer,
    q_double_factorial_even,
    q_double_factorial_odd,
    q_exp_coefficients,
    q_exp_product,
    q_exponential_partial,
    q_factorial,
    q_multifactorial,
    q_number,
    q_shifted,
    q_shifted_block,
    qparam,
)

rationals = st.fractions(min_value=F(-5), max_value=F(5), max_denominator=12).filter(lambda v: v not in (0, 1))


def direct_q_number(n, q):
    return sum((q ** k for k in range(n)), F(0))


class TestQNumber:
    def test_spec_examples(self):
        assert q_number(3, F(1, 2)) == F(7, 4)
        assert q_number(0, F(2, 3)) == 0
        assert q_number(4, 1) == 4

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            q_number(-1, F(1, 2))

    @given(st.integers(0, 30), rationals)
    def test_matches_direct_sum(self, n, q):
        assert q_number(n, q) == direct_q_number(n, q)

    @given(st.integers(1, 30), rationals)
    def test_inverse_base(self, m, q):
        assert q_number(m, 1 / q) == q ** (1 - m) * q_number(m, q)

    @pytest.mark.parametrize("q", BASE_Q_SAMPLES)
    def test_doubling(self, q):
        for m in range(21):
            assert q_number(2, q) * q_number(m, q * q) == q_number(2 * m, q)

    def test_float_stays_float(self):
        assert isinstance(q_number(3, 0.5), float)


class TestFactorials:
    def test_spec_examples(self):
        assert q_factorial(4, F(1, 2)) == F(315, 64)
        assert q_double_factorial_even(0, F(3, 7)) == 1
        assert q_double_factorial_odd(0, F(3, 7)) == 1
        a, q = F(2, 9), F(5, 3)
        assert q_shifted_block(a, 2, 1, q) == (1 - a) * (1 - a * q)

    @pytest.mark.parametrize("q", BASE_Q_SAMPLES)
    def test_factorial_is_product(self, q):
        acc = F(1)
        for n in range(41):
            assert q_factorial(n, q) == acc
            acc *= direct_q_number(n + 1, q)

    @given(st.integers(0, 10), rationals)
    def test_double_factorials(self, n, q):
        even = odd = F(1)
        for k in range(1, n + 1):
            even *= direct_q_number(2 * k, q)
            odd *= direct_q_number(2 * k - 1, q)
        assert q_double_factorial_even(n, q) == even
        assert q_double_factorial_odd(n, q) == odd

    @given(st.integers(1, 5), st.integers(0, 6), rationals)
    def test_multifactorial(self, p, k, q):
        expected = F(1)
        for l in range(1, k + 1):
            expected *= direct_q_number(p * l, q)
        assert q_multifactorial(p, k, q) == expected

    @given(st.integers(1, 6), st.integers(0, 8), rationals)
    def test_brace_pochhammer(self, c, n, q):
        expected = F(1)
        for k in range(n):
            expected *= direct_q_number(c + k, q)
        assert q_brace_pochhammer(c, n, q) == expected

    @given(rationals, st.integers(1, 4), st.integers(0, 5), rationals)
    def test_block_equals_long_shift(self, a, p, k, q):
        assert q_shifted_block(a, p, k, q) == q_shifted(a, p * k, q)

    def test_negative_counts(self):
        with pytest.raises(DomainError):
            q_factorial(-1, F(1, 2))
        with pytest.raises(DomainError):
            q_shifted(F(1, 2), -2, F(1, 3))


def factorial_ratio(n, k, q):
    if k < 0 or k > n:
        return F(0)
    fact = lambda m: q_factorial(m, q)  # noqa: E731
    return fact(n) / (fact(n - k) * fact(k))


class TestBinomial:
    def test_spec_examples(self):
        assert q_binomial(4, 2, 2) == 35
        assert q_binomial(7, 0, F(3, 5)) == 1
        assert q_binomial(4, 2, F(1, 2)) == F(35, 16)

    def test_out_of_range_is_zero(self):
        assert q_binomial(3, 5, F(1, 2)) == 0
        assert q_binomial(3, -1, F(1, 2)) == 0

    @given(st.integers(0, 14), st.integers(-1, 15), rationals.filter(lambda v: v != -1))
    def test_factorial_ratio(self, n, k, q):
        assert q_binomial(n, k, q) == factorial_ratio(n, k, q)

    def test_root_of_unity(self):
        # (1+q^2)(1+q+q^2) at q = -1; [2,1] = 1+q vanishes
        assert q_binomial(4, 2, -1) == 2
        assert q_binomial(2, 1, -1) == 0

    def test_symmetry(self):
        q = F(5, 7)
        assert all(q_binomial(9, k, q) == q_binomial(9, 9 - k, q) for k in range(10))

    @pytest.mark.parametrize("q", BASE_Q_SAMPLES)
    def test_inverted_base(self, q):
        for n in range(21):
            for k in range(n // 2 + 1):
                assert q_binomial(n, 2 * k, 1 / q) == q ** (2 * k * (2 * k - n)) * q_binomial(n, 2 * k, q)


def expand_hahn(n, q):
    # coefficients of a^{n-k} b^k in prod_{j<n} (a + q^j b)
    coeffs = [F(1)]
    for j in range(n):
        nxt = [F(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c
            nxt[k + 1] += c * q ** j
        coeffs = nxt
    return coeffs


class TestHahn:
    def test_spec_examples(self):
        q = F(2, 5)
        assert hahn_power(2, q, "plus") == [1, 1 + q, q]
        for variant in ("plus", "minus", "minus_q_q2"):
            assert hahn_power(0, q, variant) == [1]
        assert hahn_power(2, q, "minus_q_q2") == [1, -q_number(2, q), q * q * q_number(2, q) / (1 + q * q)]

    @pytest.mark.parametrize("q", BASE_Q_SAMPLES)
    def test_plus_is_iterated_product(self, q):
        for n in range(16):
            assert hahn_power(n, q, "plus") == expand_hahn(n, q)

    def test_minus_alternates(self):
        q = F(3, 4)
        assert hahn_power(5, q, "minus") == [(-1) ** k * c for k, c in enumerate(expand_hahn(5, q))]

    def test_negative_n(self):
        with pytest.raises(DomainError):
            hahn_power(-1, F(1, 2))


class TestExponentials:
    def test_zero_argument(self):
        for kind in ("e_q", "E_q", "E_qp", "cos_q"):
            assert q_exponential_partial(kind, F(0), F(1, 2), p=2) == 1

    def test_cos_plus_i_sin(self):
        z, q = 0.7, 0.4
        lhs = q_exponential_partial("cos_q", z, q) + 1j * q_exponential_partial("sin_q", z, q)
        assert abs(lhs - q_exponential_partial("e_q", 1j * z, q)) < 1e-14

    def test_inverse_pair_cancels(self):
        for q in BASE_Q_SAMPLES:
            e = q_exp_coefficients("e_q", q, 12)
            big = q_exp_coefficients("E_q", q, 12)
            for j in range(1, 12):
                assert sum((e[k] * (-1) ** (j - k) * big[j - k] for k in range(j + 1)), F(0)) == 0

    def test_product_is_hahn_sum(self):
        # e_q(x) E_q(y) = sum_n (x (+)_q y)^n / {n}!
        q, x, y = F(2, 3), F(1, 5), F(-3, 7)
        e = q_exp_coefficients("e_q", q, 10)
        big = q_exp_coefficients("E_q", q, 10)
        for n in range(10):
            lhs = sum((e[n - k] * x ** (n - k) * big[k] * y ** k for k in range(n + 1)), F(0))
            hahn = hahn_power(n, q, "plus")
            rhs = sum((c * x ** (n - k) * y ** k for k, c in enumerate(hahn)), F(0)) / q_factorial(n, q)
            assert lhs == rhs

    def test_big_e_matches_euler_product(self):
        for z in (0.3, -1.2, 2.5):
            assert abs(q_exponential_partial("E_q", z, 0.5) - q_exp_product(z, 0.5)) < 1e-12

    def test_e_qp_uses_base_q_to_the_p(self):
        q = F(1, 3)
        coeffs = q_exp_coefficients("E_qp", q, 5, p=3)
        assert coeffs == [(q ** 3) ** (k * (k - 1) // 2) / q_factorial(k, q ** 3) for k in range(5)]

    def test_exact_mode_sums_max_terms(self):
        got = q_exponential_partial("e_q", F(1), F(1, 2), trunc=SeriesTruncation(max_terms=3))
        assert got == 1 + 1 + 1 / q_number(2, F(1, 2))

    def test_divergence_detected(self):
        with pytest.raises(SeriesDivergenceError):
            # term ratio tends to z (1 - q) = 5
            q_exponential_partial("e_q", 10.0, 0.5, trunc=SeriesTruncation(max_terms=60))

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            q_exp_coefficients("tan_q", F(1, 2), 3)


class TestBasicHypergeometric:
    def test_empty_parameters_at_zero(self):
        assert basic_hypergeometric([], [], F(1, 2), F(0)) == 1

    def test_two_phi_zero_matches_h3(self):
        # H_3 = x^3 - {3}_q s x at q=1/2, x=2, s=1 is 8 - 7/2 = 9/2
        q, x, s, n = F(1, 2), F(2), F(1), 3
        z = s * q ** (2 * n - 1) / ((1 - q) * x * x)
        value = x ** n * basic_hypergeometric([q ** -n, q ** (1 - n)], [], q * q, z)
        assert value == F(9, 2)

    def test_bare_convention_differs_when_r_ne_s_plus_1(self):
        q, x, s, n = F(1, 2), F(2), F(1), 3
        z = s * q ** (2 * n - 1) / ((1 - q) * x * x)
        bare = x ** n * basic_hypergeometric([q ** -n, q ** (1 - n)], [], q * q, z, convention="bare")
        assert bare == F(23, 2)

    def test_conventions_agree_when_balanced(self):
        q, z = F(1, 3), F(2, 5)
        up, low = [q ** -4, F(3, 7)], [F(5, 11)]
        assert basic_hypergeometric(up, low, q, z) == basic_hypergeometric(up, low, q, z, convention="bare")

    def test_three_phi_two_lemma_case(self):
        # n = 1: 1 + {2}_q / u, terminating because (q^-1; q)_2 = 0
        q, u = F(2, 3), F(5, 4)
        z = -q * q / ((1 - q) * u)
        series = basic_hypergeometric([1 / q, -1 / q, q], [0, 0], q, z)
        assert u / q_number(2, q) * series == 1 + u / q_number(2, q)

    def test_q_binomial_theorem(self):
        # 1phi0(a;-;q;z) = (az;q)_inf / (z;q)_inf
        a, q, z = 0.3, 0.5, 0.2
        lhs = basic_hypergeometric([a], [], q, z)
        num = den = 1.0
        for k in range(200):
            num *= 1 - a * z * q ** k
            den *= 1 - z * q ** k
        assert abs(lhs - num / den) < 1e-13

    def test_pole_rejected(self):
        q = F(1, 2)
        with pytest.raises(DomainError):
            basic_hypergeometric([F(3)], [1 / q], q, F(1, 9))

    def test_classical_two_f_zero_terminates(self):
        assert classical_hypergeometric([-2, 1], [], F(1, 3)) == 1 + F(-2, 3) + F(2, 9) * 2 / 2


class TestCoercion:
    def test_strings_and_floats(self):
        assert as_rational("3/4") == F(3, 4)
        assert as_rational(0.5) == F(1, 2)
        assert as_rational(7) == 7

    def test_bad_string(self):
        with pytest.raises(DomainError):
            as_rational("a/b")

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            as_rational(True)

    def test_qparam(self):
        with pytest.raises(DomainError):
            qparam(0)
        with pytest.raises(DomainError):
            qparam(1)
        assert qparam(1, allow_classical=True) == 1

    def test_truncation_validates(self):
        with pytest.raises((DomainError, ValueError)):
            SeriesTruncation(max_terms=0)


class TestCertifyingSamples:
    def test_base_points_first(self):
        assert certifying_q_samples(10) == BASE_Q_SAMPLES

    @settings(max_examples=20)
    @given(st.integers(0, 25))
    def test_count_exceeds_bound(self, n):
        pts = certifying_q_samples(sample_count(n))
        assert len(pts) == max(10, 2 * n * n + 1) > 2 * n * n
        assert len(set(pts)) == len(pts)
        assert all(q > 0 and q != 1 for q in pts)
