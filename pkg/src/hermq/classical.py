"""The two-variable classical Hermite polynomials H_n(x, s).

Generating function exp(x t - s t^2 / 2); H_1 = x, H_2 = x^2 - s, ...
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .polyring import ClassicalDx, MulByS, MulByX, Poly2, apply_series, classical_dx, mul_s, mul_x
from .qcore import DomainError, SeriesTruncation, as_rational, classical_hypergeometric, is_exact


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")


def double_factorial_even(k: int) -> int:
    """(2k)!! = 2^k k!."""
    return 2 ** k * factorial(k)


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = 1 * 3 * ... * (2k-1), with (-1)!! = 1."""
    out = 1
    for j in range(1, 2 * k, 2):
        out *= j
    return out


_SEQUENCE = [Poly2.one(), Poly2.x()]


def hermite(n: int) -> Poly2:
    """H_n by the three-term recursion H_{n+1} = x H_n - n s H_{n-1}."""
    _check_n(n)
    for m in range(len(_SEQUENCE) - 1, n):
        _SEQUENCE.append(mul_x(_SEQUENCE[m]) - mul_s(_SEQUENCE[m - 1]).scale(m))
    return _SEQUENCE[n]


def hermite_explicit(n: int) -> Poly2:
    """n! sum_k (-1)^k s^k x^(n-2k) / ((2k)!! (n-2k)!)."""
    _check_n(n)
    return Poly2(
        ((n - 2 * k, k), Fraction((-1) ** k * factorial(n), double_factorial_even(k) * factorial(n - 2 * k)))
        for k in range(n // 2 + 1)
    )


def hermite_operator_exp(n: int) -> Poly2:
    """exp(-s D^2 / 2) applied to x^n; the series stops on its own."""
    _check_n(n)
    d2 = ClassicalDx() @ ClassicalDx()
    s_d2 = MulByS() @ d2
    return apply_series(s_d2, lambda k: Fraction((-1) ** k, 2 ** k * factorial(k)), Poly2.monomial(n))


def rodrigues_poly(n: int) -> Poly2:
    """Polynomial factor of (-s D)^n exp(-x^2 / 2s).

    Writing (-s D)(P e^{-x^2/2s}) = (x P - s P') e^{-x^2/2s}, the Gaussian
    is stripped and the recursion P_{m+1} = x P_m - s P_m' stays exact.
    """
    _check_n(n)
    p = Poly2.one()
    for _ in range(n):
        p = gaussian_neg_s_derivative(p)
    return p


def gaussian_neg_s_derivative(f: Poly2) -> Poly2:
    """Polynomial part of (-s D)(f e^{-x^2/2s}) by the product rule.

    D e^{-x^2/2s} = -(x/s) e^{-x^2/2s}, so the s cancels against -s.
    """
    return (MulByS() @ ClassicalDx()).apply(f).scale(-1) + MulByX().apply(f)


def ode_residual(n: int) -> Poly2:
    """(s D^2 - x D + n) H_n; zero for every n."""
    h = hermite(n)
    dh = classical_dx(h)
    return Poly2.s() * classical_dx(dh) - Poly2.x() * dh + h.scale(n)


def classical_inversion_solve(n: int) -> list:
    """d_k with x^n = sum_k d_k s^k H_{n-2k}, by triangular elimination."""
    return solve_in_hermite_basis(n, hermite)


def classical_inversion_closed_form(n: int) -> list:
    """d_k = n! / ((2k)!! (n-2k)!)."""
    _check_n(n)
    return [Fraction(factorial(n), double_factorial_even(k) * factorial(n - 2 * k)) for k in range(n // 2 + 1)]


def solve_in_hermite_basis(n: int, family) -> list:
    """Coefficients d_k with x^n = sum_k d_k s^k family(n - 2k).

    ``family(m)`` must be monic of x-degree m with s^k entering only beside
    x^(m-2k).  Each step reads off one coefficient and subtracts; the final
    remainder has to vanish.
    """
    _check_n(n)
    rest = Poly2.monomial(n)
    coeffs = []
    for k in range(n // 2 + 1):
        d = rest.coeff(n - 2 * k, k)
        coeffs.append(d)
        if d:
            rest = rest - (family(n - 2 * k) * Poly2.monomial(0, k)).scale(d)
    if rest:
        raise DomainError(f"x^{n} is not in the span of the basis; remainder {rest}")
    return coeffs


def combine_basis(coeffs, family, n: int) -> Poly2:
    """sum_k coeffs[k] s^k family(n - 2k)."""
    out = Poly2.zero()
    for k, d in enumerate(coeffs):
        out = out + (family(n - 2 * k) * Poly2.monomial(0, k)).scale(d)
    return out


def raising_identity(n: int) -> Poly2:
    """H_n(x + s D, s) applied to 1, via the recursion with x replaced by x + sD."""
    _check_n(n)
    a = MulByX() + MulByS() @ ClassicalDx()
    prev, cur = Poly2.zero(), Poly2.one()
    for m in range(n):
        prev, cur = cur, a.apply(cur) - Poly2.s() * prev * m
    return cur


def t_poly(n: int, alpha, beta):
    """T_n(alpha, beta) = sum_{k <= n/2} (alpha beta^2)^k / (2k)!!."""
    _check_n(n)
    u = alpha * beta ** 2
    total = 0
    for k in range(n // 2 + 1):
        total += u ** k / double_factorial_even(k)
    return total


def t_poly_hypergeometric(n: int, alpha, beta):
    """T_{2n} = u^n/(2n)!! * 2F0(-n, 1; ; -2/u) with u = alpha beta^2."""
    _check_n(n)
    u = alpha * beta ** 2
    if u == 0:
        raise DomainError("alpha * beta^2 must be nonzero in the 2F0 form")
    z = -2 / as_rational(u) if is_exact(u) else -2 / u
    return u ** n / double_factorial_even(n) * classical_hypergeometric([-n, 1], [], z)


def t_operator(n: int) -> Poly2:
    """T_n(s, D) H_n = sum_k s^k D^{2k} H_n / (2k)!!; equals x^n."""
    _check_n(n)
    d2s = MulByS() @ ClassicalDx() @ ClassicalDx()
    return apply_series(d2s, lambda k: Fraction(1, double_factorial_even(k)), hermite(n))


def parity_sums(n: int) -> tuple:
    """(sum over even k, sum over odd k) of 1/((n-k)! k!) for 0 <= k <= n."""
    _check_n(n)
    even = sum((Fraction(1, factorial(n - k) * factorial(k)) for k in range(0, n + 1, 2)), Fraction(0))
    odd = sum((Fraction(1, factorial(n - k) * factorial(k)) for k in range(1, n + 1, 2)), Fraction(0))
    return even, odd


def t_infinity(alpha, beta, trunc: SeriesTruncation = SeriesTruncation(max_terms=200, tail_tolerance=1e-18)):
    """Numeric limit of T_n as n grows."""
    u = alpha * beta ** 2
    u = complex(u) if isinstance(u, complex) else float(u)
    total = 0.0
    term = 1.0
    for k in range(trunc.max_terms):
        total += term
        term *= u / (2 * (k + 1))
        if abs(term) < trunc.tail_tolerance * max(1.0, abs(total)):
            return total + term
    return total


def zero_value(n: int) -> Fraction:
    """Coefficient c with H_n(0, s) = c s^(n/2): (-1)^(n/2) (n-1)!! for even n, else 0."""
    _check_n(n)
    if n % 2:
        return Fraction(0)
    return Fraction((-1) ** (n // 2) * double_factorial_odd(n // 2))
