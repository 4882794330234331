"""Doubly indexed family H_{n,p}(x, s | q) = E_{q^p}(-s (D_x^q)^p / {p}_q) x^n.

p = 2 gives back H_n(x, s | q).  At q = 1 the family contains the
Gould-Hopper and Habibullah-Shakoor polynomials.
"""

from __future__ import annotations

from math import factorial

from .polyring import Poly2, dilate_s, dilate_x, jackson_ds, jackson_dx, mul_s, mul_x
from .qcore import (
    DomainError,
    Rational,
    SeriesTruncation,
    as_rational,
    basic_hypergeometric,
    is_exact,
    q_brace_pochhammer,
    q_exp_coefficients,
    q_factorial,
    q_multifactorial,
    q_number,
    q_shifted,
    qparam,
)
from .report import exact_report, numeric_report, stopwatch


def _check(n, p):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    if not isinstance(p, int) or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")


def qp_coefficient(n: int, p: int, k: int, q):
    """Coefficient of s^k x^(n-pk): (-1)^k q^(p C(k,2)) {n}! / ({pk}!! {n-pk}!)."""
    if k < 0 or p * k > n:
        return Rational(0)
    return (
        (-1) ** k * q ** (p * k * (k - 1) // 2) * q_factorial(n, q)
        / (q_multifactorial(p, k, q) * q_factorial(n - p * k, q))
    )


def qp_hermite_explicit(n: int, p: int, q) -> Poly2:
    _check(n, p)
    q = qparam(q, allow_classical=True)
    return Poly2(((n - p * k, k), qp_coefficient(n, p, k, q)) for k in range(n // p + 1))


def qp_hermite_operator(n: int, p: int, q) -> Poly2:
    """The defining series, applied term by term until D^(pk) x^n vanishes."""
    _check(n, p)
    q = qparam(q, allow_classical=True)
    coeffs = q_exp_coefficients("E_qp", q, n // p + 1, p=p)
    shrink = -1 / q_number(p, q)
    out = Poly2.zero()
    term = Poly2.monomial(n)
    k = 0
    while term:
        out = out + term.scale(coeffs[k] * shrink ** k)
        for _ in range(p):
            term = jackson_dx(term, q)
        term = mul_s(term)
        k += 1
    return out


def qp_hermite(n: int, p: int, q) -> Poly2:
    """H_{n,p}(x, s | q); the explicit sum, confirmed by the operator series."""
    poly = qp_hermite_explicit(n, p, q)
    if poly != qp_hermite_operator(n, p, q):
        raise ArithmeticError(f"constructions of H_{{{n},{p}}} disagree at q={q}")
    return poly


def qp_hermite_phi(n: int, p: int, q, x, s, convention: str = "standard"):
    """x^n pphi0(q^-n, ..., q^(p-1-n); -; q^p; s q^(pn + p(1-p)/2) / ((1-q)^(p-1) x^p))."""
    _check(n, p)
    q, x, s = (as_rational(v) if isinstance(v, str) else v for v in (q, x, s))
    if x == 0:
        raise DomainError("the pphi0 form needs x != 0")
    if is_exact(q, x, s):
        q, x, s = as_rational(q), as_rational(x), as_rational(s)
    z = s * q ** (p * n + p * (1 - p) // 2) / ((1 - q) ** (p - 1) * x ** p)
    upper = [q ** (j - n) for j in range(p)]
    series = basic_hypergeometric(upper, [], q ** p, z, SeriesTruncation(max_terms=n // p + 2), convention)
    return x ** n * series


def heat_residual(n: int, p: int, q, s_base=None) -> Poly2:
    """(D_x^q)^p H_{n,p} + {p}_q D_s H_{n,p}, the s-derivative taken at ``s_base``.

    The equation holds with s_base = q^-p (the default).  With s_base = q it
    breaks once s^2 terms appear.
    """
    q = qparam(q, allow_classical=True)
    base = q ** -p if s_base is None else as_rational(s_base)
    h = qp_hermite_explicit(n, p, q)
    lhs = h
    for _ in range(p):
        lhs = jackson_dx(lhs, q)
    return lhs + jackson_ds(h, base).scale(q_number(p, q))


def lowering_residual(n: int, p: int, q) -> Poly2:
    """D_x^q H_{n,p} - {n} H_{n-1,p}."""
    q = qparam(q, allow_classical=True)
    lhs = jackson_dx(qp_hermite_explicit(n, p, q), q)
    if n == 0:
        return lhs
    return lhs - qp_hermite_explicit(n - 1, p, q).scale(q_number(n, q))


def recursion_residual(n: int, p: int, q) -> Poly2:
    """H_{n+1,p} - x H_{n,p} + s q^(n-p+1) {n}{n-1}...{n-p+2} H_{n-p+1,p}, n >= 1."""
    _check(n, p)
    q = qparam(q, allow_classical=True)
    out = qp_hermite_explicit(n + 1, p, q) - mul_x(qp_hermite_explicit(n, p, q))
    lo = n - p + 2
    if lo >= 1:
        weight = q ** (n - p + 1)
        for j in range(lo, n + 1):
            weight *= q_number(j, q)
        out = out + mul_s(qp_hermite_explicit(n - p + 1, p, q)).scale(weight)
    return out


def difference_residual(n: int, p: int, q) -> Poly2:
    """(s (D_x^q)^p - q^(p-n) x D_x^q + q^(p-n) {n}) H_{n,p}."""
    q = qparam(q, allow_classical=True)
    h = qp_hermite_explicit(n, p, q)
    dp = h
    for _ in range(p):
        dp = jackson_dx(dp, q)
    w = q ** (p - n)
    return mul_s(dp) - mul_x(jackson_dx(h, q)).scale(w) + h.scale(w * q_number(n, q))


def _gf_coefficients(p: int, q, x0, s0, order: int) -> list:
    # Cauchy product of e_q(t x0) and E_{q^p}(-s0 t^p / {p}) up to t^order
    e = [x0 ** n / q_factorial(n, q) for n in range(order + 1)]
    big = q_exp_coefficients("E_qp", q, order // p + 1, p=p)
    scale = -s0 / q_number(p, q)
    out = []
    for n in range(order + 1):
        out.append(sum((big[k] * scale ** k * e[n - p * k] for k in range(n // p + 1)), Rational(0)))
    return out


def qp_gf_check(p: int, q, x0, s0, trunc: SeriesTruncation = SeriesTruncation(max_terms=13)):
    """Generating-function coefficients against H_{n,p}(x0, s0) / {n}! for n < max_terms.

    Returns one report per coefficient.
    """
    q = qparam(q, allow_classical=True)
    x0, s0 = as_rational(x0), as_rational(s0)
    order = trunc.max_terms - 1
    with stopwatch() as ms:
        series = _gf_coefficients(p, q, x0, s0, order)
    reports = []
    for n, c in enumerate(series):
        target = qp_hermite_explicit(n, p, q).evaluate(x0, s0) / q_factorial(n, q)
        reports.append(exact_report("qp.generating_function", {"p": p, "q": q, "x": x0, "s": s0, "n": n},
                                    c - target, runtime_ms=ms[0]))
    return reports


def _value_sequence(p: int, q: float, x: float, s: float, count: int) -> list:
    # H_{n,p}(x, s | q) as floats through the three-term-in-spirit recursion
    vals = [1.0]
    for n in range(count - 1):
        nxt = x * vals[n]
        lo = n - p + 2
        if n >= 1 and lo >= 1:
            w = q ** (n - p + 1)
            for j in range(lo, n + 1):
                w *= q_number(j, q)
            nxt -= s * w * vals[n - p + 1]
        vals.append(nxt)
    return vals


def pochhammer_gf_sides(c: int, p: int, q, x0, s0, t0, trunc: SeriesTruncation = SeriesTruncation(max_terms=400)):
    """Both sides of sum {c}_{n,q} H_{n,p}(x0, s0) t0^n / {n}! = pphi_p(...) / (x0 t0; q)_c."""
    if not isinstance(c, int) or c < 1:
        raise DomainError("c must be a positive integer")
    if not isinstance(p, int) or p < 1:
        raise DomainError("p must be a positive integer")
    q, x0, s0, t0 = float(q), float(x0), float(s0), float(t0)
    if not 0 < abs(q) < 1:
        raise DomainError("the generating function needs 0 < |q| < 1")
    if abs(x0 * t0) >= 1:
        raise DomainError("the generating function needs |x t| < 1")
    vals = _value_sequence(p, q, x0, s0, trunc.max_terms)
    lhs, quiet = 0.0, 0
    for n, h in enumerate(vals):
        term = q_brace_pochhammer(c, n, q) * h * t0 ** n / q_factorial(n, q)
        lhs += term
        quiet = quiet + 1 if abs(term) <= trunc.tail_tolerance * max(1.0, abs(lhs)) else 0
        if quiet >= 2 * p + 2:
            break
    else:
        raise ArithmeticError("left side did not settle within the term budget")
    xt = x0 * t0
    upper = [q ** (c + j) for j in range(p)]
    lower = [xt * q ** (c + j) for j in range(p)]
    z = s0 * t0 ** p / (1 - q) ** (p - 1)
    rhs = basic_hypergeometric(upper, lower, q ** p, z, SeriesTruncation(max_terms=200)) / q_shifted(xt, c, q)
    return lhs, rhs


def qp_pochhammer_gf(c: int, p: int, q, x0, t0, s0=1, tol: float = 1e-10):
    with stopwatch() as ms:
        lhs, rhs = pochhammer_gf_sides(c, p, q, x0, s0, t0)
    return numeric_report("qp.pochhammer_gf", {"c": c, "p": p, "q": q, "x": x0, "s": s0, "t": t0},
                          lhs, rhs, tol, runtime_ms=ms[0], detail=f"lhs={lhs!r} rhs={rhs!r}")


# classical limits at q = 1


def gould_hopper(n: int, p: int, x0, y0):
    """g_n^p(x, y) = n! sum_k y^k x^(n-pk) / (k! (n-pk)!)."""
    _check(n, p)
    if is_exact(x0, y0):
        x0, y0 = as_rational(x0), as_rational(y0)
    return sum(
        (factorial(n) * y0 ** k * x0 ** (n - p * k) / (factorial(k) * factorial(n - p * k)) for k in range(n // p + 1)),
        0 * x0,
    )


def gould_hopper_poly(n: int, p: int) -> Poly2:
    """g_n^p as a Poly2 with the second variable y stored in the s slot."""
    _check(n, p)
    return Poly2(
        ((n - p * k, k), Rational(factorial(n), factorial(k) * factorial(n - p * k))) for k in range(n // p + 1)
    )


def habibullah(n: int, p: int, x0):
    """S_{p,n}(x) = n! sum_k (-1)^k (p x)^(n-pk) / (k! (n-pk)!)."""
    _check(n, p)
    if is_exact(x0):
        x0 = as_rational(x0)
    return sum(
        ((-1) ** k * factorial(n) * (p * x0) ** (n - p * k) / (factorial(k) * factorial(n - p * k))
         for k in range(n // p + 1)),
        0 * x0,
    )


def habibullah_poly(n: int, p: int) -> Poly2:
    _check(n, p)
    return Poly2(
        ((n - p * k, 0), Rational((-1) ** k * factorial(n) * p ** (n - p * k), factorial(k) * factorial(n - p * k)))
        for k in range(n // p + 1)
    )


def gould_hopper_limit_residual(n: int, p: int) -> Poly2:
    """H_{n,p}(x, -p y | 1) - g_n^p(x, y), with y in the s slot."""
    return dilate_s(qp_hermite_explicit(n, p, 1), -p) - gould_hopper_poly(n, p)


def habibullah_limit_residual(n: int, p: int) -> Poly2:
    """H_{n,p}(p x, p | 1) - S_{p,n}(x)."""
    return dilate_x(qp_hermite_explicit(n, p, 1), p).substitute_s(p) - habibullah_poly(n, p)
