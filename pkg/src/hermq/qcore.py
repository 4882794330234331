"""Exact q-arithmetic: q-numbers, factorials, shifted factorials, Hahn powers,
truncated q-exponentials and basic hypergeometric series.

Every function is generic over the scalar type.  ``Fraction`` (or ``int``)
inputs give exact ``Fraction`` results; ``float``/``complex`` inputs give
numeric results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Sequence, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - pure-Python fallback
    Rational = Fraction

Scalar = Union[Fraction, int, float, complex]


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class SeriesDivergenceError(ArithmeticError):
    """A numeric series failed to converge inside its truncation window."""


class IdentityViolation(AssertionError):
    """Two constructions that must agree exactly did not."""


def as_rational(value):
    """Coerce ``int``, ``Fraction`` or an ``"a/b"`` string to the exact scalar.

    Floats go through their shortest decimal repr, so ``0.5`` becomes 1/2.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, _RationalABC):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
        return Rational(frac.numerator, frac.denominator)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def qparam(value, allow_classical: bool = False):
    """Validated rational deformation parameter."""
    q = as_rational(value)
    if q == 0:
        raise DomainError("q must be nonzero")
    if q == 1 and not allow_classical:
        raise DomainError("q = 1 is not permitted here")
    return q


def is_exact(*values) -> bool:
    return all(isinstance(v, _RationalABC) for v in values)


def _lift(q):
    return as_rational(q) if isinstance(q, _RationalABC) else q


def _check_count(n, what="n"):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"{what} must be a nonnegative integer, got {n!r}")


@dataclass(frozen=True)
class SeriesTruncation:
    """How many terms of an infinite series to keep.

    In exact mode exactly ``max_terms`` terms are summed.  In numeric mode the
    sum stops early once a term falls below ``tail_tolerance`` relative to the
    running sum, and raises if that never happens.
    """

    max_terms: int = 60
    tail_tolerance: float = 1e-16

    def __post_init__(self):
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise DomainError("max_terms must be a positive integer")
        if self.tail_tolerance < 0:
            raise DomainError("tail_tolerance must be nonnegative")


# q-numbers and factorials --------------------------------------------------


@lru_cache(maxsize=None, typed=True)
def _q_number_cached(n: int, q):
    total = q * 0
    term = q ** 0
    for _ in range(n):
        total += term
        term *= q
    return total


def q_number(n: int, q) -> Scalar:
    """{n}_q = 1 + q + ... + q^(n-1).  q = 1 gives n."""
    _check_count(n)
    q = _lift(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    return _q_number_cached(n, q)


@lru_cache(maxsize=None, typed=True)
def _prod_q_numbers(q, start: int, step: int, count: int):
    out = q ** 0
    for i in range(count):
        out *= _q_number_cached(start + i * step, q)
    return out


def q_factorial(n: int, q) -> Scalar:
    """{n}_q! with {0}_q! = 1."""
    _check_count(n)
    q = _lift(q)
    q_number(0, q)
    return _prod_q_numbers(q, 1, 1, n)


def q_double_factorial_even(n: int, q) -> Scalar:
    """{2n}_q!! = {2}_q {4}_q ... {2n}_q."""
    return q_multifactorial(2, n, q)


def q_double_factorial_odd(n: int, q) -> Scalar:
    """{2n-1}_q!! = {1}_q {3}_q ... {2n-1}_q; n = 0 gives {-1}_q!! = 1."""
    _check_count(n)
    q = _lift(q)
    q_number(0, q)
    return _prod_q_numbers(q, 1, 2, n)


def q_multifactorial(p: int, k: int, q) -> Scalar:
    """{pk}_q!! = prod_{l=1}^k {pl}_q."""
    _check_count(k, "k")
    if not isinstance(p, int) or p < 1:
        raise DomainError("p must be a positive integer")
    q = _lift(q)
    q_number(0, q)
    return _prod_q_numbers(q, p, p, k)


def q_brace_pochhammer(c: int, n: int, q) -> Scalar:
    """{c}_{n,q} = {c}_q {c+1}_q ... {c+n-1}_q."""
    _check_count(c, "c")
    _check_count(n)
    q = _lift(q)
    q_number(0, q)
    return _prod_q_numbers(q, c, 1, n)


def q_shifted(a, n: int, q) -> Scalar:
    """(a; q)_n = prod_{k<n} (1 - a q^k)."""
    _check_count(n)
    a, q = _lift(a), _lift(q)
    out = q ** 0
    aqk = a
    for _ in range(n):
        out *= 1 - aqk
        aqk *= q
    return out


def q_shifted_block(a, p: int, k: int, q) -> Scalar:
    """(a; q)_{pk} written as (a, aq, ..., aq^(p-1); q^p)_k."""
    _check_count(k, "k")
    if not isinstance(p, int) or p < 1:
        raise DomainError("p must be a positive integer")
    a, q = _lift(a), _lift(q)
    out = q ** 0
    for j in range(p):
        out *= q_shifted(a * q ** j, k, q ** p)
    return out


def q_binomial(n: int, k: int, q) -> Scalar:
    """Gaussian binomial {n choose k}_q; zero outside 0 <= k <= n.

    Built row by row from [m, j] = [m-1, j-1] + q^j [m-1, j], which never
    divides and so also works where some {m}_q vanishes (q = -1).
    """
    q = _lift(q)
    if not (isinstance(n, int) and isinstance(k, int)) or k < 0 or n < 0 or k > n:
        return q * 0
    k = min(k, n - k)
    row = [q ** 0] + [q * 0] * k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] = row[j - 1] + q ** j * row[j]
    return row[k]


def hahn_power(n: int, q, variant: str = "plus") -> list:
    """Coefficients of a^(n-k) b^k, k = 0..n, in a Hahn-type binomial power.

    ``plus``        (a (+)_q b)^n = (a+b)(a+qb)...(a+q^(n-1) b)
    ``minus``       (a (-)_q b)^n = (a (+)_q (-b))^n
    ``minus_q_q2``  (a (-)_{q,q^2} b)^n, the mixed-base power behind the
                    generating function of the deformed Hermite family
    """
    _check_count(n)
    q = _lift(q)
    if variant == "plus":
        return [q_binomial(n, k, q) * q ** (k * (k - 1) // 2) for k in range(n + 1)]
    if variant == "minus":
        return [(-1) ** k * q_binomial(n, k, q) * q ** (k * (k - 1) // 2) for k in range(n + 1)]
    if variant == "minus_q_q2":
        return [
            (-1) ** k * q ** (k * (k - 1)) * q_factorial(n, q)
            / (q_factorial(n - k, q) * q_factorial(k, q * q))
            for k in range(n + 1)
        ]
    raise DomainError(f"unknown Hahn variant {variant!r}")


# q-exponentials ------------------------------------------------------------

Q_EXP_KINDS = ("e_q", "E_q", "E_qp", "cos_q", "sin_q")


def _q_exp_coefficient(kind: str, q, k: int, p: int = 1):
    if kind == "e_q":
        return 1 / q_factorial(k, q)
    if kind == "E_q":
        return q ** (k * (k - 1) // 2) / q_factorial(k, q)
    if kind == "E_qp":
        qp = q ** p
        return qp ** (k * (k - 1) // 2) / q_factorial(k, qp)
    parity = 0 if kind == "cos_q" else 1
    if k % 2 != parity:
        return q * 0
    return (-1) ** (k // 2) / q_factorial(k, q)


def q_exp_coefficients(kind: str, q, n_terms: int, p: int = 1) -> list:
    """Maclaurin coefficients [a_0, ..., a_{n_terms-1}] of a q-exponential.

    ``E_qp`` is E_{q^p}(z) = sum (q^p)^C(k,2) z^k / {k}_{q^p}!.
    """
    if kind not in Q_EXP_KINDS:
        raise DomainError(f"unknown q-exponential {kind!r}")
    q = _lift(q)
    return [_q_exp_coefficient(kind, q, k, p) for k in range(n_terms)]


def _sum_terms(terms, exact: bool, trunc: SeriesTruncation, what: str):
    """Sum an iterator of terms under the truncation policy."""
    total = 0
    converged = False
    small_run = 0
    last = None
    for count, term in enumerate(terms, start=1):
        total += term
        last = term
        if not exact:
            if abs(term) <= trunc.tail_tolerance * max(1.0, abs(total)):
                small_run += 1
                if small_run >= 2:
                    converged = True
                    break
            else:
                small_run = 0
        if count >= trunc.max_terms:
            break
    else:
        converged = True  # iterator ran dry: finite sum
    if not exact and not converged:
        raise SeriesDivergenceError(
            f"{what}: no convergence within {trunc.max_terms} terms (last |term| = {abs(last):.3e})"
        )
    return total


def q_exponential_partial(kind: str, z, q, p: int = 1, trunc: SeriesTruncation = SeriesTruncation()):
    """Truncated q-exponential or q-trigonometric series evaluated at z."""
    z, q = _lift(z), _lift(q)
    exact = is_exact(z, q)
    if kind not in Q_EXP_KINDS:
        raise DomainError(f"unknown q-exponential {kind!r}")

    def terms():
        zk = z ** 0
        for k in range(trunc.max_terms):
            yield _q_exp_coefficient(kind, q, k, p) * zk
            zk *= z

    return _sum_terms(terms(), exact, trunc, kind)


def q_exp_product(z, q, trunc: SeriesTruncation = SeriesTruncation(max_terms=400)):
    """E_q(z) through Euler's product (-(1-q) z; q)_inf, for |q| < 1."""
    if abs(q) >= 1:
        raise DomainError("the product form needs |q| < 1")
    out = 1.0
    factor = -(1 - q) * z
    for _ in range(trunc.max_terms):
        term = 1 - factor
        out *= term
        factor *= q
        if abs(factor) < trunc.tail_tolerance:
            return out
    raise SeriesDivergenceError("Euler product did not settle")


# hypergeometric series ----------------------------------------------------


def basic_hypergeometric(
    upper: Sequence,
    lower: Sequence,
    q,
    z,
    trunc: SeriesTruncation = SeriesTruncation(),
    convention: str = "standard",
):
    """Basic hypergeometric series r_phi_s(upper; lower; q; z).

    Term m is

        prod (a_i; q)_m / ((q; q)_m prod (b_j; q)_m) * F_m * z^m

    where F_m = [(-1)^m q^C(m,2)]^(1+s-r) for ``convention="standard"`` and
    F_m = 1 for ``convention="bare"``.  The two agree whenever r = s + 1.
    A zero numerator factor terminates the series.
    """
    if convention not in ("standard", "bare"):
        raise DomainError(f"unknown convention {convention!r}")
    upper = [_lift(a) for a in upper]
    lower = [_lift(b) for b in lower]
    q, z = _lift(q), _lift(z)
    exact = is_exact(q, z, *upper, *lower)
    excess = 1 + len(lower) - len(upper) if convention == "standard" else 0

    def terms():
        term = q ** 0
        qm = q ** 0
        m = 0
        while True:
            yield term
            num = 1
            for a in upper:
                num *= 1 - a * qm
            if num == 0:
                return
            den = 1 - qm * q
            for b in lower:
                den *= 1 - b * qm
            if den == 0:
                raise DomainError(f"lower parameter hits a pole at m = {m}")
            term = term * num / den * z
            if excess:
                term *= (-qm) ** excess
            qm *= q
            m += 1

    return _sum_terms(terms(), exact, trunc, f"{len(upper)}phi{len(lower)}")


def classical_hypergeometric(upper: Sequence, lower: Sequence, z, trunc: SeriesTruncation = SeriesTruncation()):
    """Generalized hypergeometric series pFq with rising-factorial term ratios."""
    upper = [_lift(a) for a in upper]
    lower = [_lift(b) for b in lower]
    z = _lift(z)
    exact = is_exact(z, *upper, *lower)

    def terms():
        term = Rational(1) if exact else 1.0
        m = 0
        while True:
            yield term
            num = 1
            for a in upper:
                num *= a + m
            if num == 0:
                return
            den = m + 1
            for b in lower:
                den *= b + m
            if den == 0:
                raise DomainError(f"lower parameter hits a pole at m = {m}")
            term = term * num / den * z
            m += 1

    return _sum_terms(terms(), exact, trunc, f"{len(upper)}F{len(lower)}")


__all__ = [
    "Rational",
    "DomainError",
    "SeriesDivergenceError",
    "IdentityViolation",
    "SeriesTruncation",
    "as_rational",
    "qparam",
    "q_number",
    "q_factorial",
    "q_double_factorial_even",
    "q_double_factorial_odd",
    "q_multifactorial",
    "q_brace_pochhammer",
    "q_shifted",
    "q_shifted_block",
    "q_binomial",
    "hahn_power",
    "q_exp_coefficients",
    "q_exponential_partial",
    "q_exp_product",
    "basic_hypergeometric",
    "classical_hypergeometric",
]
