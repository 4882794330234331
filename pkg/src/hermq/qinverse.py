"""H_n(x, s | q^-1): the deformed family with q inverted.

Coefficients c_{n,k}(q) = (-1)^k q^(k(k-1)) {n}! / ({n-2k}! {2k}!!) so that
H_n(x, s | q) = sum_k c_{n,k}(q) s^k x^(n-2k).  Inverting q rescales each
coefficient by a pure power of q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import Poly2, dilate_s, jackson_dx, mul_s, mul_x
from .qcore import DomainError, IdentityViolation, Rational, q_number, qparam
from .qhermite import q_hermite_coefficient, q_hermite_explicit


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")


def scaling_exponent(n: int, k: int) -> int:
    """Power of q relating c_{n,k}(1/q) to c_{n,k}(q): k(k + 3 - 2n)."""
    return k * (k + 3 - 2 * n)


@dataclass(frozen=True)
class CoeffCnk:
    n: int
    k: int
    q: object
    inverse: bool
    value: object

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "q": str(self.q), "inverse": self.inverse, "value": str(self.value)}


def c_coeff(n: int, k: int, q, inverse: bool = False) -> CoeffCnk:
    """c_{n,k}(q), or c_{n,k}(1/q) when ``inverse``.

    The inverted value is computed twice, directly at 1/q and through the
    scaling law, and the two must coincide.  Out-of-range k gives 0.
    """
    _check_n(n)
    q = qparam(q, allow_classical=True)
    if k < 0 or 2 * k > n:
        return CoeffCnk(n, k, q, inverse, Rational(0))
    if not inverse:
        return CoeffCnk(n, k, q, False, q_hermite_coefficient(n, k, q))
    direct = q_hermite_coefficient(n, k, 1 / q)
    scaled = q ** scaling_exponent(n, k) * q_hermite_coefficient(n, k, q)
    if direct != scaled:
        raise IdentityViolation(f"scaling law fails at n={n}, k={k}, q={q}: {direct} != {scaled}")
    return CoeffCnk(n, k, q, True, direct)


def q_inv_hermite(n: int, q) -> Poly2:
    """sum_k c_{n,k}(1/q) s^k x^(n-2k), cross-checked against the explicit sum at 1/q."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    poly = Poly2(((n - 2 * k, k), c_coeff(n, k, q, inverse=True).value) for k in range(n // 2 + 1))
    if poly != q_hermite_explicit(n, 1 / q):
        raise IdentityViolation(f"q^-1 family disagrees with substitution at n={n}, q={q}")
    return poly


# residuals; each is zero (or an exact 0 scalar) when the identity holds


def scaling_law_residual(n: int, k: int, q):
    q = qparam(q, allow_classical=True)
    if 2 * k > n:
        return Rational(0)
    return q_hermite_coefficient(n, k, 1 / q) - q ** scaling_exponent(n, k) * q_hermite_coefficient(n, k, q)


def coefficient_recursion_residual(n: int, k: int, q):
    """c_{n+1,k} - c_{n,k} + q^(n-1) {n} c_{n-1,k-1}, all at q."""
    q = qparam(q, allow_classical=True)
    c = lambda m, j: c_coeff(m, j, q).value  # noqa: E731
    prev = c(n - 1, k - 1) if n >= 1 else 0
    return c(n + 1, k) - c(n, k) + q ** (n - 1) * q_number(n, q) * prev


def inverse_coefficient_recursion_residual(n: int, k: int, q):
    """c_{n+1,k}(1/q) - q^(-2k) c_{n,k}(1/q) + q^(3-n-2k) {n} c_{n-1,k-1}(1/q)."""
    q = qparam(q, allow_classical=True)
    c = lambda m, j: c_coeff(m, j, q, inverse=True).value  # noqa: E731
    prev = c(n - 1, k - 1) if n >= 1 else 0
    return c(n + 1, k) - q ** (-2 * k) * c(n, k) + q ** (3 - n - 2 * k) * q_number(n, q) * prev


def polynomial_recursion_residual(n: int, q) -> Poly2:
    """H_{n+1} - x H_n(s/q^2) + s q^(1-n) {n} H_{n-1}(s/q^2), all in the q^-1 family."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    shrink = q ** -2
    rhs = mul_x(dilate_s(q_inv_hermite(n, q), shrink))
    if n >= 1:
        tail = mul_s(dilate_s(q_inv_hermite(n - 1, q), shrink))
        rhs = rhs - tail.scale(q ** (1 - n) * q_number(n, q))
    return q_inv_hermite(n + 1, q) - rhs


def lowering_residual(n: int, q) -> Poly2:
    """D_x^q H_n(x, s | 1/q) - {n} H_{n-1}(x, s/q^2 | 1/q)."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    lhs = jackson_dx(q_inv_hermite(n, q), q)
    if n == 0:
        return lhs
    return lhs - dilate_s(q_inv_hermite(n - 1, q), q ** -2).scale(q_number(n, q))


def factorization_product(n: int, q) -> Poly2:
    """prod_{k=1}^n (x eps^-2 - s q^(k+1-n) D_x^q) applied to 1, k = 1 leftmost.

    eps^-2 rescales s by q^-2 and acts before the multiplication by x.
    """
    _check_n(n)
    q = qparam(q, allow_classical=True)
    shrink = q ** -2
    p = Poly2.one()
    for k in range(n, 0, -1):
        p = mul_x(dilate_s(p, shrink)) - mul_s(jackson_dx(p, q)).scale(q ** (k + 1 - n))
    return p


@dataclass(frozen=True)
class FactorizationReport:
    q: object
    n_max: int
    first_failure: int | None
    residual: Poly2 | None

    @property
    def holds(self) -> bool:
        return self.first_failure is None


def check_factorization(n_max: int, q) -> FactorizationReport:
    """Compare the factored product with H_n(x, s | 1/q) for n <= n_max.

    A failure is reported with the smallest failing n and its residual.
    """
    q = qparam(q, allow_classical=True)
    for n in range(n_max + 1):
        residual = factorization_product(n, q) - q_inv_hermite(n, q)
        if residual:
            return FactorizationReport(q, n_max, n, residual)
    return FactorizationReport(q, n_max, None, None)
