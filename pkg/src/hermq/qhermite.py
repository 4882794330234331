"""The deformed Hermite family H_n(x, s | q).

Generating function e_q(t x) E_{q^2}(-s t^2 / {2}_q) = sum H_n t^n / {n}_q!,
so H_3 = x^3 - {3}_q s x and H_4 = x^4 - (1+q^2){3}_q s x^2 + q^2 {3}_q s^2.

Four constructions are provided (recursion, explicit sum, operator product,
operator exponential) so each can be checked against the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from collections import OrderedDict

from .classical import combine_basis, solve_in_hermite_basis
from .polyring import (
    JacksonDx,
    MulByS,
    MulByX,
    Op,
    Poly2,
    ScaleByQPowDegX,
    apply_series,
    format_rational,
    jackson_dx,
    mul_s,
    mul_x,
)
from .qcore import (
    DomainError,
    SeriesTruncation,
    as_rational,
    basic_hypergeometric,
    is_exact,
    q_double_factorial_even,
    q_double_factorial_odd,
    q_exp_coefficients,
    q_exponential_partial,
    q_factorial,
    q_number,
    q_shifted,
    qparam,
)


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")


_SEQUENCES: "OrderedDict[object, list]" = OrderedDict()
_SEQUENCE_SLOTS = 64


def _q_hermite_sequence(n_max: int, q) -> list:
    # one growing list per q, least recently used q evicted first
    seq = _SEQUENCES.get(q)
    if seq is None:
        seq = _SEQUENCES[q] = [Poly2.one(), Poly2.x()]
        if len(_SEQUENCES) > _SEQUENCE_SLOTS:
            _SEQUENCES.popitem(last=False)
    else:
        _SEQUENCES.move_to_end(q)
    for m in range(len(seq) - 1, n_max):
        seq.append(mul_x(seq[m]) - mul_s(seq[m - 1]).scale(q_number(m, q) * q ** (m - 1)))
    return seq


def q_hermite(n: int, q) -> Poly2:
    """H_n(x, s | q) from H_{n+1} = x H_n - s {n}_q q^(n-1) H_{n-1}."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    return _q_hermite_sequence(n, q)[n]


def q_hermite_coefficient(n: int, k: int, q) -> Fraction:
    """Coefficient of s^k x^(n-2k): (-1)^k q^(k(k-1)) {n}! / ({n-2k}! {2k}!!)."""
    if k < 0 or 2 * k > n:
        return Fraction(0)
    return (
        (-1) ** k * q ** (k * (k - 1)) * q_factorial(n, q)
        / (q_factorial(n - 2 * k, q) * q_double_factorial_even(k, q))
    )


def q_hermite_explicit(n: int, q) -> Poly2:
    _check_n(n)
    q = qparam(q, allow_classical=True)
    return Poly2(((n - 2 * k, k), q_hermite_coefficient(n, k, q)) for k in range(n // 2 + 1))


def q_hermite_2phi0(n: int, q, x, s, convention: str = "standard"):
    """x^n 2phi0(q^-n, q^(1-n); -; q^2; s q^(2n-1) / ((1-q) x^2)) at a point.

    Reproduces the explicit sum under the standard normalization of the
    series; ``convention="bare"`` drops the (-1)^m q^(m(m-1)) factor and
    does not.
    """
    _check_n(n)
    if x == 0:
        raise DomainError("the 2phi0 form needs x != 0")
    if is_exact(q, x, s):
        q, x, s = as_rational(q), as_rational(x), as_rational(s)
    z = s * q ** (2 * n - 1) / ((1 - q) * x ** 2)
    series = basic_hypergeometric(
        [q ** -n, q ** (1 - n)], [], q * q, z,
        trunc=SeriesTruncation(max_terms=n // 2 + 2), convention=convention,
    )
    return x ** n * series


def q_hermite_product(n: int, q) -> Poly2:
    """prod_{k=1}^n (x - s q^(n-1-k) D_x^q) applied to 1.

    The k = 1 factor is leftmost, so the k = n factor acts on 1 first.
    """
    _check_n(n)
    q = qparam(q, allow_classical=True)
    p = Poly2.one()
    for k in range(n, 0, -1):
        p = mul_x(p) - mul_s(jackson_dx(p, q)).scale(q ** (n - 1 - k))
    return p


def q_hermite_operator_exp(n: int, q) -> Poly2:
    """E_{q^2}(-s (D_x^q)^2 / {2}_q) applied to x^n."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    two = q_number(2, q)
    coeffs = q_exp_coefficients("E_q", q * q, n // 2 + 1)
    step = MulByS() @ JacksonDx(q) @ JacksonDx(q)
    return apply_series(step, lambda k: coeffs[k] * (-1 / two) ** k, Poly2.monomial(n))


def lowering_residual(n: int, q) -> Poly2:
    """D_x^q H_n - {n}_q H_{n-1}."""
    q = qparam(q, allow_classical=True)
    lhs = jackson_dx(q_hermite(n, q), q)
    if n == 0:
        return lhs
    return lhs - q_hermite(n - 1, q).scale(q_number(n, q))


def q_difference_residual(n: int, q) -> Poly2:
    """(s (D_x^q)^2 - x q^(2-n) D_x^q + q^(2-n) {n}_q) H_n."""
    q = qparam(q, allow_classical=True)
    h = q_hermite(n, q)
    d1 = jackson_dx(h, q)
    d2 = jackson_dx(d1, q)
    w = q ** (2 - n)
    return Poly2.s() * d2 - (Poly2.x() * d1).scale(w) + h.scale(w * q_number(n, q))


def even_power_lowering_residual(n: int, k: int, q) -> Poly2:
    """(D_x^q)^{2k} H_n - ({n}_q!/{n-2k}_q!) H_{n-2k}."""
    q = qparam(q, allow_classical=True)
    p = q_hermite(n, q)
    for _ in range(2 * k):
        p = jackson_dx(p, q)
    return p - q_hermite(n - 2 * k, q).scale(q_factorial(n, q) / q_factorial(n - 2 * k, q))


def zero_value(n: int, q) -> Poly2:
    """Closed form of H_n(0, s | q): (-s)^m q^(m(m-1)) {2m-1}_q!! for n = 2m, else 0."""
    q = qparam(q, allow_classical=True)
    if n % 2:
        return Poly2.zero()
    m = n // 2
    return Poly2.monomial(0, m, (-1) ** m * q ** (m * (m - 1)) * q_double_factorial_odd(m, q))


def raising_identity(n: int, q) -> Poly2:
    """H_n(x + s q^N D_x^q, s | q) applied to 1.

    Built from the recursion with x replaced by A = x + s q^N D_x^q:
    P_{m+1}(A) = A P_m(A) - s {m}_q q^(m-1) P_{m-1}(A).  Equals x^n.
    """
    _check_n(n)
    q = qparam(q, allow_classical=True)
    a = MulByX() + MulByS() @ ScaleByQPowDegX(q) @ JacksonDx(q)
    prev, cur = Poly2.zero(), Poly2.one()
    for m in range(n):
        prev, cur = cur, a.apply(cur) - (Poly2.s() * prev).scale(q_number(m, q) * q ** (m - 1) if m else 0)
    return cur


def raising_identity_explicit(n: int, q) -> Poly2:
    """Same operator polynomial through the explicit sum, sum_k c_{n,k} s^k A^(n-2k) 1."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    powers = h_poly_powers(n, q)
    out = Poly2.zero()
    for k in range(n // 2 + 1):
        out = out + (powers[n - 2 * k] * Poly2.monomial(0, k)).scale(q_hermite_coefficient(n, k, q))
    return out


def h_poly_powers(n: int, q) -> list:
    """[A^m 1 for m = 0..n] with A = x + s q^N D_x^q."""
    q = as_rational(q)
    a = MulByX() + MulByS() @ ScaleByQPowDegX(q) @ JacksonDx(q)
    out = [Poly2.one()]
    for _ in range(n):
        out.append(a.apply(out[-1]))
    return out


# inversion -----------------------------------------------------------------


def inversion_closed_form(n: int, q) -> list:
    """Coefficients of the printed inversion formula,
    {n}_q! q^(k(k-1)) / ({2k}_q!! {n-2k}_q!)."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    return [
        q_factorial(n, q) * q ** (k * (k - 1)) / (q_double_factorial_even(k, q) * q_factorial(n - 2 * k, q))
        for k in range(n // 2 + 1)
    ]


def inversion_corrected(n: int, q) -> list:
    """{n}_q! / ({2k}_q!! {n-2k}_q!); what e_{q^2}(z) E_{q^2}(-z) = 1 gives."""
    _check_n(n)
    q = qparam(q, allow_classical=True)
    return [
        q_factorial(n, q) / (q_double_factorial_even(k, q) * q_factorial(n - 2 * k, q))
        for k in range(n // 2 + 1)
    ]


@dataclass(frozen=True)
class InversionTable:
    """x^n expanded in the basis s^k H_{n-2k}(x, s | q).

    ``coeffs`` come from exact triangular elimination and are ground truth;
    ``paper_coeffs`` are the printed closed form, kept for comparison.
    """

    n: int
    q: Fraction
    coeffs: tuple
    paper_coeffs: tuple
    agree: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "agree", tuple(a == b for a, b in zip(self.coeffs, self.paper_coeffs)))

    @property
    def all_agree(self) -> bool:
        return all(self.agree)

    def first_disagreement(self):
        for k, ok in enumerate(self.agree):
            if not ok:
                return k
        return None

    def reconstruct(self) -> Poly2:
        return combine_basis(self.coeffs, lambda m: q_hermite(m, self.q), self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": format_rational(self.q),
            "coeffs": [format_rational(c) for c in self.coeffs],
            "paper_coeffs": [format_rational(c) for c in self.paper_coeffs],
            "agree": list(self.agree),
        }


def q_inversion(n: int, q) -> InversionTable:
    _check_n(n)
    q = qparam(q, allow_classical=True)
    coeffs = solve_in_hermite_basis(n, lambda m: q_hermite(m, q))
    return InversionTable(n, q, tuple(coeffs), tuple(inversion_closed_form(n, q)))


def inverse_operator_apply(n: int, q, printed: bool = False) -> Poly2:
    """sum_k w_k s^k (D_x^q)^{2k} H_n with w_k = 1/{2k}_q!!.

    With ``printed=True`` w_k carries the extra q^(k(k-1)) of the printed
    operator L_n(s, D_x^q | q); only the uncorrected weights recover x^n.
    """
    _check_n(n)
    q = qparam(q, allow_classical=True)
    step = MulByS() @ JacksonDx(q) @ JacksonDx(q)

    def weight(k):
        w = 1 / q_double_factorial_even(k, q)
        return w * q ** (k * (k - 1)) if printed else w

    return apply_series(step, weight, q_hermite(n, q))


# decomposition of unity ---------------------------------------------------


def unity_composition_coefficients(q, order: int, corrected: bool = False) -> list:
    """Coefficients c_j of (s (D_x^q)^2)^j in the composed operator

        [sum_k (-1)^k q^(k(k-1)) s^k (D_x^q)^{2k} / {2k}_q!!]
        o [sum_m w_m s^m (D_x^q)^{2m} / {2m}_q!!],

    with w_m = q^(m(m-1)) as printed, or w_m = 1 when ``corrected``.  The
    composition is the identity iff c = [1, 0, 0, ...].
    """
    q = qparam(q, allow_classical=True)
    first = [(-1) ** k * q ** (k * (k - 1)) / q_double_factorial_even(k, q) for k in range(order + 1)]
    second = [
        (1 if corrected else q ** (m * (m - 1))) / q_double_factorial_even(m, q) for m in range(order + 1)
    ]
    return [sum((first[k] * second[j - k] for k in range(j + 1)), Fraction(0)) for j in range(order + 1)]


def unity_composition_apply(p: Poly2, q, corrected: bool = True) -> Poly2:
    """Apply the composed operator (either pair) to a polynomial."""
    q = qparam(q, allow_classical=True)
    step = MulByS() @ JacksonDx(q) @ JacksonDx(q)
    second = lambda m: (1 if corrected else q ** (m * (m - 1))) / q_double_factorial_even(m, q)  # noqa: E731
    first = lambda k: (-1) ** k * q ** (k * (k - 1)) / q_double_factorial_even(k, q)  # noqa: E731
    return apply_series(step, first, apply_series(step, second, p))


# L_n and its hypergeometric form ------------------------------------------


def l_poly(n: int, alpha, beta, q):
    """L_n(alpha, beta | q) = sum_{k <= n/2} q^(k(k-1)) (alpha beta^2)^k / {2k}_q!!."""
    _check_n(n)
    u = alpha * beta ** 2
    total = 0
    for k in range(n // 2 + 1):
        total += q ** (k * (k - 1)) * u ** k / q_double_factorial_even(k, q)
    return total


def l_poly_hypergeometric(n: int, alpha, beta, q, convention: str = "standard"):
    """L_{2n} via u^n q^(n(n-1))/{2n}_q!! 3phi2(q^-n, -q^-n, q; 0, 0; q; -q^2/((1-q) u))."""
    _check_n(n)
    u = alpha * beta ** 2
    if u == 0:
        raise DomainError("alpha * beta^2 must be nonzero in the 3phi2 form")
    if is_exact(u, q):
        u, q = as_rational(u), as_rational(q)
    z = -q * q / ((1 - q) * u)
    series = basic_hypergeometric(
        [q ** -n, -(q ** -n), q], [0, 0], q, z,
        trunc=SeriesTruncation(max_terms=2 * n + 2), convention=convention,
    )
    return u ** n * q ** (n * (n - 1)) / q_double_factorial_even(n, q) * series


def l_infinity(alpha, beta, q, trunc: SeriesTruncation = SeriesTruncation(max_terms=200)):
    """Numeric L_n for large n: partial sums until the tail is negligible."""
    u = alpha * beta ** 2
    u, q = float(u), float(q)
    total, k = 0.0, 0
    while k < trunc.max_terms:
        term = q ** (k * (k - 1)) * u ** k / float(q_double_factorial_even(k, as_rational(q)))
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)) and k > 2:
            return total
        k += 1
    return total


def l_infinity_closed(alpha, beta, q, trunc: SeriesTruncation = SeriesTruncation()):
    """E_{q^2}(alpha beta^2 / {2}_q), summed as a q-exponential series."""
    u = float(alpha * beta ** 2)
    q = float(q)
    return q_exponential_partial("E_q", u / (1 + q), q * q, trunc=trunc)


# Al-Salam-Chihara and discrete q-Hermite I --------------------------------


def alsalam_chihara(n: int, a, b, c, q) -> Poly2:
    """P_{n+1} = (x - a q^n) P_n - (c + b q^(n-1)) {n}_q P_{n-1}, P_0 = 1.

    a, b, c are rational constants; the result is a polynomial in x alone.
    """
    _check_n(n)
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    q = qparam(q, allow_classical=True)
    x = Poly2.x()
    prev, cur = Poly2.zero(), Poly2.one()
    for m in range(n):
        nxt = (x - a * q ** m) * cur
        if m:
            nxt = nxt - prev.scale((c + b * q ** (m - 1)) * q_number(m, q))
        prev, cur = cur, nxt
    return cur


def discrete_q_hermite_1(n: int, q) -> Poly2:
    """h_n(x; q) from its standard monomial expansion,
    (q;q)_n sum_k (-1)^k q^(k(k-1)) x^(n-2k) / ((q^2;q^2)_k (q;q)_{n-2k})."""
    _check_n(n)
    q = qparam(q)
    qq = q_shifted(q, n, q)
    return Poly2(
        (
            (n - 2 * k, 0),
            (-1) ** k * q ** (k * (k - 1)) * qq / (q_shifted(q * q, k, q * q) * q_shifted(q, n - 2 * k, q)),
        )
        for k in range(n // 2 + 1)
    )


# generating functions -----------------------------------------------------


def series_mul(a: list, b: list, order: int) -> list:
    """Cauchy product of two coefficient lists, truncated to ``order`` terms."""
    out = []
    for n in range(order):
        acc = Poly2.zero()
        for k in range(n + 1):
            if k < len(a) and n - k < len(b):
                left, right = a[k], b[n - k]
                if left and right:
                    acc = acc + _times(left, right)
        out.append(acc)
    return out


def _times(a, b):
    if isinstance(a, Poly2) and isinstance(b, Poly2):
        return a * b
    if isinstance(a, Poly2):
        return a.scale(b)
    if isinstance(b, Poly2):
        return b.scale(a)
    return Poly2.const(a * b)


def generating_function_coefficients(q, order: int) -> list:
    """t^n coefficients of e_q(t x) E_{q^2}(-s t^2 / {2}_q) as polynomials in x, s."""
    q = qparam(q, allow_classical=True)
    e = q_exp_coefficients("e_q", q, order)
    big = q_exp_coefficients("E_q", q * q, order)
    two = q_number(2, q)
    left = [Poly2.monomial(n, 0, e[n]) for n in range(order)]
    right = [Poly2.zero()] * order
    for m in range(0, (order + 1) // 2):
        if 2 * m < order:
            right[2 * m] = Poly2.monomial(0, m, big[m] * (-1 / two) ** m)
    return series_mul(left, right, order)


def even_odd_generating_coefficients(q, order: int, parity: str) -> tuple:
    """Both sides of the even/odd generating functions as series in u = sqrt(t).

    Returns (lhs, rhs) coefficient lists in u.  Even:
    sum H_{2n} (-t)^n / {2n}_q!  vs  cos_q(x u) E_{q^2}(s u^2 / {2}_q).
    Odd: sum H_{2n+1} (-t)^n / {2n+1}_q!  vs  sin_q(x u)/u E_{q^2}(s u^2 / {2}_q).
    """
    q = qparam(q, allow_classical=True)
    two = q_number(2, q)
    offset = 0 if parity == "even" else 1
    if parity not in ("even", "odd"):
        raise DomainError("parity must be 'even' or 'odd'")
    lhs = [Poly2.zero()] * order
    for n in range(0, (order + 1) // 2):
        if 2 * n < order:
            m = 2 * n + offset
            lhs[2 * n] = q_hermite(m, q).scale((-1) ** n / q_factorial(m, q))
    trig = q_exp_coefficients("cos_q" if parity == "even" else "sin_q", q, order + offset)
    # divide sin_q(xu) by u: shift down one power
    trig_u = [Poly2.monomial(j + offset, 0, trig[j + offset]) for j in range(order)]
    big = q_exp_coefficients("E_q", q * q, order)
    gauss = [Poly2.zero()] * order
    for m in range(0, (order + 1) // 2):
        if 2 * m < order:
            gauss[2 * m] = Poly2.monomial(0, m, big[m] / two ** m)
    return lhs, series_mul(trig_u, gauss, order)
