"""Gaussian Fourier integrals of Hermite polynomials, checked by quadrature.

Every integral here has the form (2 pi s)^(-1/2) * int f(x) e^(i x y - x^2/2s) dx
with f a trigonometric polynomial, so each can also be written as a finite
sum of Gaussians.  That sum serves as an oracle independent of both the
quadrature and the printed closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
from scipy import integrate

from .classical import double_factorial_odd, hermite_explicit
from .qcore import DomainError
from .qhermite import q_hermite_coefficient


class QuadratureError(ArithmeticError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error {achieved:.3g})")
        self.achieved = achieved


@dataclass(frozen=True)
class QuadratureSpec:
    half_width_sigmas: float = 12.0
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")
        # Gaussian tail beyond h sigmas is below erfc(h / sqrt 2)
        if math.erfc(self.half_width_sigmas / math.sqrt(2)) >= self.abs_tol / 10:
            raise DomainError("truncation window too narrow for abs_tol")

    def window(self, s: float, shift: float = 0.0) -> float:
        return self.half_width_sigmas * math.sqrt(s) + shift


DEFAULT_SPEC = QuadratureSpec()


@dataclass
class FourierPair:
    """lhs by quadrature, rhs by closed form; ``oracle`` is the Gaussian-sum value when one exists.

    rel_err is abs_err / |rhs|, or abs_err itself when rhs = 0.
    """

    lhs: complex
    rhs: complex
    abs_err: float = field(init=False)
    rel_err: float = field(init=False)
    oracle: complex | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lhs, self.rhs = complex(self.lhs), complex(self.rhs)
        if self.oracle is not None:
            self.oracle = complex(self.oracle)
        self.abs_err = abs(self.lhs - self.rhs)
        self.rel_err = self.abs_err / abs(self.rhs) if self.rhs else self.abs_err

    def max_rel_err(self) -> float:
        """Largest pairwise relative disagreement among lhs, rhs and oracle."""
        values = [self.lhs, self.rhs] + ([self.oracle] if self.oracle is not None else [])
        scale = max(abs(v) for v in values)
        if scale == 0:
            return 0.0
        worst = max(abs(a - b) for i, a in enumerate(values) for b in values[i + 1:])
        return worst / scale if scale > 1 else worst

    def agrees(self, tol: float) -> bool:
        return self.max_rel_err() <= tol


def gaussian_integral(f, y: float, s: float, spec: QuadratureSpec = DEFAULT_SPEC, shift: float = 0.0,
                      oscillation: float = 0.0) -> complex:
    """(2 pi s)^(-1/2) int f(x) e^(i x y - x^2 / 2s) dx over the truncated line.

    ``shift`` widens the window (drifted Gaussian peaks); ``oscillation`` is
    the largest angular frequency of f and raises the subdivision cap.
    """
    if s <= 0:
        raise DomainError("s must be positive")
    half = spec.window(s, shift)
    limit = int(spec.max_subdivisions * (1 + (oscillation + abs(y)) * math.sqrt(s)))
    norm = 1 / math.sqrt(2 * math.pi * s)

    def integrand(x):
        return complex(f(x)) * cmath.exp(1j * x * y - x * x / (2 * s)) * norm

    parts = []
    for take in (lambda z: z.real, lambda z: z.imag):
        value, err, *info = integrate.quad(
            lambda x: take(integrand(x)), -half, half,
            epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=limit, full_output=1,
        )
        if len(info) > 1 and err > max(spec.abs_tol, spec.rel_tol * abs(value)) * 100:
            raise QuadratureError(info[1].strip().splitlines()[0] if isinstance(info[1], str) else "quad failed", err)
        parts.append(value)
    return complex(parts[0], parts[1])


def gauss_transform(y: float, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> FourierPair:
    """Fourier transform of the normalized Gaussian: e^(-s y^2 / 2)."""
    lhs = gaussian_integral(lambda x: 1.0, y, s, spec, shift=abs(y) * s)
    return FourierPair(lhs, math.exp(-s * y * y / 2), params={"y": y, "s": s})


def shifted_gauss_transform(y: float, s: float, m: int, kappa, spec: QuadratureSpec = DEFAULT_SPEC) -> FourierPair:
    """Integral with the extra factor e^(i m kappa x); equals e^(-s (kappa m + y)^2 / 2)."""
    kappa = complex(kappa)
    lhs = trig_gaussian_integral([(m, 1.0)], kappa, y, s, spec)
    rhs = cmath.exp(-s * (kappa * m + y) ** 2 / 2)
    return FourierPair(lhs, rhs, params={"y": y, "s": s, "m": m, "kappa": kappa})


def kappa_from_q(q: float, s: float) -> float:
    """kappa = sqrt(-ln q / (2 s)), so that q = e^(-2 s kappa^2)."""
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    if s <= 0:
        raise DomainError("s must be positive")
    return math.sqrt(-math.log(q) / (2 * s))


def _gaussian_sum(weights, kappa, y: float, s: float) -> complex:
    # sum_j w_j (2 pi s)^(-1/2) int e^(i (j kappa + y) x - x^2/2s) dx
    return sum(w * cmath.exp(-s * (kappa * j + y) ** 2 / 2) for j, w in weights)


def _q_weights(n: int, q: float, b: float, s: float) -> list:
    # H_n(b e^{i kappa x}, s | q) = sum_k w_k e^{i (n - 2k) kappa x}
    return [(n - 2 * k, float(q_hermite_coefficient(n, k, q)) * s ** k * b ** (n - 2 * k)) for k in range(n // 2 + 1)]


def _trig_poly(weights, kappa):
    return lambda x: sum(w * cmath.exp(1j * j * kappa * x) for j, w in weights)


def _log10_peak(weights, kappa: complex, s: float) -> float:
    # |e^{i j kappa x - x^2/2s}| peaks at e^{s (j Im kappa)^2 / 2}
    total = sum(abs(w) * math.exp(s * (j * kappa.imag) ** 2 / 2) for j, w in weights)
    return math.log10(total) if total > 0 else 0.0


def trig_gaussian_integral(weights, kappa, y: float, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """gaussian_integral of sum_j w_j e^{i j kappa x}.

    A complex kappa makes the integrand grow like e^{|Im kappa| n |x|}
    before the Gaussian wins, and the result is far smaller than the
    integrand.  Past about four digits of cancellation the integral is done
    in mpmath at a working precision raised by the lost digits.
    """
    kappa = complex(kappa)
    top = max((abs(j) for j, _ in weights), default=0)
    shift = (top * abs(kappa) + abs(y)) * s
    lost = _log10_peak(weights, kappa, s)
    if lost <= 4:
        return gaussian_integral(_trig_poly(weights, kappa), y, s, spec, shift=shift, oscillation=top * abs(kappa))
    half = spec.window(s, shift)
    with mpmath.workdps(int(20 + lost)):
        kap, yy, ss = mpmath.mpc(kappa), mpmath.mpf(y), mpmath.mpf(s)
        ws = [(j, mpmath.mpf(w) if not isinstance(w, complex) else mpmath.mpc(w)) for j, w in weights]

        def f(x):
            return sum(w * mpmath.exp(1j * j * kap * x) for j, w in ws) * mpmath.exp(1j * x * yy - x * x / (2 * ss))

        pieces = max(8, int(math.ceil(2 * half * (top * abs(kappa) + abs(y) + 1) / math.pi)))
        nodes = mpmath.linspace(-half, half, pieces + 1)
        value, err = mpmath.quad(f, nodes, error=True)
        value = value / mpmath.sqrt(2 * mpmath.pi * ss)
        if err > spec.abs_tol:
            raise QuadratureError("high-precision quadrature did not settle", float(err))
        return complex(value)


def q_fourier_theorem(n: int, b: float, s: float, q: float, y: float,
                      spec: QuadratureSpec = DEFAULT_SPEC) -> FourierPair:
    """Transform of H_n(b e^{i kappa x}, s | q) against the q^-1 family.

    rhs = q^(n^2/4) H_n(b e^(-s kappa y), q^(n-3) s | 1/q) e^(-s y^2 / 2).
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError("n must be a nonnegative integer")
    q, s, b, y = float(q), float(s), float(b), float(y)
    kappa = kappa_from_q(q, s)
    weights = _q_weights(n, q, b, s)
    lhs = trig_gaussian_integral(weights, kappa, y, s, spec)
    oracle = _gaussian_sum(weights, kappa, y, s)
    arg = b * math.exp(-s * kappa * y)
    s_inv = q ** (n - 3) * s
    inverse = sum(float(q_hermite_coefficient(n, k, 1 / q)) * s_inv ** k * arg ** (n - 2 * k)
                  for k in range(n // 2 + 1))
    rhs = q ** (n * n / 4) * inverse * math.exp(-s * y * y / 2)
    return FourierPair(lhs, rhs, oracle=oracle, params={"n": n, "b": b, "s": s, "q": q, "y": y, "kappa": kappa})


def classical_fourier_zero(n: int, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> FourierPair:
    """int H_n(x, s) e^(-x^2/2s) dx / sqrt(2 pi s) = 0 for n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    h = hermite_explicit(n)
    lhs = gaussian_integral(lambda x: h.evaluate(x, s, mode="complex"), 0.0, s, spec)
    return FourierPair(lhs, 0.0, params={"n": n, "s": s})


def moment_integral(j: int, s: float, spec: QuadratureSpec = DEFAULT_SPEC) -> FourierPair:
    """Even Gaussian moments: s^(j/2) (j-1)!!."""
    if not isinstance(j, int) or j < 0 or j % 2:
        raise DomainError("j must be an even nonnegative integer")
    lhs = gaussian_integral(lambda x: x ** j, 0.0, s, spec, shift=math.sqrt(j * s))
    return FourierPair(lhs, s ** (j // 2) * double_factorial_odd(j // 2), params={"j": j, "s": s})


def complex_kappa(m: int, s: float) -> complex:
    """kappa = sqrt(pi m / s) e^(i pi / 4), a nonzero root of e^(-2 s kappa^2) = 1."""
    return math.sqrt(math.pi * m / s) * cmath.exp(1j * math.pi / 4)


@dataclass
class ComplexKappaCheck:
    pair: FourierPair
    phase: complex  # lhs / rhs predicted by the Gaussian sum

    @property
    def printed_holds(self) -> bool:
        return abs(self.phase - 1) < 1e-12


def classical_fourier_theorem(n: int, a: float, s: float, y: float, kappa,
                              spec: QuadratureSpec = DEFAULT_SPEC) -> ComplexKappaCheck:
    """Transform of H_n(a e^{i kappa x}, s) against H_n(a e^(-s kappa y), s) e^(-s y^2/2).

    For e^(-2 s kappa^2) = 1 each Gaussian term picks up e^(-i pi m j^2 / 2)
    with j = n - 2k; that is 1 for even n and (-i)^m for odd n, where
    2 s kappa^2 = 2 pi i m.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError("n must be a nonnegative integer")
    kappa = complex(kappa)
    h = hermite_explicit(n)
    weights = [(i, float(c) * s ** j * a ** i) for (i, j), c in h.terms()]
    lhs = trig_gaussian_integral(weights, kappa, y, s, spec)
    oracle = _gaussian_sum(weights, kappa, y, s)
    rhs = h.evaluate(a * cmath.exp(-s * kappa * y), s, mode="complex") * math.exp(-s * y * y / 2)
    pair = FourierPair(lhs, rhs, oracle=oracle, params={"n": n, "a": a, "s": s, "y": y, "kappa": kappa})
    m_eff = s * kappa * kappa / (math.pi * 1j)
    phase = cmath.exp(-1j * math.pi * m_eff / 2) if n % 2 else 1
    return ComplexKappaCheck(pair, complex(phase))
