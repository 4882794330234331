"""Sparse exact polynomials in two formal variables ``x`` and ``s``, and the
linear operators (derivatives, dilations, degree scaling) that act on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Sequence

from .qcore import DomainError, Rational, as_rational, q_number

Monomial = tuple  # (x exponent, s exponent)


def format_rational(c) -> str:
    """Canonical ``num/den`` rendering; integers keep a ``/1`` denominator."""
    c = as_rational(c)
    return f"{c.numerator}/{c.denominator}"


class Poly2:
    """Immutable sparse polynomial sum c_{ij} x^i s^j with rational c_{ij}.

    Zero coefficients are never stored.  Iteration is sorted by (i, j).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise DomainError(f"negative exponent in monomial {(i, j)}")
            c = as_rational(c) if isinstance(c, _RationalABC) else c
            if c:
                key = (int(i), int(j))
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly2":
        # terms already cleaned; skip validation on hot paths
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls) -> "Poly2":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Poly2":
        return cls.const(1)

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int = 0, c=1) -> "Poly2":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "Poly2":
        return cls.monomial(1, 0)

    @classmethod
    def s(cls) -> "Poly2":
        return cls.monomial(0, 1)

    # inspection

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, i: int, j: int = 0):
        return self._terms.get((i, j), Rational(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree_x(self) -> int:
        """Largest x exponent; -1 for the zero polynomial."""
        return max((i for i, _ in self._terms), default=-1)

    def degree_s(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def leading_x_coeff(self) -> "Poly2":
        """Coefficient of the top x power, as a polynomial in s."""
        d = self.degree_x()
        return Poly2._raw({(0, j): c for (i, j), c in self._terms.items() if i == d})

    # arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, _RationalABC):
            return self == Poly2.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "Poly2":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Poly2":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly2":
        return (-self) + other

    def __mul__(self, other) -> "Poly2":
        if isinstance(other, _RationalABC):
            return self.scale(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        if len(other._terms) == 1:
            ((di, dj), c), = other._terms.items()
            return Poly2._raw({(i + di, j + dj): v * c for (i, j), v in self._terms.items()})
        if len(self._terms) == 1:
            return other * self
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly2._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly2":
        if k < 0:
            raise DomainError("negative powers are not polynomials")
        out = Poly2.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Poly2":
        if not c:
            return Poly2.zero()
        if isinstance(c, _RationalABC):
            c = as_rational(c)
        return Poly2._raw({k: v * c for k, v in self._terms.items()})

    # substitution and evaluation

    def substitute_s(self, value) -> "Poly2":
        """Replace s by a rational constant; the result depends on x only."""
        value = as_rational(value)
        out: dict = {}
        for (i, j), c in self._terms.items():
            out[(i, 0)] = out.get((i, 0), 0) + c * value ** j
        return Poly2._raw({k: c for k, c in out.items() if c})

    def evaluate(self, x, s, mode: str = "exact"):
        """Value at a point.  ``exact`` needs rationals; ``complex`` uses floats.

        Horner in x over coefficients that are polynomials in s.
        """
        if mode == "exact":
            x, s = as_rational(x), as_rational(s)
            convert = lambda c: c  # noqa: E731
            zero = Rational(0)
        elif mode == "complex":
            x, s = complex(x), complex(s)
            convert = complex
            zero = 0j
        else:
            raise DomainError(f"unknown evaluation mode {mode!r}")
        if not self._terms:
            return zero
        by_x: dict = {}
        for (i, j), c in self._terms.items():
            by_x.setdefault(i, []).append((j, convert(c)))
        acc = zero
        for i in range(self.degree_x(), -1, -1):
            inner = zero
            for j, c in by_x.get(i, ()):
                inner += c * s ** j
            acc = acc * x + inner
        return acc

    def __call__(self, x, s, mode: str = "exact"):
        return self.evaluate(x, s, mode)

    # serialization and display

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"x": i, "s": j, "coeff": format_rational(c)} for (i, j), c in self.terms()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "Poly2":
        return cls(((t["x"], t["s"]), as_rational(t["coeff"])) for t in data["terms"])

    @classmethod
    def from_json(cls, text: str) -> "Poly2":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        # highest x power first reads like the usual printed form
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
            mono = "*".join(
                v for v in (_power("s", j), _power("x", i)) if v
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly2({str(self)!r})"


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _coerce(value):
    if isinstance(value, Poly2):
        return value
    if isinstance(value, _RationalABC):
        return Poly2.const(value)
    return NotImplemented


# termwise maps -------------------------------------------------------------


def _map_terms(p: Poly2, fn) -> Poly2:
    out: dict = {}
    for (i, j), c in p._terms.items():
        res = fn(i, j, c)
        if res is None:
            continue
        key, val = res
        if val:
            out[key] = out.get(key, 0) + val
    return Poly2._raw({k: c for k, c in out.items() if c})


def _check_base(base) -> Fraction:
    base = as_rational(base)
    if base == 0:
        raise DomainError("derivative base must be nonzero")
    return base


def classical_dx(p: Poly2) -> Poly2:
    """d/dx."""
    return _map_terms(p, lambda i, j, c: ((i - 1, j), c * i) if i else None)


def jackson_dx(p: Poly2, base) -> Poly2:
    """Jackson derivative in x, x^m -> {m}_base x^(m-1).

    Applied through the monomial rule, so base = 1 is the ordinary derivative
    and nothing is divided by (1 - base) x.
    """
    base = _check_base(base)
    return _map_terms(p, lambda i, j, c: ((i - 1, j), c * q_number(i, base)) if i else None)


def jackson_ds(p: Poly2, base) -> Poly2:
    """Jackson derivative in s, s^k -> {k}_base s^(k-1)."""
    base = _check_base(base)
    return _map_terms(p, lambda i, j, c: ((i, j - 1), c * q_number(j, base)) if j else None)


def dilate_x(p: Poly2, factor) -> Poly2:
    """f(x, s) -> f(factor x, s)."""
    factor = as_rational(factor)
    return _map_terms(p, lambda i, j, c: ((i, j), c * factor ** i))


def dilate_s(p: Poly2, factor) -> Poly2:
    """f(x, s) -> f(x, factor s)."""
    factor = as_rational(factor)
    return _map_terms(p, lambda i, j, c: ((i, j), c * factor ** j))


def scale_by_pow_deg_x(p: Poly2, base) -> Poly2:
    """base^N with N the x-degree counting operator: x^i s^j -> base^i x^i s^j."""
    return dilate_x(p, base)


def mul_x(p: Poly2) -> Poly2:
    return Poly2._raw({(i + 1, j): c for (i, j), c in p._terms.items()})


def mul_s(p: Poly2) -> Poly2:
    return Poly2._raw({(i, j + 1): c for (i, j), c in p._terms.items()})


# operator algebra ----------------------------------------------------------


class Op:
    """A linear operator on Poly2.

    ``a @ b`` applies b first, ``a + b`` and ``c * a`` form linear
    combinations, ``a ** k`` is k-fold composition.
    """

    def apply(self, p: Poly2) -> Poly2:
        raise NotImplementedError

    def __call__(self, p: Poly2) -> Poly2:
        return self.apply(p)

    def __matmul__(self, other: "Op") -> "OpChain":
        if not isinstance(other, Op):
            return NotImplemented
        return OpChain(_atoms(self) + _atoms(other))

    def __add__(self, other: "Op") -> "AddScaled":
        if not isinstance(other, Op):
            return NotImplemented
        return AddScaled(_summands(self) + _summands(other))

    def __sub__(self, other: "Op") -> "AddScaled":
        if not isinstance(other, Op):
            return NotImplemented
        return AddScaled(_summands(self) + tuple((-c, op) for c, op in _summands(other)))

    def __neg__(self) -> "AddScaled":
        return AddScaled(tuple((-c, op) for c, op in _summands(self)))

    def __rmul__(self, c) -> "AddScaled":
        c = as_rational(c)
        return AddScaled(tuple((c * k, op) for k, op in _summands(self)))

    def __pow__(self, k: int) -> "Op":
        if k < 0:
            raise DomainError("operator powers must be nonnegative")
        return OpChain(_atoms(self) * k) if k else Identity()


def _atoms(op: Op) -> tuple:
    return op.atoms if isinstance(op, OpChain) else (op,)


def _summands(op: Op) -> tuple:
    return op.summands if isinstance(op, AddScaled) else ((Rational(1), op),)


@dataclass(frozen=True)
class Identity(Op):
    def apply(self, p):
        return p


@dataclass(frozen=True)
class MulByX(Op):
    def apply(self, p):
        return mul_x(p)


@dataclass(frozen=True)
class MulByS(Op):
    def apply(self, p):
        return mul_s(p)


@dataclass(frozen=True)
class ClassicalDx(Op):
    def apply(self, p):
        return classical_dx(p)


@dataclass(frozen=True)
class JacksonDx(Op):
    base: object

    def apply(self, p):
        return jackson_dx(p, self.base)


@dataclass(frozen=True)
class JacksonDs(Op):
    base: object

    def apply(self, p):
        return jackson_ds(p, self.base)


@dataclass(frozen=True)
class DilateS(Op):
    factor: object

    def apply(self, p):
        return dilate_s(p, self.factor)


@dataclass(frozen=True)
class DilateX(Op):
    factor: object

    def apply(self, p):
        return dilate_x(p, self.factor)


@dataclass(frozen=True)
class ScaleByQPowDegX(Op):
    base: object

    def apply(self, p):
        return scale_by_pow_deg_x(p, self.base)


@dataclass(frozen=True)
class OpChain(Op):
    """Composition; atoms are applied right to left."""

    atoms: tuple

    def apply(self, p):
        for op in reversed(self.atoms):
            p = op.apply(p)
        return p


@dataclass(frozen=True)
class AddScaled(Op):
    """Linear combination sum c_i op_i."""

    summands: tuple

    def apply(self, p):
        out = Poly2.zero()
        for c, op in self.summands:
            if c:
                out = out + op.apply(p).scale(c)
        return out


def apply_chain(chain: Op, p: Poly2) -> Poly2:
    return chain.apply(p)


def apply_series(op: Op, coeffs: Sequence, p: Poly2) -> Poly2:
    """sum_k coeffs[k] op^k p, stopping once op^k p vanishes.

    ``coeffs`` may be a callable k -> coefficient.  For a nilpotent op on p
    (any lowering operator) this is exact with no truncation.
    """
    get = coeffs if callable(coeffs) else (lambda k: coeffs[k] if k < len(coeffs) else None)
    out = Poly2.zero()
    cur = p
    k = 0
    while cur:
        c = get(k)
        if c is None:
            raise DomainError(f"coefficient sequence exhausted at k = {k} before the series terminated")
        out = out + cur.scale(c)
        cur = op.apply(cur)
        k += 1
    return out
