"""Exact scalars and the polynomial ring Q[λ].

Rationals are :class:`fractions.Fraction`.  :class:`PolyLambda` is a dense
univariate polynomial in the formal parameter λ, stored as a tuple of integer
numerators over one shared positive denominator.  The representation is
canonical (lowest terms, no trailing zeros), so ``==`` is structural equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
MINUS = "−"


class PolyLambda:
    """Immutable polynomial in λ with rational coefficients."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for c in fracs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fracs]
        self._set(num, den)

    @classmethod
    def _raw(cls, num: list[int], den: int) -> PolyLambda:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    def _set(self, num: list[int], den: int) -> None:
        while num and num[-1] == 0:
            num.pop()
        if not num:
            den = 1
        else:
            g = den
            for a in num:
                g = math.gcd(g, a)
                if g == 1:
                    break
            if g != 1:
                num = [a // g for a in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> PolyLambda:
        c = Fraction(c)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def lam(cls) -> PolyLambda:
        """The indeterminate λ itself."""
        return cls._raw([0, 1], 1)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int | str, int | str]]) -> PolyLambda:
        """Build from ``(numerator, denominator)`` pairs, ascending powers."""
        return cls(Fraction(int(a), int(b)) for a, b in pairs)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Ascending coefficients; empty for the zero polynomial."""
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._num) - 1

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def constant_term(self) -> Fraction:
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate at ``λ = x``."""
        x = Fraction(x)
        acc = Fraction(0)
        for a in reversed(self._num):
            acc = acc * x + a
        return acc / self._den

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> PolyLambda | None:
        if isinstance(other, PolyLambda):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyLambda.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        den = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        a, b = self._num, other._num
        if len(a) < len(b):
            a, b, fa, fb = b, a, fb, fa
        num = [x * fa for x in a]
        for i, y in enumerate(b):
            num[i] += y * fb
        return PolyLambda._raw(num, den)

    __radd__ = __add__

    def __neg__(self) -> PolyLambda:
        return PolyLambda._raw([-a for a in self._num], self._den)

    def __pos__(self) -> PolyLambda:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._num, other._num
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            c = b[0]
            num = [x * c for x in a]
        else:
            num = [0] * (len(a) + len(b) - 1)
            for j, y in enumerate(b):
                if y:
                    for i, x in enumerate(a):
                        num[i + j] += x * y
        return PolyLambda._raw(num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar (or constant polynomial)."""
        if isinstance(other, PolyLambda):
            if not other.is_constant():
                raise TypeError("can only divide a PolyLambda by a constant")
            other = other.constant_term()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division of PolyLambda by zero")
        p, q = other.numerator, other.denominator
        if p < 0:
            p, q = -p, -q
        return PolyLambda._raw([a * q for a in self._num], self._den * p)

    def __pow__(self, k: int) -> PolyLambda:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def neg_lambda(self) -> PolyLambda:
        """Substitute ``λ -> -λ``."""
        return PolyLambda._raw(
            [-a if i % 2 else a for i, a in enumerate(self._num)], self._den
        )

    # -- rendering ----------------------------------------------------------

    def render(self, ascii: bool = False) -> str:
        """Canonical text form, ascending powers, e.g. ``3/2 − 1/2·λ``."""
        if not self._num:
            return "0"
        var, dot, minus = ("L", "*", "-") if ascii else ("λ", "·", MINUS)
        parts: list[str] = []
        for i, a in enumerate(self._num):
            if a == 0:
                continue
            c = Fraction(a, self._den)
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else (
                    f"{var}^{i}" if ascii else var + str(i).translate(_SUPERSCRIPTS)
                )
                body = mono if mag == 1 else f"{mag}{dot}{mono}"
            if not parts:
                parts.append(body if c > 0 else minus + body)
            else:
                parts.append((" + " if c > 0 else f" {minus} ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PolyLambda({self.render(ascii=True)!r})"


ZERO = PolyLambda._raw([], 1)
ONE = PolyLambda._raw([1], 1)
LAMBDA = PolyLambda.lam()


def as_poly(x: Scalar | PolyLambda) -> PolyLambda:
    if isinstance(x, PolyLambda):
        return x
    return PolyLambda.constant(x)


def substitute_neg_lambda(p: PolyLambda) -> PolyLambda:
    """Map ``p(λ)`` to ``p(-λ)``."""
    return p.neg_lambda()


@lru_cache(maxsize=None)
def deg_falling(x: Scalar, n: int) -> PolyLambda:
    """Degenerate falling factorial ``x (x - λ) ... (x - (n-1)λ)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    result = ONE
    for i in range(n):
        result = result * PolyLambda([x, -i])
    return result


def falling_poly(p: PolyLambda | Scalar, n: int) -> PolyLambda:
    """Unit-step falling factorial ``p (p-1) ... (p-n+1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = as_poly(p)
    result = ONE
    for i in range(n):
        result = result * (p - i)
    return result


def rising_poly(p: PolyLambda | Scalar, n: int) -> PolyLambda:
    """Rising factorial ``p (p+1) ... (p+n-1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = as_poly(p)
    result = ONE
    for i in range(n):
        result = result * (p + i)
    return result


@lru_cache(maxsize=None)
def binom_poly(p: PolyLambda, k: int) -> PolyLambda:
    """Generalized binomial coefficient with a polynomial upper argument."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return falling_poly(p, k) / math.factorial(k)


def beta_int(a: int, b: int) -> Fraction:
    """Beta function at positive integers: ``(a-1)! (b-1)! / (a+b-1)!``."""
    if a < 1 or b < 1:
        raise ValueError(f"beta_int needs positive integers, got ({a}, {b})")
    return Fraction(
        math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1)
    )


def render_rational(x: Scalar, ascii: bool = False) -> str:
    return PolyLambda.constant(x).render(ascii=ascii)
