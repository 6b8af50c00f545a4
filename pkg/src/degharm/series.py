"""Truncated formal power series in t with coefficients in Q[λ].

A :class:`TruncatedSeries` of order ``N`` knows the coefficients of
``t^0 .. t^N``; everything above is unknown, so binary operations return the
smaller of the two orders.  The ``gf_*`` builders produce the generating
functions of the degenerate sequences and serve as the independent oracle
for the closed forms in :mod:`degharm.sequences`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .exact import (
    LAMBDA,
    ONE,
    ZERO,
    PolyLambda,
    Scalar,
    as_poly,
    binom_poly,
    deg_falling,
)

DEFAULT_ORDER = 32


class SeriesError(ValueError):
    """Raised when a series operation's precondition does not hold."""


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[PolyLambda | Scalar], order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [as_poly(c) for c in coeffs][: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: tuple[PolyLambda, ...] = tuple(cs)

    @classmethod
    def from_function(cls, f: Callable[[int], PolyLambda | Scalar], order: int):
        return cls((f(n) for n in range(order + 1)), order)

    def __getitem__(self, n: int) -> PolyLambda:
        if n > self.order:
            raise IndexError(f"coefficient t^{n} beyond order {self.order}")
        return self.coeffs[n] if n >= 0 else ZERO

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        shown = ", ".join(c.render(ascii=True) for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order})"

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order + 1`` if none)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return self.order + 1

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def map(self, f: Callable[[PolyLambda], PolyLambda]) -> TruncatedSeries:
        return TruncatedSeries([f(c) for c in self.coeffs], self.order)

    def neg_lambda(self) -> TruncatedSeries:
        """Substitute ``λ -> -λ`` in every coefficient."""
        return self.map(PolyLambda.neg_lambda)

    def at(self, lam: Scalar) -> list[Fraction]:
        """Coefficients evaluated at a numeric λ."""
        return [c(lam) for c in self.coeffs]

    def egf_values(self) -> list[PolyLambda]:
        """``n! * [t^n]`` for each ``n``, for exponential generating functions."""
        return [c * math.factorial(n) for n, c in enumerate(self.coeffs)]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction, PolyLambda)):
            return TruncatedSeries([other], self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n
        )

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.order)

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
        if isinstance(other, (int, Fraction, PolyLambda)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c / other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_div(self, other)

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            raise ValueError("exponent must be non-negative")
        result = one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, inner: TruncatedSeries) -> TruncatedSeries:
        return series_compose(self, inner)


# -- elementary series ------------------------------------------------------


def one(order: int) -> TruncatedSeries:
    return TruncatedSeries([ONE], order)


def t_series(order: int) -> TruncatedSeries:
    """The series ``t``."""
    return TruncatedSeries([ZERO, ONE], order)


def monomial(k: int, order: int, coeff: PolyLambda | Scalar = 1) -> TruncatedSeries:
    return TruncatedSeries([ZERO] * k + [as_poly(coeff)], order)


def geometric(order: int) -> TruncatedSeries:
    """``1/(1-t)``."""
    return TruncatedSeries([ONE] * (order + 1), order)


def t_over_1_minus_t(order: int) -> TruncatedSeries:
    """``t/(1-t)``."""
    return TruncatedSeries([ZERO] + [ONE] * order, order)


# -- core operations --------------------------------------------------------


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    ia = [i for i in range(n + 1) if not ac[i].is_zero()]
    ib = [j for j in range(n + 1) if not bc[j].is_zero()]
    out = [ZERO] * (n + 1)
    for i in ia:
        x = ac[i]
        for j in ib:
            if i + j > n:
                break
            out[i + j] = out[i + j] + x * bc[j]
    return TruncatedSeries(out, n)


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Solve ``c * b = a``; ``b(0)`` must be a nonzero rational constant."""
    b0 = b.coeffs[0]
    if b0.is_zero() or not b0.is_constant():
        raise SeriesError(
            f"constant term {b0} of the divisor is not a unit in Q[λ]"
        )
    inv = 1 / b0.constant_term()
    n = min(a.order, b.order)
    out: list[PolyLambda] = []
    for k in range(n + 1):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            if not b.coeffs[j].is_zero():
                acc = acc - b.coeffs[j] * out[k - j]
        out.append(acc * inv)
    return TruncatedSeries(out, n)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))`` by Horner's rule; ``inner`` needs zero constant term."""
    if not inner.coeffs[0].is_zero():
        raise SeriesError("inner series of a composition must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    result = TruncatedSeries([outer.coeffs[n]], n)
    for i in range(n - 1, -1, -1):
        result = series_mul(result, inner)
        result = TruncatedSeries(
            (result.coeffs[0] + outer.coeffs[i],) + result.coeffs[1:], n
        )
    return result


def series_reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Lagrange inversion.

    ``[t^n] g = (1/n) [u^(n-1)] (u/f(u))^n``.
    """
    if not f.coeffs[0].is_zero():
        raise SeriesError("reversion needs f(0) = 0")
    N = f.order
    if N == 0:
        return TruncatedSeries([], 0)
    f1 = f.coeffs[1]
    if f1.is_zero() or not f1.is_constant():
        raise SeriesError("reversion needs a nonzero rational linear coefficient")
    # u/f(u) = 1 / (f(u)/u), known to order N-1
    h = series_div(one(N - 1), TruncatedSeries(f.coeffs[1:], N - 1))
    out = [ZERO]
    power = one(N - 1)
    for n in range(1, N + 1):
        power = series_mul(power, h)
        out.append(power.coeffs[n - 1] / n)
    return TruncatedSeries(out, N)


# -- generating functions ---------------------------------------------------


@lru_cache(maxsize=None)
def gf_deg_exp(x: Scalar, order: int) -> TruncatedSeries:
    """Degenerate exponential ``e_λ^x(t)``: coefficients ``(x)_{k,λ}/k!``."""
    return TruncatedSeries.from_function(
        lambda k: deg_falling(x, k) / math.factorial(k), order
    )


@lru_cache(maxsize=None)
def gf_deg_log(order: int) -> TruncatedSeries:
    """Degenerate logarithm ``log_λ(1+t)``: coefficients ``binom(λ-1, n-1)/n``."""
    return TruncatedSeries.from_function(
        lambda n: binom_poly(LAMBDA - 1, n - 1) / n if n else ZERO, order
    )


def gf_deg_log_by_reversion(order: int) -> TruncatedSeries:
    """``log_λ(1+t)`` built as the compositional inverse of ``e_λ(t) - 1``."""
    return series_reversion(gf_deg_exp(1, order) - 1)


@lru_cache(maxsize=None)
def gf_polylog(m: int, order: int) -> TruncatedSeries:
    """Degenerate polylogarithm ``Li_{m,λ}(t)`` for any integer ``m``."""
    return TruncatedSeries.from_function(
        lambda n: (
            binom_poly(LAMBDA - 1, n - 1) * ((-1) ** (n - 1) * Fraction(n) ** -m)
            if n
            else ZERO
        ),
        order,
    )


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"order parameter m must be a positive integer, got {m!r}")


@lru_cache(maxsize=None)
def gf_H(order: int) -> TruncatedSeries:
    """``1/(1-t) * log_{-λ}(1 + t/(1-t))``; coefficients are ``H_{n,λ}``."""
    inner = series_compose(gf_deg_log(order).neg_lambda(), t_over_1_minus_t(order))
    return geometric(order) * inner


@lru_cache(maxsize=None)
def gf_H_order(m: int, order: int) -> TruncatedSeries:
    """``Li_{m,λ}(t)/(1-t)``; coefficients are ``H^{(m)}_{n,λ}``."""
    _check_m(m)
    return geometric(order) * gf_polylog(m, order)


@lru_cache(maxsize=None)
def gf_K(m: int, order: int) -> TruncatedSeries:
    """``-1/(1-t) * Li_{m,-λ}(-t/(1-t))``; coefficients are ``K^{(m)}_{n,λ}``."""
    _check_m(m)
    inner = -t_over_1_minus_t(order)
    composed = series_compose(gf_polylog(m, order).neg_lambda(), inner)
    return -(geometric(order) * composed)


@lru_cache(maxsize=None)
def gf_stirling_unsigned(k: int, order: int) -> TruncatedSeries:
    """EGF ``(-log_λ(1-t))^k / k!`` of the unsigned degenerate Stirling numbers."""
    if k < 0:
        raise ValueError("k must be non-negative")
    minus_log = -series_compose(gf_deg_log(order), -t_series(order))
    return (minus_log ** k) / math.factorial(k)


@lru_cache(maxsize=None)
def gf_lah(k: int, order: int) -> TruncatedSeries:
    """EGF ``(t/(1-t))^k / k!`` of the unsigned Lah numbers."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return (t_over_1_minus_t(order) ** k) / math.factorial(k)


@lru_cache(maxsize=None)
def gf_deg_derangement(order: int) -> TruncatedSeries:
    """EGF ``e_λ^{-1}(t)/(1-t)`` of the degenerate derangement numbers."""
    return geometric(order) * gf_deg_exp(-1, order)


def classical_log_gf(order: int) -> TruncatedSeries:
    """``log(1/(1-t)) = sum t^n/n`` with rational coefficients."""
    return TruncatedSeries.from_function(
        lambda n: Fraction(1, n) if n else 0, order
    )


def classical_exp_gf(x: Scalar, order: int) -> TruncatedSeries:
    """``e^{xt}`` with rational coefficients."""
    x = Fraction(x)
    return TruncatedSeries.from_function(
        lambda n: x**n / math.factorial(n), order
    )

