"""Closed forms for the degenerate harmonic family and related numbers.

Every degenerate quantity is returned as a :class:`PolyLambda`.  ``H_def`` is
the reference value; the other ``H_*`` and ``K_*`` functions are alternative
expressions that the verifier compares against it and against the generating
functions in :mod:`degharm.series`.

Indices outside a sequence's natural range give zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence, TypeVar

from .exact import (
    LAMBDA,
    ONE,
    ZERO,
    PolyLambda,
    binom_poly,
    deg_falling,
    falling_poly,
    rising_poly,
)

V = TypeVar("V", Fraction, PolyLambda)

H_VARIANTS = ("as_printed", "as_derived")


# -- classical numbers ------------------------------------------------------


def harmonic(n: int) -> Fraction:
    """``1 + 1/2 + ... + 1/n``; zero for ``n <= 0``."""
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def harmonic_order(n: int, alpha: int) -> Fraction:
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    return sum((Fraction(1, k**alpha) for k in range(1, n + 1)), Fraction(0))


def lah(n: int, k: int) -> int:
    """Unsigned Lah number ``binom(n-1, k-1) n!/k!``."""
    if n == 0 and k == 0:
        return 1
    if k < 1 or n < k:
        return 0
    return math.comb(n - 1, k - 1) * math.factorial(n) // math.factorial(k)


def derangement(n: int) -> int:
    if n < 0:
        return 0
    total = sum(Fraction((-1) ** k, math.factorial(k)) for k in range(n + 1))
    return int(total * math.factorial(n))


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Classical unsigned Stirling numbers of the first kind."""
    if n < 0 or k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    return stirling1_unsigned(n - 1, k - 1) + (n - 1) * stirling1_unsigned(n - 1, k)


# -- degenerate numbers -----------------------------------------------------


@lru_cache(maxsize=None)
def deg_derangement(n: int) -> PolyLambda:
    """``n! * sum_{k<=n} (-1)_{k,λ}/k!``."""
    if n < 0:
        return ZERO
    total = ZERO
    for k in range(n + 1):
        total = total + deg_falling(-1, k) / math.factorial(k)
    return total * math.factorial(n)


@lru_cache(maxsize=None)
def deg_stirling1(n: int, k: int) -> PolyLambda:
    """Signed degenerate Stirling number of the first kind ``S_{1,λ}(n, k)``.

    Expanding ``(x)_n = (x)_{n-1} (x - n + 1)`` and using
    ``x (x)_{k,λ} = (x)_{k+1,λ} + kλ (x)_{k,λ}`` gives
    ``S(n, k) = S(n-1, k-1) + (kλ - (n-1)) S(n-1, k)``.
    """
    if n < 0 or k < 0 or k > n:
        return ZERO
    if n == 0:
        return ONE
    return deg_stirling1(n - 1, k - 1) + (LAMBDA * k - (n - 1)) * deg_stirling1(n - 1, k)


def deg_stirling1_unsigned(n: int, k: int) -> PolyLambda:
    s = deg_stirling1(n, k)
    return -s if (n - k) % 2 else s


@lru_cache(maxsize=None)
def _alt_coeff(k: int) -> PolyLambda:
    # (-1)^(k-1) binom(λ-1, k-1)
    b = binom_poly(LAMBDA - 1, k - 1)
    return b if k % 2 else -b


@lru_cache(maxsize=None)
def _rising_coeff(k: int) -> PolyLambda:
    # binom(λ+k-1, k-1)
    return binom_poly(LAMBDA + (k - 1), k - 1)


@lru_cache(maxsize=None)
def H_def(n: int) -> PolyLambda:
    """Degenerate harmonic number ``sum_k binom(λ-1,k-1) (-1)^(k-1)/k``."""
    total = ZERO
    for k in range(1, n + 1):
        total = total + _alt_coeff(k) / k
    return total


def H_binom(n: int) -> PolyLambda:
    """``sum_k binom(n,k) (-1)^(k-1)/k * binom(λ+k-1, k-1)``."""
    total = ZERO
    for k in range(1, n + 1):
        total = total + _rising_coeff(k) * Fraction((-1) ** (k - 1) * math.comb(n, k), k)
    return total


@lru_cache(maxsize=None)
def H_order(n: int, m: int) -> PolyLambda:
    """Degenerate harmonic number of order ``m``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    total = ZERO
    for k in range(1, n + 1):
        total = total + _alt_coeff(k) / k**m
    return total


def K_binom(n: int, m: int) -> PolyLambda:
    """``sum_j 1/j sum_k binom(j,k) (-1)^(k-1)/k^(m-1) binom(λ+k-1,k-1)``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    total = ZERO
    for j in range(1, n + 1):
        inner = ZERO
        for k in range(1, j + 1):
            w = Fraction((-1) ** (k - 1) * math.comb(j, k), k ** (m - 1))
            inner = inner + _rising_coeff(k) * w
        total = total + inner / j
    return total


def K_single_sum(n: int, m: int) -> PolyLambda:
    """``sum_k binom(n,k) (-1)^(k-1)/k^m binom(λ+k-1,k-1)``.

    This is the left-hand side of the weighted-inversion identity for the
    degenerate harmonic numbers; it is also listed as a formula for ``K``.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    total = ZERO
    for k in range(1, n + 1):
        w = Fraction((-1) ** (k - 1) * math.comb(n, k), k**m)
        total = total + _rising_coeff(k) * w
    return total


def K_nested(n: int, m: int, method: str = "dp") -> PolyLambda:
    """Chain sum over ``1 <= k1 <= ... <= km <= n`` of
    ``(-1)^(k1-1) binom(λ-1, k1-1) / (k1 ... km)``.

    ``method`` is ``"dp"`` (repeated prefix sums) or ``"enumerate"``.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if n <= 0:
        return ZERO
    b = [_alt_coeff(k) for k in range(1, n + 1)]
    if method == "dp":
        return chain_sums(b, m)[-1]
    if method == "enumerate":
        return chain_sum_enumerate(b, m, n)
    raise ValueError(f"unknown method {method!r}")


def K_lah(n: int, m: int) -> PolyLambda:
    """``sum_j 1/j! sum_k (-1)^(k-1)/k^m binom(λ+k-1,k-1) k! L(j,k)``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    total = ZERO
    for j in range(1, n + 1):
        inner = ZERO
        for k in range(1, j + 1):
            w = Fraction((-1) ** (k - 1) * math.factorial(k) * lah(j, k), k**m)
            inner = inner + _rising_coeff(k) * w
        total = total + inner / math.factorial(j)
    return total


def H_stirling(n: int, variant: str = "as_derived") -> PolyLambda:
    """Harmonic number through unsigned degenerate Stirling numbers.

    ``as_derived``: ``(1/n!) sum_k k (1)_{k-1,-λ} [n,k]_λ``, the form the
    generating-function argument actually produces.
    ``as_printed``: ``sum_k k (1)_{k,-λ} [n,k]_λ``, kept as a known-bad
    regression witness.
    """
    if variant not in H_VARIANTS:
        raise ValueError(f"variant must be one of {H_VARIANTS}, got {variant!r}")
    total = ZERO
    for k in range(1, n + 1):
        shift = k if variant == "as_printed" else k - 1
        total = total + deg_falling(1, shift).neg_lambda() * deg_stirling1_unsigned(n, k) * k
    if variant == "as_derived":
        total = total / math.factorial(n)
    return total


def H_derangement(n: int) -> PolyLambda:
    """``(1/n!) sum_j binom(n,j) d_{n-j,λ} sum_k k! binom(j,k) ΔH_k (1)_{j-k,λ}``."""
    total = ZERO
    for j in range(1, n + 1):
        inner = ZERO
        for k in range(1, j + 1):
            step = H_def(k) - H_def(k - 1)
            inner = inner + step * deg_falling(1, j - k) * (math.factorial(k) * math.comb(j, k))
        total = total + deg_derangement(n - j) * inner * math.comb(n, j)
    return total / math.factorial(n)


def corollary22_sides(n: int) -> tuple[PolyLambda, PolyLambda]:
    """Both sides of the falling/rising factorial difference identity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = (falling_poly(LAMBDA - 1, n - 1) - rising_poly(LAMBDA + 1, n - 1)) * Fraction(
        (-1) ** (n - 1), math.factorial(n)
    )
    rhs = ZERO
    for k in range(1, n):
        w = Fraction((-1) ** (k - 1) * math.comb(n - 1, k - 1), k)
        rhs = rhs + _rising_coeff(k) * w
    return lhs, rhs


def thm26_sides(n: int, m: int) -> tuple[PolyLambda, PolyLambda]:
    """Weighted binomial sum vs. chain sum for the degenerate harmonic weights."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return K_single_sum(n, m), K_nested(n, m)


# -- transforms and chain sums ---------------------------------------------


def binomial_inversion(seq: Sequence[V]) -> list[V]:
    """``b_n = sum_{k<=n} binom(n,k) (-1)^(k-1) a_k``; ``seq[0]`` is ``a_1``.

    The transform is an involution.
    """
    out = []
    for n in range(1, len(seq) + 1):
        total = 0
        for k in range(1, n + 1):
            c = math.comb(n, k)
            total = total + (seq[k - 1] * c if k % 2 else -(seq[k - 1] * c))
        out.append(total)
    return out


def chain_sums(b: Sequence[V], m: int) -> list[V]:
    """``sum_{1<=k1<=...<=km<=n} b_{k1}/(k1...km)`` for every ``n``.

    ``b[0]`` is ``b_1``.  Runs in ``O(n m)``: each level divides by the index
    and takes prefix sums.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    level = list(b)
    for _ in range(m):
        acc = 0
        prefix = []
        for k, v in enumerate(level, start=1):
            acc = acc + v / k
            prefix.append(acc)
        level = prefix
    return level


def chain_sum_enumerate(b: Sequence[V], m: int, n: int) -> V:
    """Literal enumeration of all weakly increasing chains; the slow oracle."""
    total = 0
    for chain in combinations_with_replacement(range(1, n + 1), m):
        total = total + b[chain[0] - 1] / math.prod(chain)
    return total


def weighted_inversion(a: Sequence[V], m: int) -> list[V]:
    """``sum_k binom(n,k) (-1)^(k-1) a_k / k^m`` for every ``n``."""
    return binomial_inversion([x / k**m for k, x in enumerate(a, start=1)])


def iterated_weighted_transform(a: Sequence[V], m: int) -> tuple[list[V], list[V]]:
    """Both sides of the iterated weighted-inversion identity.

    Returns ``(direct, chain)``: the weighted inversion of ``a`` and the
    ``m``-fold chain sum of ``b = binomial_inversion(a)``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return weighted_inversion(a, m), chain_sums(binomial_inversion(a), m)


# -- tables -----------------------------------------------------------------

SEQUENCE_IDS = (
    "H",
    "H_order",
    "K",
    "stirling1_unsigned",
    "stirling1_signed",
    "lah",
    "derangement",
    "deg_derangement",
    "harmonic",
    "harmonic_order",
)
NEEDS_M = frozenset({"H_order", "K", "harmonic_order"})
TRIANGLES = frozenset({"stirling1_unsigned", "stirling1_signed", "lah"})


@dataclass(frozen=True)
class SequenceTable:
    """Values of one sequence keyed by index tuple ``(n,)`` or ``(n, k)``."""

    id: str
    rows: dict[tuple[int, ...], PolyLambda] = field(default_factory=dict)
    m: int | None = None

    def evaluate(self, lam: Fraction) -> SequenceTable:
        return SequenceTable(
            self.id, {i: PolyLambda.constant(v(lam)) for i, v in self.rows.items()}, self.m
        )


def sequence_value(seq: str, n: int, m: int | None = None, k: int | None = None) -> PolyLambda:
    if seq == "H":
        return H_def(n)
    if seq == "H_order":
        return H_order(n, m)
    if seq == "K":
        return K_nested(n, m)
    if seq == "stirling1_unsigned":
        return deg_stirling1_unsigned(n, k)
    if seq == "stirling1_signed":
        return deg_stirling1(n, k)
    if seq == "lah":
        return PolyLambda.constant(lah(n, k))
    if seq == "derangement":
        return PolyLambda.constant(derangement(n))
    if seq == "deg_derangement":
        return deg_derangement(n)
    if seq == "harmonic":
        return PolyLambda.constant(harmonic(n))
    if seq == "harmonic_order":
        return PolyLambda.constant(harmonic_order(n, m))
    raise ValueError(f"unknown sequence id {seq!r}")


def build_table(seq: str, n: int, m: int | None = None, k: int | None = None) -> SequenceTable:
    """Rows ``0..n`` (``1..n`` for ``K``); triangles give every ``(n, k)``
    unless ``k`` is fixed."""
    if seq not in SEQUENCE_IDS:
        raise ValueError(f"unknown sequence id {seq!r}")
    if seq in NEEDS_M and (m is None or m < 1):
        raise ValueError(f"sequence {seq!r} needs a positive m")
    start = 1 if seq == "K" else 0
    rows: dict[tuple[int, ...], PolyLambda] = {}
    for i in range(start, n + 1):
        if seq in TRIANGLES:
            ks = [k] if k is not None else range(i + 1)
            for j in ks:
                rows[(i, j)] = sequence_value(seq, i, k=j)
        else:
            rows[(i,)] = sequence_value(seq, i, m=m)
    return SequenceTable(seq, rows, m if seq in NEEDS_M else None)
