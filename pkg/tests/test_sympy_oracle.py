"""Cross-check closed forms against sympy expansions of the literal sums."""

from fractions import Fraction as F

import pytest

sp = pytest.importorskip("sympy")

from degharm.exact import PolyLambda
from degharm.sequences import H_def, H_order, K_nested, deg_derangement, deg_stirling1

lam = sp.Symbol("lam")


def to_poly(expr) -> PolyLambda:
    p = sp.Poly(sp.expand(expr), lam)
    coeffs = p.all_coeffs()[::-1] if not p.is_zero else []
    return PolyLambda(F(int(sp.numer(c)), int(sp.denom(c))) for c in coeffs)


def from_poly(p: PolyLambda):
    return sum((sp.Rational(c.numerator, c.denominator) * lam**i for i, c in enumerate(p.coeffs)), sp.Integer(0))


def gbinom(top, k):
    return sp.expand(sp.ff(top, k) / sp.factorial(k))


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12])
def test_H_def(n):
    expr = sum(gbinom(lam - 1, k - 1) * (-1) ** (k - 1) / sp.Integer(k) for k in range(1, n + 1))
    assert H_def(n) == to_poly(expr)


@pytest.mark.parametrize("n, m", [(3, 2), (6, 3), (9, 4)])
def test_H_order(n, m):
    expr = sum(gbinom(lam - 1, k - 1) * (-1) ** (k - 1) / sp.Integer(k) ** m for k in range(1, n + 1))
    assert H_order(n, m) == to_poly(expr)


@pytest.mark.parametrize("n, m", [(2, 2), (4, 3), (6, 2)])
def test_K_via_series(n, m):
    t = sp.Symbol("t")
    x = -t / (1 - t)
    li = sum((-1) ** (j - 1) / sp.Integer(j) ** m * gbinom(-lam - 1, j - 1) * x**j for j in range(1, n + 1))
    gf = sp.series(-li / (1 - t), t, 0, n + 1).removeO()
    assert K_nested(n, m) == to_poly(sp.expand(gf).coeff(t, n))


@pytest.mark.parametrize("n", [0, 1, 2, 5, 8])
def test_deg_derangement(n):
    t = sp.Symbol("t")
    # e_λ^{-1}(t) = (1 + λ t)^(-1/λ); expand at a numeric λ to avoid branch issues
    for val in (sp.Rational(1, 2), sp.Integer(3)):
        gf = sp.series((1 + val * t) ** (-1 / val) / (1 - t), t, 0, n + 1).removeO()
        assert deg_derangement(n)(F(val.p, val.q)) == F(sp.factorial(n) * sp.expand(gf).coeff(t, n))


@pytest.mark.parametrize("n", [3, 5, 6])
def test_deg_stirling_basis_change(n):
    x = sp.Symbol("x")
    lhs = sp.expand(sp.ff(x, n))
    rhs = sum(from_poly(deg_stirling1(n, k)) * sp.prod([x - i * lam for i in range(k)]) for k in range(n + 1))
    assert sp.expand(lhs - rhs) == 0
