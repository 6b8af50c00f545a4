"""
Truncated power series over Q[lambda]
=====================================
"""

from degharm.series import (
    gf_deg_exp,
    gf_deg_log,
    gf_deg_log_by_reversion,
    gf_H,
    gf_K,
    gf_polylog,
    one,
    series_compose,
    t_series,
)
from degharm.sequences import H_def, K_nested

N = 12

# degenerate exponential and its compositional inverse
e = gf_deg_exp(1, N)
log = gf_deg_log(N)
print([str(c) for c in log.coeffs[:4]])

# round trips come back to 1 + t and t exactly
print(series_compose(e, log) == one(N) + t_series(N))
print(series_compose(log, e - 1) == t_series(N))

# Lagrange inversion rebuilds the same logarithm from the exponential
print(gf_deg_log_by_reversion(N) == log)

# coefficients of the generating function are the harmonic numbers
g = gf_H(N)
print(all(g[n] == H_def(n) for n in range(N + 1)))

# same for K with m = 3
k3 = gf_K(3, N)
print(all(k3[n] == K_nested(n, 3) for n in range(1, N + 1)))

# degenerate polylogarithm, and its classical limit at lambda = 0
print([str(x) for x in gf_polylog(2, 5).at(0)])
