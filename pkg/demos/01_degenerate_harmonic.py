"""
Degenerate harmonic numbers
===========================

Every value below is an exact polynomial in lambda with rational
coefficients.  Setting lambda = 0 recovers the classical numbers.
"""

from fractions import Fraction

from degharm import H_def, H_order, K_nested, K_single_sum, harmonic
from degharm.sequences import H_binom, H_derangement, H_stirling

# the first few H_n(lambda)
for n in range(1, 6):
    print(n, H_def(n))

# lambda -> 0 gives back 1 + 1/2 + ... + 1/n
print([H_def(n)(0) for n in range(1, 8)])
print([harmonic(n) for n in range(1, 8)])

# evaluation at any rational point is exact
print(H_def(6)(Fraction(1, 3)))

# higher order versions, m = 2
print([str(H_order(n, 2)) for n in range(1, 4)])

# several closed forms agree term for term
n = 9
print(H_def(n) == H_binom(n) == H_stirling(n, "as_derived") == H_derangement(n))

# the form with the 1/k! weight taken literally does not
print(H_stirling(2, "as_printed"), "vs", H_def(2))

# hyperharmonic-type K: nested chain sum, computed two ways
print(K_nested(5, 3) == K_nested(5, 3, method="enumerate") == K_single_sum(5, 3))
print(K_nested(4, 2))
