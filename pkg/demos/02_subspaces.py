"""
Subspaces, their lattice and product spans
==========================================

"""

from kemperman import make_ambient, product_span, scale, span
from kemperman.campaign import all_subspaces, gaussian_binomial
from kemperman.subspace import enumerate_nonzero

L = make_ambient("gf:2:4")
t, one = L.gen, L.one

A = span([one, t])
B = span([t, t * t])
print("A =", A, " B =", B)
print("A + B =", A + B)
print("A & B =", A & B)
print("tA =", scale(t, A))
print("<AA> =", product_span(A, A))

# subspaces are canonical, so different generators give equal values
print("span{1, t} == span{1+t, t}:", A == span([one + t, t]))
print("elements of A:", [v.pretty() for v in enumerate_nonzero(A)])

# exhaustive enumeration agrees with the Gaussian binomials
counts = [len(all_subspaces(L, k)) for k in range(5)]
print("subspaces by dimension:", counts, [gaussian_binomial(4, k, 2) for k in range(5)])

# in GF(2)(x) a subspace keeps a common denominator and numerator rows
R = make_ambient("ratfun:2")
x = R.gen
V = span([x.inverse(), R.one])
print(V, "stored as", V.describe())
