"""
Exact arithmetic in GF(q^n) and GF(q)(x)
========================================

"""

from kemperman import make_ambient, subfield

# GF(16) is built from the smallest irreducible quartic over GF(2)
L = make_ambient("gf:2:4")
t = L.gen
print(L.descriptor, "modulus coefficients (constant first):", L.modulus)
print("t^4 =", (t ** 4).pretty())
print("1/t =", t.inverse().pretty())

# the subfield GF(4) is the fixed space of x -> x^4
H = subfield(L, 2)
print("GF(4) inside GF(16):", H)

# rational functions stay reduced with a monic denominator
R = make_ambient("ratfun:3")
x = R.gen
f = (x * x - 1) / (2 * x + 2)
print("(x^2-1)/(2x+2) =", f.pretty())
print("times its inverse:", (f * f.inverse()).pretty())
